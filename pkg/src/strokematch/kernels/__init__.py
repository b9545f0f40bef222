"""Numeric kernels with selectable backend.

The default is the numba-jitted backend when numba imports cleanly, else the
pure NumPy reference. Set STROKEMATCH_BACKEND=python to force the fallback or
STROKEMATCH_BACKEND=numba to fail hard when the JIT is unavailable.
"""

from __future__ import annotations

import os

from . import _python

EP = _python.EP
INIT = _python.INIT
WW = _python.WW
DD = _python.DD

_ENV_VAR = "STROKEMATCH_BACKEND"


def get_backend(name: str):
    """Return a kernel module by name ('python' or 'numba')."""
    if name == "python":
        return _python
    if name == "numba":
        from . import _numba

        return _numba
    raise ValueError(f"unknown kernel backend {name!r}")


def _select():
    requested = os.environ.get(_ENV_VAR, "auto").lower()
    if requested not in ("auto", "python", "numba"):
        raise ValueError(
            f"{_ENV_VAR} must be one of auto/python/numba, got {requested!r}"
        )
    if requested == "python":
        return _python, "python"
    try:
        return get_backend("numba"), "numba"
    except ImportError:
        if requested == "numba":
            raise
        return _python, "python"


_impl, BACKEND = _select()

stroke_distance = _impl.stroke_distance
distance_matrix = _impl.distance_matrix
greedy_from_costs = _impl.greedy_from_costs
improve_from_costs = _impl.improve_from_costs
map_cost = _impl.map_cost
complete_from_points = _impl.complete_from_points
grouped_weight = _impl.grouped_weight
link_score = _impl.link_score
link_scores_batch = _impl.link_scores_batch
interpolate_polyline = _impl.interpolate_polyline
extract_features = _impl.extract_features
line_density_projections = _impl.line_density_projections
