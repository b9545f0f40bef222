"""Stroke distance measures used for linking and scoring.

All four measures are symmetric as implemented: arguments are internally
oriented so the stroke with more points comes first.
"""

from __future__ import annotations

from enum import Enum

from . import kernels
from .model import Stroke


class StrokeDistanceKind(Enum):
    ENDPOINT = kernels.EP
    INITIAL = kernels.INIT
    WHOLE_WHOLE = kernels.WW
    DIRECTIONAL = kernels.DD


def resample_index(i: int, n: int, m: int) -> int:
    """Index (1-based) of the longer stroke's point paired with point i of the
    shorter one when resampling n points down to m.

    Multiplies before dividing so the first and last points always align:
    j(1) = 1 and j(m) = n.
    """
    if m < 2:
        raise ValueError("resampling needs at least 2 target points")
    if n < m:
        raise ValueError("resampling requires n >= m")
    if not 1 <= i <= m:
        raise ValueError(f"index {i} outside 1..{m}")
    return (n - 1) * (i - 1) // (m - 1) + 1


def d_endpoint(s: Stroke, t: Stroke) -> float:
    """Manhattan distance between the two start points plus the two end
    points. A single-point stroke doubles as both of its endpoints."""
    return kernels.stroke_distance(s.array, t.array, kernels.EP)


def d_initial(s: Stroke, t: Stroke) -> float:
    """Prefix comparison: the first m points of the longer stroke against all
    m points of the shorter, scaled by n/m."""
    return kernels.stroke_distance(s.array, t.array, kernels.INIT)


def d_whole_whole(s: Stroke, t: Stroke) -> float:
    """Mean Manhattan distance with the longer stroke resampled onto every
    point of the shorter."""
    _require_two_points(s, t)
    return kernels.stroke_distance(s.array, t.array, kernels.WW)


def d_directional(s: Stroke, t: Stroke) -> float:
    """Mean Manhattan distance between consecutive point differences at the
    resampled positions; invariant under translation of either stroke."""
    _require_two_points(s, t)
    return kernels.stroke_distance(s.array, t.array, kernels.DD)


def _require_two_points(s: Stroke, t: Stroke) -> None:
    if len(s) < 2 or len(t) < 2:
        raise ValueError("resampled distances need strokes with >= 2 points")


def by_kind(kind: StrokeDistanceKind):
    """Stroke-level distance callable for a kind."""
    return {
        StrokeDistanceKind.ENDPOINT: d_endpoint,
        StrokeDistanceKind.INITIAL: d_initial,
        StrokeDistanceKind.WHOLE_WHOLE: d_whole_whole,
        StrokeDistanceKind.DIRECTIONAL: d_directional,
    }[kind]
