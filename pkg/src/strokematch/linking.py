"""Stroke map construction between two characters.

A stroke map is an int64 array with one slot per stroke of the larger
character; each entry holds a stroke index of the smaller character or -1.
Linking runs in three stages: greedy initialization, a fixed number of
improvement sweeps, and (when stroke counts differ) gap completion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations
from typing import Callable, Iterator

import numpy as np

from . import kernels
from .model import Character, Stroke, concat_strokes

DistanceFn = Callable[[Stroke, Stroke], float]

MAX_ORACLE_STROKES = 9


@dataclass(frozen=True)
class LinkConfig:
    """Improvement sweep counts for the two classification stages."""

    coarse_passes: int = 3
    fine_passes: int = 3

    def __post_init__(self) -> None:
        if self.coarse_passes < 1 or self.fine_passes < 1:
            raise ValueError("sweep counts must be >= 1")


def pairwise_costs(big: Character, small: Character, d: DistanceFn) -> np.ndarray:
    """Cost matrix, one row per big stroke, one column per small stroke.

    Each pair is evaluated exactly once; the improvement sweeps re-read
    entries many times.
    """
    costs = np.empty((big.stroke_count, small.stroke_count), dtype=np.float64)
    for j, sb in enumerate(big.strokes):
        for i, ss in enumerate(small.strokes):
            costs[j, i] = d(sb, ss)
    return costs


def greedy_init(big: Character, small: Character, d: DistanceFn) -> np.ndarray:
    """Each big stroke, in drawing order, claims the nearest still-free small
    stroke; ties go to the smallest small index."""
    if big.stroke_count < small.stroke_count:
        raise ValueError("first character must have at least as many strokes")
    return kernels.greedy_from_costs(pairwise_costs(big, small, d))


def greedy_init_from_costs(costs: np.ndarray) -> np.ndarray:
    return kernels.greedy_from_costs(np.asarray(costs, dtype=np.float64))


def iterative_improve(
    big: Character, small: Character, d: DistanceFn, assignment: np.ndarray, passes: int
) -> np.ndarray:
    """Run `passes` full repair sweeps over the map; the assigned cost never
    increases."""
    costs = pairwise_costs(big, small, d)
    return kernels.improve_from_costs(costs, np.asarray(assignment, dtype=np.int64), passes)


def improve_from_costs(costs: np.ndarray, assignment: np.ndarray, passes: int) -> np.ndarray:
    return kernels.improve_from_costs(
        np.asarray(costs, dtype=np.float64), np.asarray(assignment, dtype=np.int64), passes
    )


def improvement_steps(
    costs: np.ndarray, assignment: np.ndarray
) -> Iterator[tuple[int, np.ndarray]]:
    """One sweep at slot granularity: yields (slot, map snapshot) after each
    slot is processed. Composing all slots equals improve_from_costs with a
    single pass; parity with the kernels is covered by tests."""
    costs = np.asarray(costs, dtype=np.float64)
    work = np.asarray(assignment, dtype=np.int64).copy()
    n = len(work)
    for i in range(n):
        vi = work[i]
        if vi != -1:
            dii = costs[i, vi]
            for j in range(n):
                if j == i:
                    continue
                vj = work[j]
                if vj != -1:
                    if costs[i, vj] + costs[j, vi] < dii + costs[j, vj]:
                        work[i] = vj
                        work[j] = vi
                        vi = vj
                        dii = costs[i, vi]
                else:
                    if costs[j, vi] < dii:
                        work[j] = vi
                        work[i] = -1
                        vi = -1
                        break
        yield i, work.copy()


def map_cost(costs: np.ndarray, assignment: np.ndarray) -> float:
    return kernels.map_cost(
        np.asarray(costs, dtype=np.float64), np.asarray(assignment, dtype=np.int64)
    )


_PLACEMENTS: dict[tuple[int, int], np.ndarray] = {}


def _placements(n: int, m: int) -> np.ndarray:
    key = (n, m)
    if key not in _PLACEMENTS:
        _PLACEMENTS[key] = np.asarray(list(permutations(range(n), m)), dtype=np.int64)
    return _PLACEMENTS[key]


def brute_force_from_costs(costs: np.ndarray) -> np.ndarray:
    """Exhaustive minimum-cost injective placement; ties resolved by the
    lexicographically smallest map array. Test oracle, factorial time."""
    costs = np.asarray(costs, dtype=np.float64)
    n, m = costs.shape
    if n > MAX_ORACLE_STROKES:
        raise ValueError("instance too large for oracle")
    placements = _placements(n, m)
    totals = costs[placements, np.arange(m)].sum(axis=1)
    best = np.flatnonzero(totals == totals.min())
    maps = np.full((len(best), n), -1, dtype=np.int64)
    rows = np.arange(len(best))[:, None]
    maps[rows, placements[best]] = np.arange(m)
    order = np.lexsort(maps[:, ::-1].T)
    return maps[order[0]]


def brute_force_link(big: Character, small: Character, d: DistanceFn) -> np.ndarray:
    if big.stroke_count > MAX_ORACLE_STROKES:
        raise ValueError("instance too large for oracle")
    return brute_force_from_costs(pairwise_costs(big, small, d))


def complete_map(
    assignment: np.ndarray, big: Character, small: Character, d: DistanceFn
) -> np.ndarray:
    """Make a partial map total: leading and trailing unassigned slots copy
    the nearest assigned value; each interior gap is split at the point that
    minimizes the cost of the two adjoining concatenated groups.

    Gaps are resolved left to right, so a group's left extension is already
    fixed when its right boundary is chosen.
    """
    out = np.asarray(assignment, dtype=np.int64).copy()
    n = len(out)
    assigned = np.flatnonzero(out >= 0)
    if len(assigned) == 0:
        raise ValueError("cannot complete a map with no assignments")

    def group_dist(lo: int, hi: int, value: int) -> float:
        merged = concat_strokes(big.strokes[lo:hi + 1])
        return d(merged, small.strokes[value])

    first, last = int(assigned[0]), int(assigned[-1])
    out[:first] = out[first]
    out[last + 1:] = out[last]
    prev = first
    for nxt in assigned[1:]:
        nxt = int(nxt)
        if nxt > prev + 1:
            va = int(out[prev])
            vb = int(out[nxt])
            lo = prev
            while lo > 0 and out[lo - 1] == va:
                lo -= 1
            best_l = prev
            best_cost = math.inf
            for cut in range(prev, nxt):
                cost = group_dist(lo, cut, va) + group_dist(cut + 1, nxt, vb)
                if cost < best_cost:
                    best_cost = cost
                    best_l = cut
            for j in range(prev + 1, nxt):
                out[j] = va if j <= best_l else vb
        prev = nxt
    return out
