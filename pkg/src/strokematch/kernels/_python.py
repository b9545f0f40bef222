"""Reference kernels in plain NumPy/Python.

The jitted backend in `_numba` must produce identical results; parity is
enforced by tests. Characters arrive packed: `pts` is a (total, 2) int64
array and `offs` a (stroke_count + 1,) int64 array, stroke j being
pts[offs[j]:offs[j+1]]. Stroke maps are int64 arrays indexed by the strokes
of the larger character, with -1 marking unassigned slots.
"""

from __future__ import annotations

import math

import numpy as np

# Stroke distance kinds.
EP = 0    # endpoints only
INIT = 1  # aligned prefix
WW = 2    # resampled whole shape
DD = 3    # resampled point-to-point direction


def _sdist(pts1, s1, e1, pts2, s2, e2, kind):
    # Orient so the first slice is the longer one; this makes every kind
    # symmetric in its arguments.
    n = e1 - s1
    m = e2 - s2
    if n < m:
        pts1, pts2 = pts2, pts1
        s1, e1, s2, e2 = s2, e2, s1, e1
        n, m = m, n
    a = pts1[s1:e1]
    b = pts2[s2:e2]
    if kind == EP:
        return float(
            abs(a[0, 0] - b[0, 0]) + abs(a[0, 1] - b[0, 1])
            + abs(a[n - 1, 0] - b[m - 1, 0]) + abs(a[n - 1, 1] - b[m - 1, 1])
        )
    if kind == INIT:
        total = int(np.abs(a[:m] - b).sum())
        return n / m * total
    if m < 2:
        # Resampling needs two anchors; callers guarantee >= 2 points after
        # preprocessing, so this is a defensive degenerate path only.
        return float(
            abs(a[0, 0] - b[0, 0]) + abs(a[0, 1] - b[0, 1])
            + abs(a[n - 1, 0] - b[0, 0]) + abs(a[n - 1, 1] - b[0, 1])
        )
    idx = (n - 1) * np.arange(m, dtype=np.int64) // (m - 1)
    sampled = a[idx]
    if kind == WW:
        return float(np.abs(sampled - b).sum()) / m
    # DD: compare consecutive differences at the resampled positions.
    da = np.diff(sampled, axis=0)
    db = np.diff(b, axis=0)
    return float(np.abs(da - db).sum()) / m


def stroke_distance(a, b, kind):
    """Distance between two strokes given as (k, 2) int64 arrays."""
    return _sdist(a, 0, len(a), b, 0, len(b), kind)


def distance_matrix(pts_a, offs_a, pts_b, offs_b, kind):
    """Pairwise stroke distances, rows indexing the first character."""
    n = len(offs_a) - 1
    m = len(offs_b) - 1
    out = np.empty((n, m), dtype=np.float64)
    for j in range(n):
        for i in range(m):
            out[j, i] = _sdist(
                pts_a, offs_a[j], offs_a[j + 1], pts_b, offs_b[i], offs_b[i + 1], kind
            )
    return out


def greedy_from_costs(costs):
    """Each slot, in index order, claims its nearest still-free column."""
    n, m = costs.shape
    assignment = np.full(n, -1, dtype=np.int64)
    used = np.zeros(m, dtype=np.bool_)
    for j in range(n):
        best = -1
        best_cost = math.inf
        for i in range(m):
            if not used[i] and costs[j, i] < best_cost:
                best_cost = costs[j, i]
                best = i
        if best >= 0:
            used[best] = True
            assignment[j] = best
    return assignment


def improve_from_costs(costs, assignment, passes):
    """Fixed number of repair sweeps: pairwise swaps and moves to free slots.

    Only strictly improving changes are taken, so the assigned cost never
    increases and the result is deterministic.
    """
    work = assignment.copy()
    n = len(work)
    for _ in range(passes):
        for i in range(n):
            vi = work[i]
            if vi == -1:
                continue
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
    return work


def map_cost(costs, assignment):
    """Total cost over assigned slots."""
    total = 0.0
    for j in range(len(assignment)):
        if assignment[j] >= 0:
            total += costs[j, assignment[j]]
    return total


def _group_dist(pts_b, offs_b, lo_slot, hi_slot, pts_s, offs_s, value, kind):
    # Strokes lo_slot..hi_slot concatenated against small stroke `value`;
    # slots are contiguous so the concatenation is one point range.
    return _sdist(
        pts_b,
        offs_b[lo_slot],
        offs_b[hi_slot + 1],
        pts_s,
        offs_s[value],
        offs_s[value + 1],
        kind,
    )


def complete_from_points(pts_b, offs_b, pts_s, offs_s, assignment, kind):
    """Fill unassigned slots: leading/trailing copy their neighbour, interior
    gaps take the cheaper side of the best split point."""
    out = assignment.copy()
    n = len(out)
    first = -1
    last = -1
    for j in range(n):
        if out[j] >= 0:
            if first < 0:
                first = j
            last = j
    if first < 0:
        raise ValueError("cannot complete a map with no assignments")
    for j in range(first):
        out[j] = out[first]
    for j in range(last + 1, n):
        out[j] = out[last]
    prev = first
    for nxt in range(first + 1, last + 1):
        if assignment[nxt] == -1:
            continue
        if nxt > prev + 1:
            va = out[prev]
            vb = out[nxt]
            lo = prev
            while lo > 0 and out[lo - 1] == va:
                lo -= 1
            best_l = prev
            best_cost = math.inf
            for cut in range(prev, nxt):
                cost = _group_dist(pts_b, offs_b, lo, cut, pts_s, offs_s, va, kind)
                cost += _group_dist(pts_b, offs_b, cut + 1, nxt, pts_s, offs_s, vb, kind)
                if cost < best_cost:
                    best_cost = cost
                    best_l = cut
            for j in range(prev + 1, nxt):
                out[j] = va if j <= best_l else vb
        prev = nxt
    return out


def grouped_weight(pts_b, offs_b, pts_s, offs_s, assignment, kind):
    """Mean per-stroke distance with a size-ratio penalty on merged groups.

    Requires a total map whose equal values occupy contiguous slot runs,
    which holds for completed maps and for plain bijections.
    """
    n = len(assignment)
    m = len(offs_s) - 1
    total = 0.0
    j = 0
    while j < n:
        v = assignment[j]
        k = j
        while k + 1 < n and assignment[k + 1] == v:
            k += 1
        dist = _group_dist(pts_b, offs_b, j, k, pts_s, offs_s, v, kind)
        if k > j:
            group_pts = offs_b[k + 1] - offs_b[j]
            small_pts = offs_s[v + 1] - offs_s[v]
            gamma = max(group_pts, small_pts) / min(group_pts, small_pts)
        else:
            gamma = 1.0
        total += gamma * dist
        j = k + 1
    return total / m


def link_score(pts_b, offs_b, pts_s, offs_s, passes, link_kind, score_kind):
    """Greedy + sweeps linking under link_kind, scored under score_kind."""
    n = len(offs_b) - 1
    m = len(offs_s) - 1
    costs = distance_matrix(pts_b, offs_b, pts_s, offs_s, link_kind)
    assignment = greedy_from_costs(costs)
    assignment = improve_from_costs(costs, assignment, passes)
    if n != m:
        assignment = complete_from_points(pts_b, offs_b, pts_s, offs_s, assignment, score_kind)
    return grouped_weight(pts_b, offs_b, pts_s, offs_s, assignment, score_kind)


def link_scores_batch(pts_in, offs_in, all_pts, all_offs, tpl_ptr, passes, link_kind, score_kind, out):
    """link_score of the input against every packed template."""
    n_in = len(offs_in) - 1
    for t in range(len(tpl_ptr) - 1):
        offs_t = all_offs[tpl_ptr[t]:tpl_ptr[t + 1]]
        if n_in >= len(offs_t) - 1:
            out[t] = link_score(pts_in, offs_in, all_pts, offs_t, passes, link_kind, score_kind)
        else:
            out[t] = link_score(all_pts, offs_t, pts_in, offs_in, passes, link_kind, score_kind)
    return out


def interpolate_polyline(pts):
    """Insert the integer grid points of each segment (8-connected chain)."""
    k = len(pts)
    if k == 0:
        return pts.copy()
    result = [(int(pts[0, 0]), int(pts[0, 1]))]
    for seg in range(1, k):
        x0 = int(pts[seg - 1, 0])
        y0 = int(pts[seg - 1, 1])
        x1 = int(pts[seg, 0])
        y1 = int(pts[seg, 1])
        dx = abs(x1 - x0)
        sx = 1 if x0 < x1 else -1
        dy = -abs(y1 - y0)
        sy = 1 if y0 < y1 else -1
        err = dx + dy
        while x0 != x1 or y0 != y1:
            e2 = 2 * err
            if e2 >= dy:
                err += dy
                x0 += sx
            if e2 <= dx:
                err += dx
                y0 += sy
            result.append((x0, y0))
    return np.asarray(result, dtype=np.int64).reshape(-1, 2)


def extract_features(pts, spacing):
    """Resample by accumulated arc length; both endpoints always kept.

    A single-point stroke is duplicated so every output has >= 2 points.
    """
    k = len(pts)
    if k == 1:
        return np.repeat(pts, 2, axis=0)
    out = [(int(pts[0, 0]), int(pts[0, 1]))]
    acc = 0.0
    last_emitted = 0
    for i in range(1, k):
        dx = float(pts[i, 0] - pts[i - 1, 0])
        dy = float(pts[i, 1] - pts[i - 1, 1])
        acc += math.sqrt(dx * dx + dy * dy)
        if acc >= spacing:
            out.append((int(pts[i, 0]), int(pts[i, 1])))
            acc = 0.0
            last_emitted = i
    if last_emitted != k - 1:
        out.append((int(pts[k - 1, 0]), int(pts[k - 1, 1])))
    if len(out) == 1:
        out.append(out[0])
    return np.asarray(out, dtype=np.int64)


def _shift_right(arr, fill):
    out = np.empty_like(arr)
    out[:, 0] = fill
    out[:, 1:] = arr[:, :-1]
    return out


def _edge_bounds(mask, size):
    # Per row of `mask`: last edge strictly left of each column (-1 if none)
    # and first edge at or right of each column (size if none).
    idx = np.arange(size, dtype=np.int64)
    left = np.where(mask, idx, -1)
    left = _shift_right(np.maximum.accumulate(left, axis=1), -1)
    right = np.where(mask, idx, size)
    right = np.minimum.accumulate(right[:, ::-1], axis=1)[:, ::-1]
    return left, right


def _intervals(fall, rise, size):
    e1, e2 = _edge_bounds(fall, size)
    e3, e4 = _edge_bounds(rise, size)
    u1 = e1 < 0
    u2 = e2 >= size
    u3 = e3 < 0
    u4 = e4 >= size
    n_undef = (
        u1.astype(np.int64) + u2.astype(np.int64)
        + u3.astype(np.int64) + u4.astype(np.int64)
    )
    span24 = (e4 - e3).astype(np.float64)
    span21 = (e2 - e1).astype(np.float64)
    interval = np.where(
        n_undef == 4,
        4.0 * size,
        np.where(
            n_undef >= 2,
            2.0 * size,
            np.where(
                n_undef == 1,
                np.where(u1 | u2, span24, span21),
                (span21 + span24) / 2.0,
            ),
        ),
    )
    return np.maximum(interval, 1.0)


def line_density_projections(img):
    """Per-axis projections of local stroke-interval density.

    img is a (h, w) uint8 grid; returns (column_sums, row_sums) of the
    per-pixel density. Both are all-zero exactly when no pixel qualifies.
    """
    f = img.astype(bool)
    h, w = f.shape
    fall_h = f & ~np.pad(f, ((0, 0), (0, 1)))[:, 1:]
    rise_h = f & ~np.pad(f, ((0, 0), (1, 0)))[:, :-1]
    lx = _intervals(fall_h, rise_h, w)
    ft = f.T
    fall_v = ft & ~np.pad(ft, ((0, 0), (0, 1)))[:, 1:]
    rise_v = ft & ~np.pad(ft, ((0, 0), (1, 0)))[:, :-1]
    ly = _intervals(fall_v, rise_v, h).T
    rho = np.where(lx + ly < 6.0 * w, np.maximum(w / lx, h / ly), 0.0)
    return rho.sum(axis=0), rho.sum(axis=1)
