"""Jitted kernels. Must match `_python` result-for-result (no fastmath)."""

from __future__ import annotations

import math

import numpy as np
from numba import njit

EP = 0
INIT = 1
WW = 2
DD = 3


@njit(cache=True)
def _sdist(pts1, s1, e1, pts2, s2, e2, kind):
    n = e1 - s1
    m = e2 - s2
    if n < m:
        tmp = pts1
        pts1 = pts2
        pts2 = tmp
        ts, te = s1, e1
        s1, e1 = s2, e2
        s2, e2 = ts, te
        n, m = m, n
    if kind == EP:
        return float(
            abs(pts1[s1, 0] - pts2[s2, 0]) + abs(pts1[s1, 1] - pts2[s2, 1])
            + abs(pts1[e1 - 1, 0] - pts2[e2 - 1, 0])
            + abs(pts1[e1 - 1, 1] - pts2[e2 - 1, 1])
        )
    if kind == INIT:
        total = 0
        for i in range(m):
            total += abs(pts1[s1 + i, 0] - pts2[s2 + i, 0])
            total += abs(pts1[s1 + i, 1] - pts2[s2 + i, 1])
        return n / m * total
    if m < 2:
        return float(
            abs(pts1[s1, 0] - pts2[s2, 0]) + abs(pts1[s1, 1] - pts2[s2, 1])
            + abs(pts1[e1 - 1, 0] - pts2[s2, 0]) + abs(pts1[e1 - 1, 1] - pts2[s2, 1])
        )
    if kind == WW:
        total = 0
        for i in range(m):
            j = (n - 1) * i // (m - 1)
            total += abs(pts1[s1 + j, 0] - pts2[s2 + i, 0])
            total += abs(pts1[s1 + j, 1] - pts2[s2 + i, 1])
        return total / m
    total = 0
    for i in range(1, m):
        j = (n - 1) * i // (m - 1)
        jp = (n - 1) * (i - 1) // (m - 1)
        dx1 = pts1[s1 + j, 0] - pts1[s1 + jp, 0]
        dy1 = pts1[s1 + j, 1] - pts1[s1 + jp, 1]
        dx2 = pts2[s2 + i, 0] - pts2[s2 + i - 1, 0]
        dy2 = pts2[s2 + i, 1] - pts2[s2 + i - 1, 1]
        total += abs(dx1 - dx2) + abs(dy1 - dy2)
    return total / m


@njit(cache=True)
def stroke_distance(a, b, kind):
    return _sdist(a, 0, len(a), b, 0, len(b), kind)


@njit(cache=True)
def distance_matrix(pts_a, offs_a, pts_b, offs_b, kind):
    n = len(offs_a) - 1
    m = len(offs_b) - 1
    out = np.empty((n, m), dtype=np.float64)
    for j in range(n):
        for i in range(m):
            out[j, i] = _sdist(
                pts_a, offs_a[j], offs_a[j + 1], pts_b, offs_b[i], offs_b[i + 1], kind
            )
    return out


@njit(cache=True)
def greedy_from_costs(costs):
    n, m = costs.shape
    assignment = np.full(n, -1, dtype=np.int64)
    used = np.zeros(m, dtype=np.bool_)
    for j in range(n):
        best = -1
        best_cost = np.inf
        for i in range(m):
            if not used[i] and costs[j, i] < best_cost:
                best_cost = costs[j, i]
                best = i
        if best >= 0:
            used[best] = True
            assignment[j] = best
    return assignment


@njit(cache=True)
def improve_from_costs(costs, assignment, passes):
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


@njit(cache=True)
def map_cost(costs, assignment):
    total = 0.0
    for j in range(len(assignment)):
        if assignment[j] >= 0:
            total += costs[j, assignment[j]]
    return total


@njit(cache=True)
def _group_dist(pts_b, offs_b, lo_slot, hi_slot, pts_s, offs_s, value, kind):
    return _sdist(
        pts_b,
        offs_b[lo_slot],
        offs_b[hi_slot + 1],
        pts_s,
        offs_s[value],
        offs_s[value + 1],
        kind,
    )


@njit(cache=True)
def complete_from_points(pts_b, offs_b, pts_s, offs_s, assignment, kind):
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
            best_cost = np.inf
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


@njit(cache=True)
def grouped_weight(pts_b, offs_b, pts_s, offs_s, assignment, kind):
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


@njit(cache=True)
def link_score(pts_b, offs_b, pts_s, offs_s, passes, link_kind, score_kind):
    n = len(offs_b) - 1
    m = len(offs_s) - 1
    costs = distance_matrix(pts_b, offs_b, pts_s, offs_s, link_kind)
    assignment = greedy_from_costs(costs)
    assignment = improve_from_costs(costs, assignment, passes)
    if n != m:
        assignment = complete_from_points(pts_b, offs_b, pts_s, offs_s, assignment, score_kind)
    return grouped_weight(pts_b, offs_b, pts_s, offs_s, assignment, score_kind)


@njit(cache=True)
def link_scores_batch(pts_in, offs_in, all_pts, all_offs, tpl_ptr, passes, link_kind, score_kind, out):
    n_in = len(offs_in) - 1
    for t in range(len(tpl_ptr) - 1):
        offs_t = all_offs[tpl_ptr[t]:tpl_ptr[t + 1]]
        if n_in >= len(offs_t) - 1:
            out[t] = link_score(pts_in, offs_in, all_pts, offs_t, passes, link_kind, score_kind)
        else:
            out[t] = link_score(all_pts, offs_t, pts_in, offs_in, passes, link_kind, score_kind)
    return out


@njit(cache=True)
def interpolate_polyline(pts):
    k = len(pts)
    if k == 0:
        return pts.copy()
    # Count first, then fill: output size is bounded by the Chebyshev lengths.
    count = 1
    for seg in range(1, k):
        dx = abs(pts[seg, 0] - pts[seg - 1, 0])
        dy = abs(pts[seg, 1] - pts[seg - 1, 1])
        count += max(dx, dy)
    out = np.empty((count, 2), dtype=np.int64)
    out[0, 0] = pts[0, 0]
    out[0, 1] = pts[0, 1]
    pos = 1
    for seg in range(1, k):
        x0 = pts[seg - 1, 0]
        y0 = pts[seg - 1, 1]
        x1 = pts[seg, 0]
        y1 = pts[seg, 1]
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
            out[pos, 0] = x0
            out[pos, 1] = y0
            pos += 1
    return out[:pos]


@njit(cache=True)
def extract_features(pts, spacing):
    k = len(pts)
    if k == 1:
        out = np.empty((2, 2), dtype=np.int64)
        out[0] = pts[0]
        out[1] = pts[0]
        return out
    out = np.empty((k + 1, 2), dtype=np.int64)
    out[0] = pts[0]
    pos = 1
    acc = 0.0
    last_emitted = 0
    for i in range(1, k):
        dx = float(pts[i, 0] - pts[i - 1, 0])
        dy = float(pts[i, 1] - pts[i - 1, 1])
        acc += math.sqrt(dx * dx + dy * dy)
        if acc >= spacing:
            out[pos] = pts[i]
            pos += 1
            acc = 0.0
            last_emitted = i
    if last_emitted != k - 1:
        out[pos] = pts[k - 1]
        pos += 1
    if pos == 1:
        out[1] = out[0]
        pos = 2
    return out[:pos]


@njit(cache=True)
def _interval_row(edge_fall, edge_rise, size, out_row):
    # Sweep one line: nearest falling/rising edges on each side, then the
    # interval case table.
    w = len(edge_fall)
    e1 = np.empty(w, dtype=np.int64)
    e2 = np.empty(w, dtype=np.int64)
    e3 = np.empty(w, dtype=np.int64)
    e4 = np.empty(w, dtype=np.int64)
    last_fall = -1
    last_rise = -1
    for x in range(w):
        e1[x] = last_fall
        e3[x] = last_rise
        if edge_fall[x]:
            last_fall = x
        if edge_rise[x]:
            last_rise = x
    next_fall = size
    next_rise = size
    for x in range(w - 1, -1, -1):
        if edge_fall[x]:
            next_fall = x
        if edge_rise[x]:
            next_rise = x
        e2[x] = next_fall
        e4[x] = next_rise
    for x in range(w):
        u1 = e1[x] < 0
        u2 = e2[x] >= size
        u3 = e3[x] < 0
        u4 = e4[x] >= size
        n_undef = int(u1) + int(u2) + int(u3) + int(u4)
        if n_undef == 4:
            interval = 4.0 * size
        elif n_undef >= 2:
            interval = 2.0 * size
        elif n_undef == 1:
            if u1 or u2:
                interval = float(e4[x] - e3[x])
            else:
                interval = float(e2[x] - e1[x])
        else:
            interval = (float(e2[x] - e1[x]) + float(e4[x] - e3[x])) / 2.0
        if interval < 1.0:
            interval = 1.0
        out_row[x] = interval


@njit(cache=True)
def line_density_projections(img):
    h, w = img.shape
    lx = np.empty((h, w), dtype=np.float64)
    ly = np.empty((h, w), dtype=np.float64)
    fall = np.empty(w, dtype=np.bool_)
    rise = np.empty(w, dtype=np.bool_)
    for y in range(h):
        for x in range(w):
            ink = img[y, x] != 0
            nxt = img[y, x + 1] != 0 if x + 1 < w else False
            prv = img[y, x - 1] != 0 if x > 0 else False
            fall[x] = ink and not nxt
            rise[x] = ink and not prv
        _interval_row(fall, rise, w, lx[y])
    fall_v = np.empty(h, dtype=np.bool_)
    rise_v = np.empty(h, dtype=np.bool_)
    col = np.empty(h, dtype=np.float64)
    for x in range(w):
        for y in range(h):
            ink = img[y, x] != 0
            nxt = img[y + 1, x] != 0 if y + 1 < h else False
            prv = img[y - 1, x] != 0 if y > 0 else False
            fall_v[y] = ink and not nxt
            rise_v[y] = ink and not prv
        _interval_row(fall_v, rise_v, h, col)
        for y in range(h):
            ly[y, x] = col[y]
    col_sums = np.zeros(w, dtype=np.float64)
    row_sums = np.zeros(h, dtype=np.float64)
    for y in range(h):
        for x in range(w):
            if lx[y, x] + ly[y, x] < 6.0 * w:
                density = max(w / lx[y, x], h / ly[y, x])
            else:
                density = 0.0
            col_sums[x] += density
            row_sums[y] += density
    return col_sums, row_sums
