"""Branch-and-bound kernels over int64 vertex bitsets.

A search picks a set ``S`` of centers. In Roman mode each center costs 2 and
every vertex outside ``N[S]`` costs 1; in domination mode each center costs 1
and every vertex must lie in ``N[S]``. Both modes share one iterative DFS:

* pick the first unhandled vertex ``v`` in ``order``;
* branch on which candidate ``u`` in ``N[v]`` is the first center covering
  it (earlier candidates become forbidden), and, in Roman mode only, on ``v``
  being left uncovered (all of ``N[v]`` forbidden, ``v`` pays 1).

The branches partition the candidate sets, so enumeration counts every
optimal ``S`` exactly once.

All functions run unchanged under numba and as plain Python (see ``_accel``).
"""
from __future__ import annotations

import math

import numpy as np

from ._accel import USE_NUMBA, njit

MAX_KERNEL_VERTICES = 62

STATUS_DONE = 0
STATUS_BUDGET = 1
STATUS_EARLY_EXIT = 2


@njit(cache=True)
def popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def lower_bound(closed, n, D, F, roman):
    """Fractional covering bound on the cost of handling every vertex not in ``D``.

    Each unhandled vertex is charged the cheapest per-vertex price any allowed
    center could offer it; returns -1 when some vertex cannot be handled.
    """
    undone = ((1 << n) - 1) & ~D
    total = 0.0
    for w in range(n):
        if not (undone >> w) & 1:
            continue
        cand = closed[w] & ~F
        mc = 0
        for u in range(n):
            if (cand >> u) & 1:
                k = popcount(closed[u] & undone)
                if k > mc:
                    mc = k
        if roman:
            if mc <= 2:
                total += 1.0
            else:
                total += 2.0 / mc
        else:
            if mc == 0:
                return -1
            total += 1.0 / mc
    return int(math.ceil(total - 1e-9))


@njit(cache=True)
def greedy_cover(closed, n, roman):
    """Greedy incumbent: repeatedly add the center covering most new vertices.

    Returns ``(cost, S)``. In Roman mode the cheapest prefix (centers plus a 1
    on every uncovered vertex) is kept.
    """
    full = (1 << n) - 1
    D = 0
    S = 0
    c = 0
    best = n if roman else n + 1
    best_S = 0
    while D != full:
        pick = -1
        gain = 0
        for u in range(n):
            k = popcount(closed[u] & ~D & full)
            if k > gain:
                gain = k
                pick = u
        S |= 1 << pick
        D |= closed[pick]
        if roman:
            c += 2
            val = c + popcount(full & ~D)
            if val < best:
                best = val
                best_S = S
        else:
            c += 1
    if not roman:
        best = c
        best_S = S
    return best, best_S


@njit(cache=True)
def cover_search(closed, order, roman, S0, best_in, best_S_in, stop_at,
                 collect_target, out_sets, node_limit,
                 st_D, st_F, st_S, st_c, st_v, st_pos, st_tried, result):
    """Iterative DFS shared by optimisation, decision and enumeration.

    Optimisation: finds ``S`` with cost strictly below ``best_in`` (keeping
    ``best_S_in`` otherwise). Decision: stop as soon as the incumbent is at
    most ``stop_at``. Enumeration (``collect_target >= 0``): every leaf with
    cost at most ``collect_target`` is counted and the first
    ``len(out_sets)`` are stored.

    ``S0`` pre-selects centers. ``result`` receives
    ``[best or count, best_S, nodes, status]``.
    """
    n = len(closed)
    full = (1 << n) - 1
    item = 2 if roman else 1
    collect = collect_target >= 0
    cap = len(out_sets)

    D0 = 0
    c0 = 0
    for u in range(n):
        if (S0 >> u) & 1:
            D0 |= closed[u]
            c0 += item

    best = best_in
    best_S = best_S_in
    count = 0
    nodes = 0
    status = STATUS_DONE

    depth = 0
    st_D[0] = D0
    st_F[0] = 0
    st_S[0] = S0
    st_c[0] = c0
    st_v[0] = -1
    while depth >= 0:
        v = st_v[depth]
        if v < 0:
            nodes += 1
            if nodes > node_limit:
                status = STATUS_BUDGET
                break
            D = st_D[depth]
            c = st_c[depth]
            if D == full:
                if collect:
                    if c <= collect_target:
                        if count < cap:
                            out_sets[count] = st_S[depth]
                        count += 1
                elif c < best:
                    best = c
                    best_S = st_S[depth]
                    if best <= stop_at:
                        status = STATUS_EARLY_EXIT
                        break
                depth -= 1
                continue
            lb = lower_bound(closed, n, D, st_F[depth], roman)
            if collect:
                limit = collect_target
            else:
                limit = best - 1
            if lb < 0 or c + lb > limit:
                depth -= 1
                continue
            for i in range(n):
                w = order[i]
                if not (D >> w) & 1:
                    v = w
                    break
            st_v[depth] = v
            st_pos[depth] = 0
            st_tried[depth] = 0

        pos = st_pos[depth]
        F = st_F[depth]
        tried = st_tried[depth]
        cand = closed[v] & ~F
        u = -1
        while pos < n:
            w = order[pos]
            pos += 1
            if (cand >> w) & 1:
                u = w
                break
        if u >= 0:
            st_pos[depth] = pos
            st_tried[depth] = tried | (1 << u)
            nD = st_D[depth] | closed[u]
            nF = F | tried
            nS = st_S[depth] | (1 << u)
            nc = st_c[depth] + item
        elif roman and pos == n:
            st_pos[depth] = n + 1
            nD = st_D[depth] | (1 << v)
            nF = F | closed[v]
            nS = st_S[depth]
            nc = st_c[depth] + 1
        else:
            depth -= 1
            continue
        depth += 1
        st_D[depth] = nD
        st_F[depth] = nF
        st_S[depth] = nS
        st_c[depth] = nc
        st_v[depth] = -1

    result[0] = count if collect else best
    result[1] = best_S
    result[2] = nodes
    result[3] = status


def make_buffers(n: int):
    """Stack buffers for :func:`cover_search` of depth ``n + 1``."""
    if USE_NUMBA:
        return tuple(np.zeros(n + 2, dtype=np.int64) for _ in range(7)) + (np.zeros(4, dtype=np.int64),)
    return tuple([0] * (n + 2) for _ in range(7)) + ([0] * 4,)


def zeros(size: int):
    if USE_NUMBA:
        return np.zeros(size, dtype=np.int64)
    return [0] * size


def as_kernel_array(values):
    if USE_NUMBA:
        return np.asarray(values, dtype=np.int64)
    return [int(x) for x in values]


def warmup() -> None:
    """Trigger compilation on a tiny instance."""
    closed = as_kernel_array([3, 3])
    order = as_kernel_array([0, 1])
    bufs = make_buffers(2)
    out = as_kernel_array([0])
    for roman in (True, False):
        greedy_cover(closed, 2, roman)
        cover_search(closed, order, roman, 0, 10, 0, -1, -1, out, 100, *bufs)
        cover_search(closed, order, roman, 0, 10, 0, -1, 2, out, 100, *bufs)
