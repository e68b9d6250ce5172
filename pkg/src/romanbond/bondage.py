"""Bondage number b(G) and Roman bondage number b_R(G).

Deleting edges never decreases the cost of a fixed center set ``S``, so
``gamma_R(G - B) > gamma_R(G)`` exactly when ``B`` raises the cost of every
optimal ``S`` of ``G``. ``S`` gets more expensive iff some vertex ``v`` outside
``S`` loses every edge it has into ``S`` (it drops out of ``N[S]``). The same
holds for minimum dominating sets and ``gamma``.

The search deepens ``k = 1, 2, ...`` and walks ``k``-subsets of the sorted
edge list in lexicographic order, cutting a branch only when some optimal set
can no longer be broken with the edges still available. The first hit is the
lexicographically least minimum bondage set; it is confirmed by an
independent re-solve of ``G - B`` before being returned.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BudgetExceeded, NotApplicable
from .graph import Graph, _bits, remove_edges, structural_metrics
from .roman import gamma, gamma_at_most, gamma_r, gamma_r_at_most, optimal_center_sets

UNBOUNDED = math.inf
ENUMERATION_CAP = 200_000


@dataclass
class BondageResult:
    value: float  # int, or UNBOUNDED
    witness: tuple[tuple[int, int], ...] | None
    base_invariant: int
    removed_invariant: int | None

    @property
    def unbounded(self) -> bool:
        return self.value == UNBOUNDED


def _break_options(g: Graph, edge_bit: dict[tuple[int, int], int], s: frozenset[int]) -> list[int]:
    """Edge masks whose full removal uncovers some vertex of ``N(S) - S``."""
    smask = sum(1 << v for v in s)
    options = []
    covered = g.closed_neighborhood(s) & ~smask
    for v in _bits(covered):
        m = 0
        for u in _bits(g.adj[v] & smask):
            m |= edge_bit[(min(u, v), max(u, v))]
        options.append(m)
    # a superset option is never needed
    options = sorted(set(options), key=lambda m: (m.bit_count(), m))
    minimal = []
    for m in options:
        if not any(o & m == o for o in minimal):
            minimal.append(m)
    return minimal


def _lex_search(num_edges: int, targets: list[list[int]], k: int, node_limit: int):
    """Lexicographically least ``k``-subset (as an edge mask) breaking every target.

    Returns ``(mask or None, nodes)``; raises BudgetExceeded past ``node_limit``.
    """
    nodes = 0

    def feasible(B: int, pos: int, remaining: int) -> bool:
        avail = ~((1 << pos) - 1)
        for opts in targets:
            for m in opts:
                need = m & ~B
                if need & avail == need and need.bit_count() <= remaining:
                    break
            else:
                return False
        return True

    def broken_all(B: int) -> bool:
        return all(any(m & B == m for m in opts) for opts in targets)

    def rec(B: int, pos: int, remaining: int):
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            raise BudgetExceeded("bondage search node limit", k, None)
        if remaining == 0:
            return B if broken_all(B) else None
        if not feasible(B, pos, remaining):
            return None
        for i in range(pos, num_edges - remaining + 1):
            hit = rec(B | (1 << i), i + 1, remaining - 1)
            if hit is not None:
                return hit
        return None

    return rec(0, 0, k), nodes


def _bondage(g: Graph, roman: bool, k_max: int | None, node_limit: int) -> BondageResult:
    solve = gamma_r if roman else gamma
    base = solve(g).value
    if base == g.n:
        return BondageResult(UNBOUNDED, None, base, None)
    edges = g.edges()
    edge_bit = {e: 1 << i for i, e in enumerate(edges)}
    if k_max is None:
        prof = structural_metrics(g)
        k_max = min(len(edges), 2 * prof.max_degree + prof.min_degree)
    count, sets = optimal_center_sets(g, roman, ENUMERATION_CAP)
    if count > ENUMERATION_CAP:
        return _bondage_by_resolve(g, roman, base, edges, k_max)
    targets = [_break_options(g, edge_bit, s) for s in sets]
    # sets that are hardest to break first: cheaper pruning failures
    targets.sort(key=len)
    for k in range(1, k_max + 1):
        mask, _ = _lex_search(len(edges), targets, k, node_limit)
        if mask is not None:
            witness = tuple(edges[i] for i in _bits(mask))
            removed = solve(remove_edges(g, witness)).value
            if removed <= base:
                raise AssertionError(f"bondage witness {witness} failed re-solve")
            return BondageResult(k, witness, base, removed)
    raise BudgetExceeded(f"no bondage set with at most {k_max} edges", k_max + 1, len(edges))


def _bondage_by_resolve(g, roman, base, edges, k_max):
    """Plain deepening with one decision solve per candidate; used when enumeration is too large."""
    from itertools import combinations

    decide = gamma_r_at_most if roman else gamma_at_most
    solve = gamma_r if roman else gamma
    for k in range(1, k_max + 1):
        for combo in combinations(edges, k):
            h = remove_edges(g, combo)
            if decide(h, base) is None:
                return BondageResult(k, combo, base, solve(h).value)
    raise BudgetExceeded(f"no bondage set with at most {k_max} edges", k_max + 1, len(edges))


def bondage_r(g: Graph, k_max: int | None = None, node_limit: int = 10**7) -> BondageResult:
    """Roman bondage number; ``UNBOUNDED`` when ``gamma_R(G) = n``.

    ``k_max`` defaults to ``min(|E|, 2*Delta + delta)``.
    """
    return _bondage(g, True, k_max, node_limit)


def bondage(g: Graph, k_max: int | None = None, node_limit: int = 10**7) -> BondageResult:
    """Bondage number (for ``gamma``); ``UNBOUNDED`` when ``gamma(G) = n``."""
    return _bondage(g, False, k_max, node_limit)


def bondage_r_dominant_vertices(g: Graph) -> int:
    """``ceil(t / 2)`` where ``t`` counts vertices of degree ``n - 1`` (needs ``n >= 3``, ``t >= 1``)."""
    t = sum(1 for d in g.degrees() if d == g.n - 1)
    if g.n < 3 or t < 1:
        raise NotApplicable(f"needs n >= 3 and a vertex of degree n-1 (n={g.n}, t={t})")
    return (t + 1) // 2


def is_bondage_r_one(g: Graph, base_value: int | None = None, budget: int | None = None,
                     collect: bool = False):
    """Whether one edge deletion raises ``gamma_R``; returns ``(flag, first edge or None)``.

    Edges are scanned in sorted order. With ``collect`` a third item maps each
    scanned edge to True when ``gamma_R(G - e) <= gamma_R(G)`` was certified.
    """
    base = gamma_r(g, budget).value if base_value is None else base_value
    scanned: dict[tuple[int, int], bool] = {}
    for e in g.edges():
        kept = gamma_r_at_most(remove_edges(g, [e]), base, budget) is not None
        scanned[e] = kept
        if not kept:
            return (True, e, scanned) if collect else (True, e)
    return (False, None, scanned) if collect else (False, None)
