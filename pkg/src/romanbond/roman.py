"""Exact domination, Roman domination and vertex cover numbers.

Roman domination uses the identity

    gamma_R(G) = min over S of 2|S| + |V - N[S]|

(``S`` = vertices labelled 2; the cheapest completion labels exactly the
vertices outside ``N[S]`` with 1). It is cross-checked against a full
``3^n`` enumeration in the test-suite.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from . import kernels
from .errors import BudgetExceeded, OracleTooLarge
from .graph import Graph, _bits, components, induced_subgraph, remove_vertex

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class RomanFunction:
    """``f: V -> {0, 1, 2}`` stored as the sets labelled 2 and 1."""

    n: int
    v2: frozenset[int]
    v1: frozenset[int]

    def __post_init__(self):
        if self.v1 & self.v2:
            raise ValueError("v1 and v2 overlap")

    @classmethod
    def from_centers(cls, g: Graph, centers: Iterable[int]) -> "RomanFunction":
        """The cheapest function with ``V2 = centers``."""
        centers = frozenset(centers)
        covered = g.closed_neighborhood(centers)
        return cls(g.n, centers, frozenset(v for v in range(g.n) if not covered >> v & 1))

    @classmethod
    def from_values(cls, values) -> "RomanFunction":
        values = list(values)
        return cls(len(values), frozenset(i for i, x in enumerate(values) if x == 2),
                   frozenset(i for i, x in enumerate(values) if x == 1))

    @property
    def weight(self) -> int:
        return 2 * len(self.v2) + len(self.v1)

    @property
    def v0(self) -> frozenset[int]:
        return frozenset(range(self.n)) - self.v1 - self.v2

    def __call__(self, v: int) -> int:
        return 2 if v in self.v2 else 1 if v in self.v1 else 0

    def values(self) -> list[int]:
        return [self(v) for v in range(self.n)]

    def is_valid(self, g: Graph) -> bool:
        if g.n != self.n:
            return False
        twos = sum(1 << v for v in self.v2)
        return all(g.adj[v] & twos for v in self.v0)


@dataclass
class SolveResult:
    value: int
    witness: object
    nodes_explored: int = 0
    elapsed: float = 0.0


# --- component plumbing -----------------------------------------------------------

def _order(g: Graph) -> list[int]:
    degs = g.degrees()
    return sorted(range(g.n), key=lambda v: (-degs[v], v))


class _Component:
    __slots__ = ("vertices", "graph", "closed", "order")

    def __init__(self, g: Graph, vertices: list[int]):
        self.vertices = vertices
        self.graph = induced_subgraph(g, vertices)
        if self.graph.n > kernels.MAX_KERNEL_VERTICES:
            raise ValueError(f"components above {kernels.MAX_KERNEL_VERTICES} vertices are not supported")
        self.closed = kernels.as_kernel_array([self.graph.closed_mask(v) for v in range(self.graph.n)])
        self.order = kernels.as_kernel_array(_order(self.graph))

    def to_global(self, mask: int) -> set[int]:
        return {self.vertices[i] for i in _bits(int(mask))}

    def to_local(self, vertices: Iterable[int]) -> int:
        index = {v: i for i, v in enumerate(self.vertices)}
        return sum(1 << index[v] for v in vertices if v in index)


def _split(g: Graph) -> list[_Component]:
    return [_Component(g, comp) for comp in components(g)]


class _Search(NamedTuple):
    value: int
    centers: int
    nodes: int
    status: int


def _search(comp: _Component, roman: bool, *, best: int, best_S: int, stop_at: int = -1,
            forced: int = 0, budget: int = DEFAULT_BUDGET) -> _Search:
    bufs = kernels.make_buffers(comp.graph.n)
    out = kernels.as_kernel_array([])
    kernels.cover_search(comp.closed, comp.order, roman, forced, best, best_S, stop_at, -1, out, budget, *bufs)
    res = bufs[-1]
    return _Search(int(res[0]), int(res[1]), int(res[2]), int(res[3]))


def _root_bound(comp: _Component, roman: bool, forced: int) -> int:
    item = 2 if roman else 1
    D = 0
    for u in _bits(forced):
        D |= int(comp.closed[u])
    lb = kernels.lower_bound(comp.closed, comp.graph.n, D, 0, roman)
    return item * forced.bit_count() + max(lb, 0)


def _optimize(comp: _Component, roman: bool, forced: int, budget: int) -> _Search:
    n = comp.graph.n
    if forced:
        # incumbent: forced centers, then 1 on every uncovered vertex (Roman) or all vertices as centers
        if roman:
            covered = 0
            for u in _bits(forced):
                covered |= int(comp.closed[u])
            best = 2 * forced.bit_count() + (n - covered.bit_count())
            best_S = forced
        else:
            best, best_S = n, (1 << n) - 1
    else:
        best, best_S = kernels.greedy_cover(comp.closed, n, roman)
        best, best_S = int(best), int(best_S)
    res = _search(comp, roman, best=best, best_S=best_S, forced=forced, budget=budget)
    if res.status == kernels.STATUS_BUDGET:
        raise BudgetExceeded("branch-and-bound budget exhausted", _root_bound(comp, roman, forced), res.value)
    return res


def _solve(g: Graph, roman: bool, budget: int | None, forced_v2: Iterable[int] = ()) -> SolveResult:
    t0 = time.perf_counter()
    budget = DEFAULT_BUDGET if budget is None else budget
    forced_v2 = set(forced_v2)
    total = 0
    nodes = 0
    centers: set[int] = set()
    for comp in _split(g):
        res = _optimize(comp, roman, comp.to_local(forced_v2), budget)
        total += res.value
        nodes += res.nodes
        centers |= comp.to_global(res.centers)
    elapsed = time.perf_counter() - t0
    if roman:
        return SolveResult(total, RomanFunction.from_centers(g, centers), nodes, elapsed)
    return SolveResult(total, frozenset(centers), nodes, elapsed)


# --- public solvers -----------------------------------------------------------------

def gamma_r(g: Graph, budget: int | None = None, forced_v2: Iterable[int] = ()) -> SolveResult:
    """Roman domination number with a minimum-weight witness.

    ``forced_v2`` restricts the search to functions labelling those vertices 2.
    """
    return _solve(g, True, budget, forced_v2)


def gamma(g: Graph, budget: int | None = None) -> SolveResult:
    """Domination number with a minimum dominating set as witness."""
    return _solve(g, False, budget)


def _at_most(g: Graph, roman: bool, w: int, budget: int | None) -> set[int] | None:
    budget = DEFAULT_BUDGET if budget is None else budget
    comps = sorted(_split(g), key=lambda c: c.graph.n)
    if not comps:
        return set() if w >= 0 else None
    centers: set[int] = set()
    rest = 0
    for comp in comps[:-1]:
        res = _optimize(comp, roman, 0, budget)
        rest += res.value
        centers |= comp.to_global(res.centers)
    big = comps[-1]
    threshold = w - rest
    if threshold < 0:
        return None
    res = _search(big, roman, best=threshold + 1, best_S=0, stop_at=threshold, budget=budget)
    if res.status == kernels.STATUS_BUDGET:
        raise BudgetExceeded("decision search budget exhausted", rest + _root_bound(big, roman, 0), None)
    if res.value > threshold:
        return None
    return centers | big.to_global(res.centers)


def gamma_r_at_most(g: Graph, w: int, budget: int | None = None) -> RomanFunction | None:
    """Decision mode: a Roman function of weight at most ``w``, or None."""
    centers = _at_most(g, True, w, budget)
    return None if centers is None else RomanFunction.from_centers(g, centers)


def gamma_at_most(g: Graph, w: int, budget: int | None = None) -> frozenset[int] | None:
    centers = _at_most(g, False, w, budget)
    return None if centers is None else frozenset(centers)


def optimal_center_sets(g: Graph, roman: bool, cap: int,
                        budget: int | None = None) -> tuple[int, list[frozenset[int]]]:
    """All ``S`` attaining the optimum.

    For Roman mode these are the ``V2`` sets of minimum Roman functions; for
    domination mode, the minimum dominating sets. Returns the exact count and
    up to ``cap`` witnesses in lexicographic order of their sorted tuples
    (exactly so when the count does not exceed ``cap``).
    """
    budget = DEFAULT_BUDGET if budget is None else budget
    per_comp: list[list[frozenset[int]]] = []
    count = 1
    for comp in _split(g):
        local_target = _optimize(comp, roman, 0, budget).value
        out = kernels.zeros(cap)
        bufs = kernels.make_buffers(comp.graph.n)
        kernels.cover_search(comp.closed, comp.order, roman, 0, 0, 0, -1, local_target, out, budget, *bufs)
        res = bufs[-1]
        if int(res[3]) == kernels.STATUS_BUDGET:
            raise BudgetExceeded("enumeration budget exhausted", int(res[0]), None)
        found = int(res[0])
        count *= found
        sets = [frozenset(comp.to_global(out[i])) for i in range(min(found, cap))]
        per_comp.append(sorted(sets, key=sorted))
    witnesses = [frozenset().union(*parts) for parts in itertools.islice(itertools.product(*per_comp), cap)]
    witnesses.sort(key=sorted)
    return count, witnesses


def count_optimal_roman_functions(g: Graph, cap: int = 1000) -> tuple[int, list[RomanFunction]]:
    """Number of minimum Roman functions and up to ``cap`` of them."""
    count, sets = optimal_center_sets(g, True, cap)
    return count, [RomanFunction.from_centers(g, s) for s in sets]


# --- oracles ----------------------------------------------------------------------

def gamma_r_bruteforce(g: Graph, max_n: int = 12) -> int:
    """Minimum weight over all ``3^n`` labellings satisfying the Roman condition."""
    n = g.n
    if n > max_n:
        raise OracleTooLarge(f"3^{n} enumeration refused (limit n <= {max_n})")
    if n == 0:
        return 0
    labels = np.indices((3,) * n, dtype=np.int8).reshape(n, -1).T
    is_two = labels == 2
    ok = np.ones(len(labels), dtype=bool)
    for v in range(n):
        nbrs = g.neighbors(v)
        has_two = is_two[:, nbrs].any(axis=1) if nbrs else np.zeros(len(labels), dtype=bool)
        ok &= (labels[:, v] != 0) | has_two
    return int(labels[ok].sum(axis=1, dtype=np.int64).min())


def gamma_r_subset_identity(g: Graph, max_n: int = 20) -> int:
    """``min_S 2|S| + |V - N[S]|`` by enumerating every subset ``S``."""
    n = g.n
    if n > max_n:
        raise OracleTooLarge(f"2^{n} enumeration refused (limit n <= {max_n})")
    closed = [g.closed_mask(v) for v in range(n)]
    cover = [0] * (1 << n)
    best = n
    for s in range(1, 1 << n):
        low = s & -s
        cover[s] = cover[s ^ low] | closed[low.bit_length() - 1]
        best = min(best, 2 * s.bit_count() + n - cover[s].bit_count())
    return best


def gamma_bruteforce(g: Graph, max_n: int = 20) -> int:
    n = g.n
    if n > max_n:
        raise OracleTooLarge(f"2^{n} enumeration refused (limit n <= {max_n})")
    full = g.full_mask
    for k in range(n + 1):
        for combo in itertools.combinations(range(n), k):
            if g.closed_neighborhood(combo) == full:
                return k
    return n


# --- vertex cover -----------------------------------------------------------------

def _vc(adj: list[int], alive: int, best: int) -> tuple[int, int]:
    """Minimum vertex cover of the subgraph induced by ``alive``; returns (size, cover)."""
    # pick a vertex of maximum live degree
    pick, deg = -1, 0
    for v in _bits(alive):
        d = (adj[v] & alive).bit_count()
        if d > deg:
            pick, deg = v, d
    if deg == 0:
        return 0, 0
    if deg <= 2 and _max_degree_at_most_two(adj, alive):
        return _vc_paths_cycles(adj, alive)
    if best <= 1:
        return best + 1, 0
    # branch 1: pick in cover
    size1, cover1 = _vc(adj, alive & ~(1 << pick), best - 1)
    size1 += 1
    cover1 |= 1 << pick
    best = min(best, size1)
    # branch 2: all neighbours in cover
    nbrs = adj[pick] & alive
    k = nbrs.bit_count()
    if k < best:
        size2, cover2 = _vc(adj, alive & ~nbrs & ~(1 << pick), best - k)
        size2 += k
        if size2 < size1:
            return size2, cover2 | nbrs
    return size1, cover1


def _max_degree_at_most_two(adj, alive):
    return all((adj[v] & alive).bit_count() <= 2 for v in _bits(alive))


def _vc_paths_cycles(adj, alive):
    """Exact cover when every live degree is at most 2: alternate along each path or cycle."""
    size, cover, seen = 0, 0, 0
    starts = [v for v in _bits(alive) if (adj[v] & alive).bit_count() == 1]
    starts += [v for v in _bits(alive) if (adj[v] & alive).bit_count() == 2]
    for s in starts:
        if seen >> s & 1 or (adj[s] & alive) == 0:
            continue
        walk = [s]
        seen |= 1 << s
        prev, cur = -1, s
        while True:
            nxt = [u for u in _bits(adj[cur] & alive) if u != prev and not seen >> u & 1]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            walk.append(cur)
            seen |= 1 << cur
        # a path on k vertices needs floor(k/2); a cycle needs ceil(k/2)
        for v in walk[1::2]:
            cover |= 1 << v
        if len(walk) % 2 and (adj[walk[-1]] >> walk[0] & 1) and len(walk) > 2:
            cover |= 1 << walk[-1]
    size = cover.bit_count()
    return size, cover


def beta(g: Graph) -> SolveResult:
    """Vertex covering number with a minimum cover as witness."""
    t0 = time.perf_counter()
    adj = list(g.adj)
    size, cover = _vc(adj, g.full_mask, g.n)
    return SolveResult(size, frozenset(_bits(cover)), 0, time.perf_counter() - t0)


# --- classification ---------------------------------------------------------------

class Classification(NamedTuple):
    is_roman: bool
    is_vc_graph: bool
    is_vrc_graph: bool
    gamma: int
    gamma_r: int
    beta: int


def vertex_deleted_values(g: Graph, roman: bool) -> list[int]:
    solve = gamma_r if roman else gamma
    return [solve(remove_vertex(g, x)).value for x in range(g.n)]


def is_vc_graph(g: Graph, g_value: int | None = None) -> bool:
    base = gamma(g).value if g_value is None else g_value
    return all(v < base for v in vertex_deleted_values(g, False))


def is_vrc_graph(g: Graph, gr_value: int | None = None) -> bool:
    base = gamma_r(g).value if gr_value is None else gr_value
    if base == g.n:
        return False
    return all(v < base for v in vertex_deleted_values(g, True))


def classify(g: Graph) -> Classification:
    if g.n < 1:
        raise ValueError("classify needs n >= 1")
    gm = gamma(g).value
    gr = gamma_r(g).value
    return Classification(gr == 2 * gm, is_vc_graph(g, gm), is_vrc_graph(g, gr), gm, gr, beta(g).value)
