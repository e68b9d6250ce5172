"""Immutable simple graphs on vertices ``0..n-1`` with bitset adjacency."""
from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .errors import GraphFormatError, InvalidFamilyParams, InvalidVertex, NotAnEdge, SelfLoopRejected

Edge = tuple[int, int]


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph.

    ``adj[v]`` is an int whose bit ``u`` is set iff ``uv`` is an edge. Build
    instances with :func:`make_graph` or the family generators; the
    constructor trusts its input.
    """

    n: int
    adj: tuple[int, ...]
    edge_count: int = field(compare=False)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def closed_mask(self, v: int) -> int:
        return self.adj[v] | (1 << v)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and 0 <= v < self.n and bool(self.adj[u] >> v & 1)

    def edges(self) -> list[Edge]:
        """Edges as ``(u, v)`` with ``u < v``, sorted."""
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u] >> (u + 1) << (u + 1))]

    def is_empty(self) -> bool:
        """True when the graph has no edges."""
        return self.edge_count == 0

    def closed_neighborhood(self, vertices: Iterable[int]) -> int:
        mask = 0
        for v in vertices:
            mask |= self.adj[v] | (1 << v)
        return mask


def _from_masks(n: int, adj: Sequence[int]) -> Graph:
    adj = tuple(adj)
    return Graph(n, adj, sum(a.bit_count() for a in adj) // 2)


def make_graph(n: int, edges: Iterable[Sequence[int]] = ()) -> Graph:
    """Build a graph; duplicate edges collapse."""
    if n < 0:
        raise InvalidVertex(f"vertex count must be >= 0, got {n}")
    adj = [0] * n
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidVertex(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise SelfLoopRejected(f"self-loop at vertex {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return _from_masks(n, adj)


# --- families -----------------------------------------------------------------

def path(n: int) -> Graph:
    if n < 1:
        raise InvalidFamilyParams("path needs n >= 1")
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidFamilyParams("cycle needs n >= 3")
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise InvalidFamilyParams("complete graph needs n >= 1")
    return make_graph(n, combinations(range(n), 2))


def empty(n: int) -> Graph:
    if n < 1:
        raise InvalidFamilyParams("empty graph needs n >= 1")
    return make_graph(n)


def star(n: int) -> Graph:
    """``K_{1,n-1}`` on ``n`` vertices, center 0."""
    if n < 1:
        raise InvalidFamilyParams("star needs n >= 1")
    return make_graph(n, [(0, i) for i in range(1, n)])


def multipartite(parts: Sequence[int]) -> Graph:
    parts = sorted(int(p) for p in parts)
    if len(parts) < 2 or parts[0] < 1:
        raise InvalidFamilyParams("multipartite needs t >= 2 parts, each of size >= 1")
    label = [i for i, size in enumerate(parts) for _ in range(size)]
    n = len(label)
    return make_graph(n, [(u, v) for u, v in combinations(range(n), 2) if label[u] != label[v]])


def product(g1: Graph, g2: Graph) -> Graph:
    """Cartesian product; vertex ``(a, b)`` gets id ``a * g2.n + b``."""
    n2 = g2.n
    edges = []
    for a in range(g1.n):
        for b, c in g2.edges():
            edges.append((a * n2 + b, a * n2 + c))
    for a, c in g1.edges():
        for b in range(n2):
            edges.append((a * n2 + b, c * n2 + b))
    return make_graph(g1.n * n2, edges)


def grid2xn(n: int) -> Graph:
    if n < 1:
        raise InvalidFamilyParams("grid2xn needs n >= 1")
    return product(path(2), path(n))


def complete_minus_pm(order: int) -> Graph:
    """``K_{2t}`` minus the perfect matching ``{(2i, 2i+1)}``."""
    if order < 4 or order % 2:
        raise InvalidFamilyParams("complete_minus_pm needs an even order >= 4")
    return make_graph(order, [(u, v) for u, v in combinations(range(order), 2) if u // 2 != v // 2])


def complement_of_cycles(lengths: Sequence[int]) -> Graph:
    if not lengths or any(k < 3 for k in lengths):
        raise InvalidFamilyParams("complement_of_cycles needs cycle lengths >= 3")
    return complement(disjoint_union(*(cycle(k) for k in lengths)))


def disjoint_union(*graphs: Graph) -> Graph:
    edges, offset = [], 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return make_graph(offset, edges)


class Family(NamedTuple):
    name: str
    params: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.name}:{','.join(map(str, self.params))}"


_SIMPLE = {
    "path": path,
    "cycle": cycle,
    "complete": complete,
    "empty": empty,
    "star": star,
    "grid2xn": grid2xn,
    "complete_minus_pm": complete_minus_pm,
}
_LISTED = {"multipartite": multipartite, "complement_of_cycles": complement_of_cycles}
_ALIASES = {"cmpm": "complete_minus_pm", "complement-of-cycles": "complement_of_cycles",
            "complete-minus-pm": "complete_minus_pm", "cocycles": "complement_of_cycles"}


def parse_family(text: str) -> Family:
    """Parse ``name:params`` such as ``cycle:5`` or ``multipartite:2,3,3``."""
    name, _, rest = text.strip().partition(":")
    name = _ALIASES.get(name.lower(), name.lower())
    if name not in _SIMPLE and name not in _LISTED:
        raise InvalidFamilyParams(f"unknown family {name!r}")
    try:
        params = tuple(int(p) for p in rest.split(",") if p.strip())
    except ValueError:
        raise InvalidFamilyParams(f"bad parameters in {text!r}") from None
    return Family(name, params)


def gen_family(spec: Family | str) -> Graph:
    if isinstance(spec, str):
        spec = parse_family(spec)
    name, params = spec
    if name in _LISTED:
        return _LISTED[name](params)
    if name not in _SIMPLE:
        raise InvalidFamilyParams(f"unknown family {name!r}")
    if len(params) != 1:
        raise InvalidFamilyParams(f"{name} takes exactly one parameter")
    return _SIMPLE[name](params[0])


# --- structure ----------------------------------------------------------------

class DegreeProfile(NamedTuple):
    max_degree: int
    min_degree: int
    n_delta: int
    histogram: dict[int, int]


def structural_metrics(g: Graph) -> DegreeProfile:
    degs = g.degrees()
    if not degs:
        return DegreeProfile(0, 0, 0, {})
    hist = Counter(degs)
    delta = max(degs)
    return DegreeProfile(delta, min(degs), hist[delta], dict(sorted(hist.items())))


def components(g: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by smallest vertex."""
    seen = 0
    out = []
    for s in range(g.n):
        if seen >> s & 1:
            continue
        comp = 1 << s
        frontier = comp
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(list(_bits(comp)))
    return out


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(components(g)) == 1


def bfs_distances(g: Graph, source: int) -> list[int]:
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for u in _bits(g.adj[v]):
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def diameter(g: Graph) -> float:
    """Largest distance; ``math.inf`` when disconnected, 0 for ``n <= 1``."""
    best = 0
    for s in range(g.n):
        dist = bfs_distances(g, s)
        if min(dist) < 0:
            return math.inf
        best = max(best, max(dist))
    return best


def _max_flow(cap: list[dict[int, int]], s: int, t: int, limit: int) -> int:
    """Edmonds-Karp on a residual dict-of-dicts; stops once ``limit`` is reached."""
    flow = 0
    while flow < limit:
        parent = {s: s}
        queue = deque([s])
        while queue and t not in parent:
            v = queue.popleft()
            for u, c in cap[v].items():
                if c > 0 and u not in parent:
                    parent[u] = v
                    queue.append(u)
        if t not in parent:
            break
        v = t
        while v != s:
            p = parent[v]
            cap[p][v] -= 1
            cap[v][p] = cap[v].get(p, 0) + 1
            v = p
        flow += 1
    return flow


def _local_edge_connectivity(g: Graph, s: int, t: int, limit: int) -> int:
    cap = [{u: 1 for u in _bits(g.adj[v])} for v in range(g.n)]
    return _max_flow(cap, s, t, limit)


def _local_vertex_connectivity(g: Graph, s: int, t: int, limit: int) -> int:
    # vertex v splits into v_in = 2v and v_out = 2v + 1
    big = g.n
    cap: list[dict[int, int]] = [dict() for _ in range(2 * g.n)]
    for v in range(g.n):
        cap[2 * v][2 * v + 1] = big if v in (s, t) else 1
        for u in _bits(g.adj[v]):
            cap[2 * v + 1][2 * u] = big
    return _max_flow(cap, 2 * s + 1, 2 * t, limit)


def edge_connectivity(g: Graph) -> int:
    if g.n <= 1 or not is_connected(g):
        return 0
    delta = min(g.degrees())
    best = delta
    for t in range(1, g.n):
        best = min(best, _local_edge_connectivity(g, 0, t, best))
    return best


def vertex_connectivity(g: Graph) -> int:
    """Vertex connectivity with ``kappa(K_n) = n - 1``."""
    if g.n <= 1 or not is_connected(g):
        return 0
    if g.edge_count == g.n * (g.n - 1) // 2:
        return g.n - 1
    best = min(g.degrees())
    for s, t in combinations(range(g.n), 2):
        if not g.has_edge(s, t):
            best = min(best, _local_vertex_connectivity(g, s, t, best))
    return best


class Connectivity(NamedTuple):
    kappa: int
    lam: int
    diameter: float
    components: int


def connectivity(g: Graph) -> Connectivity:
    return Connectivity(vertex_connectivity(g), edge_connectivity(g), diameter(g), len(components(g)))


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.edge_count == g.n - 1 and is_connected(g)


class Bipartition(NamedTuple):
    """``coloring`` is set when bipartite, otherwise ``odd_cycle`` is."""

    coloring: tuple[int, ...] | None
    odd_cycle: list[int] | None

    def __bool__(self) -> bool:
        return self.coloring is not None


def is_bipartite(g: Graph) -> Bipartition:
    color = [-1] * g.n
    parent = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in _bits(g.adj[v]):
                if color[u] < 0:
                    color[u] = 1 - color[v]
                    parent[u] = v
                    queue.append(u)
                elif color[u] == color[v]:
                    return Bipartition(None, _odd_cycle(parent, u, v))
    return Bipartition(tuple(color), None)


def _odd_cycle(parent: list[int], u: int, v: int) -> list[int]:
    def chain(x):
        out = [x]
        while parent[x] >= 0:
            x = parent[x]
            out.append(x)
        return out

    cu, cv = chain(u), chain(v)
    on_v = set(cv)
    meet = next(x for x in cu if x in on_v)
    left = cu[: cu.index(meet) + 1]
    right = cv[: cv.index(meet)]
    return left + right[::-1]


# --- derived graphs -----------------------------------------------------------

def remove_edges(g: Graph, edges: Iterable[Sequence[int]]) -> Graph:
    adj = list(g.adj)
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not g.has_edge(u, v):
            raise NotAnEdge(f"({u}, {v}) is not an edge")
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
    return _from_masks(g.n, adj)


def remove_vertex(g: Graph, x: int, return_mapping: bool = False):
    """Delete ``x``; ids above ``x`` shift down by one.

    With ``return_mapping`` the result is ``(graph, mapping)`` where
    ``mapping[old_id] = new_id`` for every surviving vertex.
    """
    if not 0 <= x < g.n:
        raise InvalidVertex(f"vertex {x} out of range for n={g.n}")
    low = (1 << x) - 1
    adj = []
    for v in range(g.n):
        if v == x:
            continue
        a = g.adj[v]
        adj.append((a & low) | (a >> (x + 1) << x))
    h = _from_masks(g.n - 1, adj)
    if return_mapping:
        return h, {v: (v if v < x else v - 1) for v in range(g.n) if v != x}
    return h


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> Graph:
    """Subgraph on ``vertices``, relabelled in the given order."""
    index = {v: i for i, v in enumerate(vertices)}
    adj = []
    for v in vertices:
        adj.append(sum(1 << index[u] for u in _bits(g.adj[v]) if u in index))
    return _from_masks(len(vertices), adj)


def complement(g: Graph) -> Graph:
    full = g.full_mask
    return _from_masks(g.n, [full & ~a & ~(1 << v) for v, a in enumerate(g.adj)])


# --- random graphs ------------------------------------------------------------

def random_graph(n: int, p: float, seed: int) -> Graph:
    """G(n, p) via ``numpy.random.default_rng(seed)``.

    Pairs are visited in lexicographic order and each consumes one uniform
    draw; the pair is kept when the draw is below ``p``.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    pairs = list(combinations(range(n), 2))
    draws = rng.random(len(pairs))
    return make_graph(n, [e for e, r in zip(pairs, draws) if r < p])


def random_connected_graph(n: int, p: float, seed: int, max_tries: int = 10_000) -> Graph:
    """First connected sample among seeds ``(seed, 0), (seed, 1), ...``."""
    for attempt in range(max_tries):
        rng_seed = np.random.SeedSequence([seed, attempt]).generate_state(1)[0]
        g = random_graph(n, p, int(rng_seed))
        if is_connected(g):
            return g
    raise ValueError(f"no connected sample for n={n}, p={p} within {max_tries} tries")


def all_graphs(n: int) -> Iterator[Graph]:
    """Every labelled graph on ``n`` vertices (all edge subsets of ``K_n``)."""
    pairs = list(combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        adj = [0] * n
        for i, (u, v) in enumerate(pairs):
            if bits >> i & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        yield _from_masks(n, adj)


# --- text format ----------------------------------------------------------------

def format_graph(g: Graph, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p edge {g.n} {g.edge_count}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Read ``p edge n m`` / ``e u v`` text with 1-based ids."""
    n = None
    edges = []
    declared_m = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphFormatError("duplicate header", lineno)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise GraphFormatError(f"expected 'p edge <n> <m>', got {line!r}", lineno)
            try:
                n, declared_m = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphFormatError(f"non-integer header field in {line!r}", lineno) from None
        elif parts[0] == "e":
            if n is None:
                raise GraphFormatError("edge line before header", lineno)
            if len(parts) != 3:
                raise GraphFormatError(f"expected 'e <u> <v>', got {line!r}", lineno)
            try:
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
            except ValueError:
                raise GraphFormatError(f"non-integer vertex in {line!r}", lineno) from None
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"vertex out of range in {line!r}", lineno)
            if u == v:
                raise GraphFormatError(f"self-loop in {line!r}", lineno)
            edges.append((u, v))
        else:
            raise GraphFormatError(f"unrecognised line {line!r}", lineno)
    if n is None:
        raise GraphFormatError("missing 'p edge' header")
    g = make_graph(n, edges)
    if g.edge_count != declared_m:
        raise GraphFormatError(f"header declares {declared_m} edges, found {g.edge_count}")
    return g


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def write_graph(g: Graph, path, comments: Iterable[str] = ()) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph(g, comments))
