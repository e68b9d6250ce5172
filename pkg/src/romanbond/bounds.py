"""Upper and lower bounds on the Roman bondage number, checked against exact values.

Each ``bound_*`` function returns :class:`BoundReport` objects. A report whose
hypothesis fails has ``applicable=False`` and a ``reason``. An unbounded
``b_R`` satisfies every lower bound and voids every upper bound.
"""
from __future__ import annotations

import enum
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator

from . import graph as gc
from .bondage import UNBOUNDED, BondageResult, bondage, bondage_r
from .errors import BudgetExceeded
from .graph import Graph, _bits
from .roman import beta, count_optimal_roman_functions, gamma, gamma_r, vertex_deleted_values


class BoundTag(enum.Enum):
    PATH_TRIPLE = "path_triple"
    PATH_TRIPLE_COMMON = "path_triple_common"
    PATH_TRIPLE_MIN = "path_triple_min"
    DEGREE_DIAMETER = "degree_diameter"
    TREE_MAX_DEGREE = "tree_max_degree"
    GAMMA_PLUS_ONE = "gamma_plus_one"
    ROMAN_GRAPH = "roman_graph"
    WEIGHT_DEGREE = "weight_degree"
    EDGE_CONNECTIVITY = "edge_connectivity"
    VERTEX_CONNECTIVITY = "vertex_connectivity"
    UNIQUE_FUNCTION = "unique_function"
    VRC_WEIGHT_THREE = "vrc_weight_three"
    VERTEX_DELETION = "vertex_deletion"
    WEIGHT_THREE = "weight_three"
    COVER_MIN_DEGREE = "cover_min_degree"
    COVER_VRC = "cover_vrc"

    @property
    def direction(self) -> str:
        if self in _LOWER:
            return "lower"
        if self is BoundTag.UNIQUE_FUNCTION:
            return "equal"
        return "upper"

    @property
    def conjectural(self) -> bool:
        return self is BoundTag.VERTEX_CONNECTIVITY


_LOWER = {BoundTag.ROMAN_GRAPH, BoundTag.COVER_MIN_DEGREE, BoundTag.COVER_VRC}


@dataclass
class BoundReport:
    tag: BoundTag
    applicable: bool
    bound_value: int | None
    exact_b_r: float | None
    satisfied: bool
    witness_params: dict = field(default_factory=dict)
    reason: str = ""

    def to_json(self) -> dict:
        return {
            "tag": self.tag.value,
            "direction": self.tag.direction,
            "applicable": self.applicable,
            "bound": self.bound_value,
            "exact": _json_value(self.exact_b_r),
            "satisfied": self.satisfied,
            "witness_params": self.witness_params,
            "reason": self.reason,
        }


def _json_value(x):
    if x is None or x == UNBOUNDED:
        return None
    return int(x)


class GraphProfile:
    """Lazily computed exact invariants of one graph, shared by all bounds."""

    def __init__(self, g: Graph):
        self.g = g

    @cached_property
    def degrees(self):
        return gc.structural_metrics(self.g)

    @cached_property
    def connectivity(self):
        return gc.connectivity(self.g)

    @cached_property
    def gamma(self) -> int:
        return gamma(self.g).value

    @cached_property
    def gamma_r(self) -> int:
        return gamma_r(self.g).value

    @cached_property
    def beta(self) -> int:
        return beta(self.g).value

    @cached_property
    def b_r(self) -> BondageResult:
        return bondage_r(self.g, k_max=self.g.edge_count)

    @cached_property
    def b(self) -> BondageResult:
        return bondage(self.g, k_max=self.g.edge_count)

    @cached_property
    def optimal_count(self) -> int:
        return count_optimal_roman_functions(self.g, cap=2)[0]

    @cached_property
    def deleted_gamma_r(self) -> list[int]:
        return vertex_deleted_values(self.g, True)

    @cached_property
    def is_vrc(self) -> bool:
        return self.gamma_r != self.g.n and all(v < self.gamma_r for v in self.deleted_gamma_r)

    @property
    def connected(self) -> bool:
        return self.connectivity.components == 1 and self.g.n > 0


def _profile(g) -> GraphProfile:
    return g if isinstance(g, GraphProfile) else GraphProfile(g)


def _na(tag: BoundTag, reason: str, exact=None) -> BoundReport:
    return BoundReport(tag, False, None, exact, True, {}, reason)


def _judge(tag: BoundTag, bound: int, exact: float, params: dict | None = None) -> BoundReport:
    params = params or {}
    if tag.direction == "lower":
        return BoundReport(tag, True, bound, exact, exact >= bound, params)
    if exact == UNBOUNDED:
        return BoundReport(tag, False, bound, exact, True, params, "b_R is unbounded")
    if tag.direction == "equal":
        return BoundReport(tag, True, bound, exact, exact == bound, params)
    return BoundReport(tag, True, bound, exact, exact <= bound, params)


# --- individual bounds --------------------------------------------------------------

def path_triples(g: Graph) -> Iterator[tuple[int, int, int]]:
    """Paths ``(x, y, z)`` of length 2 with ``x < z``."""
    for y in range(g.n):
        for x, z in combinations(g.neighbors(y), 2):
            yield x, y, z


def triple_terms(g: Graph, x: int, y: int, z: int) -> tuple[int, int, int]:
    """``(degree sum, |N(y) & N({x,z})|, |N(x) & N(z)|)``; ``N({x,z})`` excludes ``x`` and ``z``."""
    nxz = (g.adj[x] | g.adj[z]) & ~((1 << x) | (1 << z))
    return (g.degree(x) + g.degree(y) + g.degree(z),
            (g.adj[y] & nxz).bit_count(),
            (g.adj[x] & g.adj[z]).bit_count())


def bound_path_triple(g) -> list[BoundReport]:
    p = _profile(g)
    g = p.g
    best1 = best2 = None
    for x, y, z in path_triples(g):
        deg_sum, common_y, common_xz = triple_terms(g, x, y, z)
        v1 = deg_sum - common_y - 3
        v2 = deg_sum - common_y - common_xz - 1
        if best1 is None or v1 < best1[0]:
            best1 = (v1, (x, y, z))
        if best2 is None or v2 < best2[0]:
            best2 = (v2, (x, y, z))
    tags = (BoundTag.PATH_TRIPLE, BoundTag.PATH_TRIPLE_COMMON, BoundTag.PATH_TRIPLE_MIN)
    if best1 is None:
        return [_na(t, "no path of length 2") for t in tags]
    exact = p.b_r.value
    best_min = min(best1, best2)
    return [_judge(t, v, exact, {"path": list(path)}) for t, (v, path) in zip(tags, (best1, best2, best_min))]


def bound_degree_diameter(g) -> BoundReport:
    p = _profile(g)
    tag = BoundTag.DEGREE_DIAMETER
    diam = p.connectivity.diameter
    if diam == math.inf:
        return _na(tag, "disconnected: diameter undefined")
    if diam < 2:
        return _na(tag, f"diameter {diam} < 2")
    d = p.degrees
    return _judge(tag, 2 * d.max_degree + d.min_degree - 3, p.b_r.value, {"diameter": diam})


def bound_tree(g) -> BoundReport:
    p = _profile(g)
    tag = BoundTag.TREE_MAX_DEGREE
    if p.g.n < 3 or not gc.is_tree(p.g):
        return _na(tag, "not a tree of order >= 3")
    return _judge(tag, p.degrees.max_degree, p.b_r.value)


def bound_gamma_plus_one(g) -> BoundReport:
    p = _profile(g)
    tag = BoundTag.GAMMA_PLUS_ONE
    if not p.connected or p.g.n < 3:
        return _na(tag, "needs a connected graph of order >= 3")
    if p.gamma_r != p.gamma + 1:
        return _na(tag, f"gamma_R={p.gamma_r} != gamma+1={p.gamma + 1}")
    b = p.b.value
    n_delta = p.degrees.n_delta
    return _judge(tag, int(min(b, n_delta)), p.b_r.value, {"b": _json_value(b), "n_delta": n_delta})


def bound_roman_graph(g) -> BoundReport:
    p = _profile(g)
    tag = BoundTag.ROMAN_GRAPH
    if p.g.is_empty():
        return _na(tag, "graph has no edges")
    if p.gamma_r != 2 * p.gamma:
        return _na(tag, f"not Roman: gamma_R={p.gamma_r}, gamma={p.gamma}")
    return _judge(tag, int(p.b.value), p.b_r.value)


def bound_weight_degree(g) -> BoundReport:
    p = _profile(g)
    tag = BoundTag.WEIGHT_DEGREE
    if p.g.is_empty():
        return _na(tag, "graph has no edges")
    if p.gamma_r < 3:
        return _na(tag, f"gamma_R={p.gamma_r} < 3")
    return _judge(tag, (p.gamma_r - 2) * p.degrees.max_degree + 1, p.b_r.value)


def _connected_order3(p: GraphProfile, tag: BoundTag) -> BoundReport | None:
    if not p.connected or p.g.n < 3:
        return _na(tag, "needs a connected graph of order >= 3")
    return None


def bound_edge_connectivity(g) -> BoundReport:
    p = _profile(g)
    tag = BoundTag.EDGE_CONNECTIVITY
    return _connected_order3(p, tag) or _judge(
        tag, 2 * p.degrees.max_degree + p.connectivity.lam - 3, p.b_r.value, {"lambda": p.connectivity.lam})


def check_conjecture(g) -> BoundReport:
    """``b_R <= 2*Delta + kappa - 3``; an unsatisfied report is a counterexample."""
    p = _profile(g)
    tag = BoundTag.VERTEX_CONNECTIVITY
    return _connected_order3(p, tag) or _judge(
        tag, 2 * p.degrees.max_degree + p.connectivity.kappa - 3, p.b_r.value, {"kappa": p.connectivity.kappa})


def bound_unique_function(g) -> BoundReport:
    p = _profile(g)
    tag = BoundTag.UNIQUE_FUNCTION
    if p.g.is_empty():
        return _na(tag, "graph has no edges")
    if p.optimal_count != 1:
        return _na(tag, f"{p.optimal_count if p.optimal_count < 2 else '>= 2'} minimum Roman functions")
    return _judge(tag, 1, p.b_r.value)


def bound_vrc3(g) -> BoundReport:
    p = _profile(g)
    tag = BoundTag.VRC_WEIGHT_THREE
    if p.gamma_r != 3:
        return _na(tag, f"gamma_R={p.gamma_r} != 3")
    if not p.is_vrc:
        return _na(tag, "not vertex Roman domination-critical")
    return _judge(tag, p.degrees.max_degree + 1, p.b_r.value)


def bound_vertex_deletion(g) -> list[BoundReport]:
    """Upper bound ``d(u)`` for any ``u`` with ``gamma_R(G-u) >= gamma_R(G)``, and ``Delta + 1`` when ``gamma_R = 3 != n``."""
    p = _profile(g)
    out = []
    tag = BoundTag.VERTEX_DELETION
    qualifying = [u for u, v in enumerate(p.deleted_gamma_r) if v >= p.gamma_r] if p.g.n else []
    if not qualifying:
        out.append(_na(tag, "no vertex u with gamma_R(G-u) >= gamma_R(G)"))
    else:
        u = min(qualifying, key=lambda x: (p.g.degree(x), x))
        out.append(_judge(tag, p.g.degree(u), p.b_r.value, {"vertex": u, "qualifying": qualifying}))
    tag = BoundTag.WEIGHT_THREE
    if p.gamma_r != 3 or p.g.n == 3:
        out.append(_na(tag, f"needs gamma_R = 3 != n (gamma_R={p.gamma_r}, n={p.g.n})"))
    else:
        out.append(_judge(tag, p.degrees.max_degree + 1, p.b_r.value))
    return out


def bound_beta(g) -> list[BoundReport]:
    """Lower bounds ``delta`` and, for vrc-graphs, ``delta + 1`` when ``gamma_R = 2*beta``."""
    p = _profile(g)
    tags = (BoundTag.COVER_MIN_DEGREE, BoundTag.COVER_VRC)
    if p.g.is_empty():
        return [_na(t, "graph has no edges") for t in tags]
    if p.gamma_r != 2 * p.beta:
        return [_na(t, f"gamma_R={p.gamma_r} != 2*beta={2 * p.beta}") for t in tags]
    delta = p.degrees.min_degree
    out = [_judge(tags[0], delta, p.b_r.value)]
    if p.is_vrc:
        out.append(_judge(tags[1], delta + 1, p.b_r.value))
    else:
        out.append(_na(tags[1], "not vertex Roman domination-critical"))
    return out


def evaluate_all_bounds(g) -> list[BoundReport]:
    p = _profile(g)
    reports = bound_path_triple(p)
    reports += [bound_degree_diameter(p), bound_tree(p), bound_gamma_plus_one(p), bound_roman_graph(p),
                bound_weight_degree(p), bound_edge_connectivity(p), check_conjecture(p),
                bound_unique_function(p), bound_vrc3(p)]
    reports += bound_vertex_deletion(p)
    reports += bound_beta(p)
    return reports


# --- corpora and mining ---------------------------------------------------------------

def family_corpus(max_n: int, min_n: int = 1) -> list[tuple[str, Graph]]:
    """Every generator instance with ``min_n <= n <= max_n``, labelled ``name:params``."""
    out: list[tuple[str, Graph]] = []

    def add(label, g):
        if min_n <= g.n <= max_n:
            out.append((label, g))

    for n in range(1, max_n + 1):
        add(f"path:{n}", gc.path(n))
        add(f"complete:{n}", gc.complete(n))
        add(f"star:{n}", gc.star(n))
        add(f"empty:{n}", gc.empty(n))
        if n >= 3:
            add(f"cycle:{n}", gc.cycle(n))
        if 2 * n <= max_n:
            add(f"grid2xn:{n}", gc.grid2xn(n))
        if n >= 4 and n % 2 == 0:
            add(f"complete_minus_pm:{n}", gc.complete_minus_pm(n))
    for parts in _partitions_with_two_parts(max_n):
        add("multipartite:" + ",".join(map(str, parts)), gc.multipartite(parts))
    for lengths in _cycle_lengths(max_n):
        add("complement_of_cycles:" + ",".join(map(str, lengths)), gc.complement_of_cycles(lengths))
    small = [("path", gc.path, 2), ("cycle", gc.cycle, 3), ("complete", gc.complete, 2)]
    for (n1, f1, lo1), (n2, f2, lo2) in combinations(small + [small[0]], 2):
        for a in range(lo1, max_n + 1):
            for b in range(lo2, max_n // a + 1):
                if (n1, n2) == ("path", "path") and min(a, b) == 2:
                    continue  # already a grid2xn
                add(f"product({n1}:{a},{n2}:{b})", gc.product(f1(a), f2(b)))
    seen, unique = set(), []
    for label, g in out:
        if label not in seen:
            seen.add(label)
            unique.append((label, g))
    return unique


def _partitions_with_two_parts(max_n: int) -> Iterator[tuple[int, ...]]:
    def parts(total, smallest):
        if total == 0:
            yield ()
            return
        for first in range(smallest, total + 1):
            for rest in parts(total - first, first):
                yield (first,) + rest

    for total in range(2, max_n + 1):
        for p in parts(total, 1):
            if len(p) >= 2:
                yield p


def _cycle_lengths(max_n: int) -> Iterator[tuple[int, ...]]:
    for p in _partitions_with_two_parts(max_n):
        if min(p) >= 3:
            yield p
    for n in range(3, max_n + 1):
        yield (n,)


def random_corpus(count: int, n_min: int, n_max: int, p: float | tuple[float, float], seed: int,
                  connected: bool = True) -> list[tuple[str, Graph]]:
    """``count`` seeded random graphs; orders cycle through ``n_min..n_max``.

    ``p`` may be a fixed probability or a ``(low, high)`` range drawn per graph.
    """
    import numpy as np

    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        n = n_min + i % (n_max - n_min + 1)
        prob = float(rng.uniform(*p)) if isinstance(p, tuple) else p
        sub = int(rng.integers(0, 2**63 - 1))
        g = gc.random_connected_graph(n, prob, sub) if connected else gc.random_graph(n, prob, sub)
        out.append((f"random:{seed}:{i}", g))
    return out


@dataclass
class GraphOutcome:
    label: str
    graph: Graph
    reports: list[BoundReport]
    b_r: float | None
    max_degree: int
    gamma_r: int | None
    error: str | None = None


def _evaluate(item: tuple[str, Graph]) -> GraphOutcome:
    label, g = item
    p = GraphProfile(g)
    try:
        reports = evaluate_all_bounds(p)
        return GraphOutcome(label, g, reports, p.b_r.value, p.degrees.max_degree, p.gamma_r)
    except BudgetExceeded as exc:
        return GraphOutcome(label, g, [], None, p.degrees.max_degree, None, str(exc))


@dataclass
class MiningSummary:
    graphs: int = 0
    violations: list[dict] = field(default_factory=list)
    findings: list[dict] = field(default_factory=list)
    coverage: dict[str, int] = field(default_factory=dict)
    tight: dict[str, str] = field(default_factory=dict)
    errors: list[dict] = field(default_factory=list)
    unique_function_checked: int = 0
    problem_max_gap: int | None = None
    problem_witness: str | None = None

    def to_json(self) -> dict:
        return {
            "graphs": self.graphs,
            "violations": self.violations,
            "findings": self.findings,
            "coverage": self.coverage,
            "tight": self.tight,
            "errors": self.errors,
            "problem": {"max_b_r_minus_delta": self.problem_max_gap, "witness": self.problem_witness},
        }


def _log_record(kind: str, report: BoundReport, outcome: GraphOutcome) -> dict:
    return {
        "kind": kind,
        "tag": report.tag.value,
        "label": outcome.label,
        "n": outcome.graph.n,
        "graph": [list(e) for e in outcome.graph.edges()],
        "bound": report.bound_value,
        "exact": _json_value(report.exact_b_r),
    }


def mine_counterexamples(corpus: Iterable[tuple[str, Graph]], log_path=None, jobs: int = 1) -> MiningSummary:
    """Evaluate every bound on every graph; violations and conjecture findings go to a JSON-lines log.

    Results are processed in corpus order regardless of ``jobs``.
    """
    summary = MiningSummary(coverage={t.value: 0 for t in BoundTag})
    corpus = list(corpus)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_evaluate, corpus, chunksize=8))
    else:
        outcomes = map(_evaluate, corpus)
    log = open(log_path, "a", encoding="utf-8") if log_path else None
    try:
        for outcome in outcomes:
            summary.graphs += 1
            if outcome.error:
                summary.errors.append({"label": outcome.label, "error": outcome.error})
                continue
            for r in outcome.reports:
                if not r.applicable:
                    continue
                summary.coverage[r.tag.value] += 1
                if r.tag is BoundTag.UNIQUE_FUNCTION:
                    summary.unique_function_checked += 1
                if r.bound_value == r.exact_b_r and r.tag.value not in summary.tight:
                    summary.tight[r.tag.value] = outcome.label
                if not r.satisfied:
                    kind = "finding" if r.tag.conjectural else "violation"
                    record = _log_record(kind, r, outcome)
                    (summary.findings if r.tag.conjectural else summary.violations).append(record)
                    if log:
                        log.write(json.dumps(record, sort_keys=True) + "\n")
            if outcome.gamma_r is not None and outcome.gamma_r != outcome.graph.n and outcome.b_r != UNBOUNDED:
                gap = int(outcome.b_r) - outcome.max_degree
                if summary.problem_max_gap is None or gap > summary.problem_max_gap:
                    summary.problem_max_gap = gap
                    summary.problem_witness = outcome.label
    finally:
        if log:
            log.close()
    return summary
