"""3-SAT to Roman bondage: gadget construction and empirical claim checks.

Every variable ``u_i`` becomes an 8-vertex, 12-edge gadget ``H_i``; every
clause becomes a vertex ``c_j`` joined to its three literal vertices; the
bondage variant adds a path ``s1 s2 s3`` with ``s1`` and ``s3`` joined to
every clause vertex. The formula is satisfiable iff the Roman domination
number hits its floor (``4n + 2`` with the path, ``4n`` without), and iff the
Roman bondage number of the path variant is 1.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import Not3Sat, OracleTooLarge, ParseError, ReductionInvariantViolated
from .graph import Graph, is_bipartite, make_graph, remove_edges
from .roman import RomanFunction, gamma_r_at_most

GADGET_ROLES = ("u", "ubar", "v", "vprime", "x", "y", "z", "w")
GADGET_EDGES = (
    ("u", "v"), ("u", "z"), ("ubar", "vprime"), ("ubar", "z"),
    ("y", "v"), ("y", "vprime"), ("y", "z"),
    ("w", "v"), ("w", "vprime"), ("w", "z"),
    ("x", "v"), ("x", "vprime"),
)
# the side of the bipartition each role lives on
PART_A = frozenset({"v", "vprime", "z", "c", "s2"})


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for clause in self.clauses:
            if len(clause) != 3:
                raise Not3Sat(f"clause {clause} has {len(clause)} literals")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range for {self.num_vars} variables")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def satisfied_by(self, assignment: dict[int, bool]) -> bool:
        return all(any(assignment[abs(l)] == (l > 0) for l in clause) for clause in self.clauses)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {self.num_clauses}"]
        lines += [" ".join(map(str, clause)) + " 0" for clause in self.clauses]
        return "\n".join(lines) + "\n"


def parse_dimacs_cnf(text: str) -> CnfFormula:
    """Parse DIMACS CNF, insisting on exactly three literals per clause."""
    header = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    start_line = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise ParseError("duplicate header", lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"expected 'p cnf <vars> <clauses>', got {line!r}", lineno)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError(f"non-integer header field in {line!r}", lineno) from None
            continue
        if header is None:
            raise ParseError("clause before header", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"bad literal {tok!r}", lineno) from None
            if lit == 0:
                if len(current) != 3:
                    raise Not3Sat(f"line {start_line}: clause {current} has {len(current)} literals")
                clauses.append(tuple(current))
                current = []
                continue
            if abs(lit) > header[0]:
                raise ParseError(f"literal {lit} exceeds declared {header[0]} variables", lineno)
            if not current:
                start_line = lineno
            current.append(lit)
    if header is None:
        raise ParseError("missing 'p cnf' header")
    if current:
        raise ParseError("last clause is not terminated by 0", start_line)
    if len(clauses) != header[1]:
        raise ParseError(f"header declares {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], tuple(clauses))


def read_dimacs_cnf(path) -> CnfFormula:
    with open(path, encoding="utf-8") as fh:
        return parse_dimacs_cnf(fh.read())


def sat_bruteforce(formula: CnfFormula, max_vars: int = 20) -> dict[int, bool] | None:
    """First satisfying assignment in lexicographic order (False before True)."""
    n = formula.num_vars
    if n > max_vars:
        raise OracleTooLarge(f"2^{n} assignments refused (limit {max_vars})")
    for values in itertools.product((False, True), repeat=n):
        assignment = {i + 1: values[i] for i in range(n)}
        if formula.satisfied_by(assignment):
            return assignment
    return None


# --- construction ---------------------------------------------------------------------

@dataclass(frozen=True)
class ReductionOutput:
    formula: CnfFormula
    graph: Graph
    roles: tuple[str, ...]
    include_path: bool
    target: int
    index: dict[str, int] = field(compare=False, repr=False)

    def vertex(self, role: str) -> int:
        return self.index[role]

    def role_map(self) -> dict[int, str]:
        return dict(enumerate(self.roles))

    def role_map_json(self) -> str:
        return json.dumps({str(v): r for v, r in enumerate(self.roles)}, indent=1)

    def literal_vertex(self, literal: int) -> int:
        i = abs(literal)
        return self.index[f"u({i})" if literal > 0 else f"ubar({i})"]

    def function_from_roles(self, twos: Iterable[str], ones: Iterable[str] = ()) -> RomanFunction:
        return RomanFunction(self.graph.n, frozenset(self.index[r] for r in twos),
                             frozenset(self.index[r] for r in ones))


def role_kind(role: str) -> str:
    return role.split("(")[0]


def build_reduction(formula: CnfFormula, include_path: bool = True) -> ReductionOutput:
    """Build the gadget graph. Ids: variable blocks (u, ubar, v, vprime, x, y, z, w), clauses, s1 s2 s3."""
    n, m = formula.num_vars, formula.num_clauses
    roles = [f"{r}({i})" for i in range(1, n + 1) for r in GADGET_ROLES]
    roles += [f"c({j})" for j in range(1, m + 1)]
    if include_path:
        roles += ["s1", "s2", "s3"]
    index = {r: k for k, r in enumerate(roles)}

    edges = []
    for i in range(1, n + 1):
        edges += [(index[f"{a}({i})"], index[f"{b}({i})"]) for a, b in GADGET_EDGES]
    for j, clause in enumerate(formula.clauses, 1):
        c = index[f"c({j})"]
        for lit in clause:
            edges.append((c, index[f"u({lit})" if lit > 0 else f"ubar({-lit})"]))
        if include_path:
            edges += [(c, index["s1"]), (c, index["s3"])]
    if include_path:
        edges += [(index["s1"], index["s2"]), (index["s2"], index["s3"])]
    target = 4 * n + 2 if include_path else 4 * n
    return ReductionOutput(formula, make_graph(len(roles), edges), tuple(roles), include_path, target, index)


def upper_bound_function(red: ReductionOutput) -> RomanFunction:
    """Weight ``4n + 3``: 2 on every ``u_i`` and ``v_i'``, 2 on ``s1``, 1 on ``s3``."""
    if not red.include_path:
        raise ValueError("upper_bound_function needs the path variant")
    n = red.formula.num_vars
    twos = [f"u({i})" for i in range(1, n + 1)] + [f"vprime({i})" for i in range(1, n + 1)] + ["s1"]
    return red.function_from_roles(twos, ["s3"])


def expected_bipartition(red: ReductionOutput) -> tuple[int, ...]:
    return tuple(0 if role_kind(r) in PART_A else 1 for r in red.roles)


def extract_assignment(red: ReductionOutput, f: RomanFunction) -> dict[int, bool]:
    """Read a truth assignment off a Roman function of weight ``target``.

    ``u_i`` is false exactly when ``f(ubar_i) = 2``; otherwise true.
    """
    if not f.is_valid(red.graph):
        raise ValueError("not a Roman dominating function of the reduction graph")
    if f.weight != red.target:
        raise ValueError(f"function weight {f.weight} differs from target {red.target}")
    assignment = {}
    for i in range(1, red.formula.num_vars + 1):
        assignment[i] = not f(red.vertex(f"ubar({i})")) == 2 or f(red.vertex(f"u({i})")) == 2
    if not red.formula.satisfied_by(assignment):
        raise ReductionInvariantViolated("assignment", f"extracted assignment {assignment} fails the formula")
    return assignment


# --- claim verification -----------------------------------------------------------------

@dataclass
class ClaimReport:
    gamma_r: int
    satisfiable: bool
    checks: dict[str, bool]
    bondage_one: bool | None = None
    bondage_edge: tuple[int, int] | None = None
    assignment: dict[int, bool] | None = None

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def _fail(claim: str, detail: str):
    raise ReductionInvariantViolated(claim, detail)


def reduction_gamma_r(red: ReductionOutput, budget: int | None = None) -> tuple[int, RomanFunction]:
    """Exact Roman domination number via decisions at ``target - 1``, ``target``, ``target + 1``."""
    low = gamma_r_at_most(red.graph, red.target - 1, budget)
    if low is not None:
        # below the floor: finish by plain descent so the caller sees the true value
        w = low.weight
        while True:
            nxt = gamma_r_at_most(red.graph, w - 1, budget)
            if nxt is None:
                return w, low
            low, w = nxt, nxt.weight
    at = gamma_r_at_most(red.graph, red.target, budget)
    if at is not None:
        return red.target, at
    w = red.target + 1
    while True:
        f = gamma_r_at_most(red.graph, w, budget)
        if f is not None:
            return w, f
        w += 1


def verify_claims(red: ReductionOutput, sat: bool | None = None, budget: int | None = None,
                  raise_on_failure: bool = True) -> ClaimReport:
    """Check the reduction's claims on one instance by exact solves.

    Path variant: the floor ``4n + 2`` holds; ``gamma_R = 4n + 2`` iff
    satisfiable; every single-edge deletion keeps ``gamma_R <= 4n + 3``;
    ``b_R = 1`` iff satisfiable; the extracted assignment satisfies the
    formula at the floor. Path-free variant: the floor ``4n`` holds and is
    attained iff satisfiable.
    """
    from .bondage import is_bondage_r_one

    if sat is None:
        sat = sat_bruteforce(red.formula) is not None
    value, f = reduction_gamma_r(red, budget)
    checks: dict[str, bool] = {}
    report = ClaimReport(value, sat, checks)

    def record(name, ok, detail):
        checks[name] = ok
        if not ok and raise_on_failure:
            _fail(name, detail)

    n = red.formula.num_vars
    record("bipartite", bool(is_bipartite(red.graph)), "reduction graph is not bipartite")
    record("floor", value >= red.target, f"gamma_R={value} below {red.target}")
    record("floor_iff_sat", (value == red.target) == sat, f"gamma_R={value}, satisfiable={sat}")
    if value == red.target:
        try:
            report.assignment = extract_assignment(red, f)
            record("assignment", True, "")
        except ReductionInvariantViolated as exc:
            record("assignment", False, exc.detail)
    if not red.include_path:
        return report

    ub = upper_bound_function(red)
    record("upper_function", ub.is_valid(red.graph) and ub.weight == 4 * n + 3,
           "the 4n+3 reference function is not a valid Roman function")
    record("value_range", value in (4 * n + 2, 4 * n + 3), f"gamma_R={value} outside {{4n+2, 4n+3}}")

    one, edge, deleted = is_bondage_r_one(red.graph, base_value=value, budget=budget, collect=True)
    report.bondage_one = one
    report.bondage_edge = edge
    record("bondage_one_iff_sat", one == sat, f"b_R=1 is {one}, satisfiable={sat}")
    # an edge already certified to keep gamma_R <= value needs no second solve
    bad = []
    for e in red.graph.edges():
        if deleted.get(e) and value <= 4 * n + 3:
            continue
        if gamma_r_at_most(remove_edges(red.graph, [e]), 4 * n + 3, budget) is None:
            bad.append(e)
    record("edge_deletion_cap", not bad, f"gamma_R(G-e) > 4n+3 for edges {bad}")
    return report


# worked instance: 4 variables, 3 clauses, satisfiable, gamma_R = 18 on 38 vertices
EXAMPLE_FORMULA = CnfFormula(4, ((1, 2, -3), (-1, 2, 4), (-2, 3, 4)))
# V2 of one weight-18 Roman function on it (V1 empty)
EXAMPLE_TWOS = ("u(2)", "ubar(3)", "u(4)", "vprime(2)", "v(3)", "vprime(4)", "x(1)", "z(1)", "s2")


def all_small_formulas(max_vars: int = 2, max_clauses: int = 2, min_clauses: int = 1) -> list[CnfFormula]:
    """Every formula over ``n <= max_vars`` variables whose clauses are literal multisets."""
    out = []
    for n in range(1, max_vars + 1):
        lits = [l for i in range(1, n + 1) for l in (i, -i)]
        clauses = list(itertools.combinations_with_replacement(sorted(lits, key=lambda l: (abs(l), l < 0)), 3))
        for m in range(min_clauses, max_clauses + 1):
            for combo in itertools.combinations_with_replacement(clauses, m):
                out.append(CnfFormula(n, tuple(combo)))
    return out


def random_formula(num_vars: int, num_clauses: int, seed: int) -> CnfFormula:
    import numpy as np

    rng = np.random.default_rng(seed)
    clauses = []
    for _ in range(num_clauses):
        vars_ = rng.integers(1, num_vars + 1, size=3)
        signs = rng.integers(0, 2, size=3)
        clauses.append(tuple(int(v) if s else -int(v) for v, s in zip(vars_, signs)))
    return CnfFormula(num_vars, tuple(clauses))
