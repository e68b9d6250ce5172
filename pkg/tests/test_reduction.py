import json

import pytest

from romanbond import graph as gc
from romanbond.errors import Not3Sat, OracleTooLarge, ParseError, ReductionInvariantViolated
from romanbond.reduction import (
    EXAMPLE_TWOS, EXAMPLE_FORMULA, GADGET_EDGES, CnfFormula, all_small_formulas, build_reduction,
    expected_bipartition, extract_assignment, parse_dimacs_cnf, random_formula, reduction_gamma_r,
    sat_bruteforce, upper_bound_function, verify_claims,
)
from romanbond.roman import RomanFunction, gamma_r

UNSAT1 = CnfFormula(1, ((1, 1, 1), (-1, -1, -1)))


def test_parse_examples():
    f = parse_dimacs_cnf("p cnf 1 1\n1 1 1 0")
    assert f.num_vars == 1 and f.clauses == ((1, 1, 1),)
    f = parse_dimacs_cnf("c tautology\np cnf 2 1\n1 -2 2 0\n")
    assert f.clauses == ((1, -2, 2),)
    with pytest.raises(Not3Sat):
        parse_dimacs_cnf("p cnf 2 1\n1 -2 0")


def test_parse_multiline_clause_and_terminator():
    f = parse_dimacs_cnf("p cnf 3 2\n1 2\n3 0 -1 -2 -3 0\n%\n0\n")
    assert f.clauses == ((1, 2, 3), (-1, -2, -3))


@pytest.mark.parametrize("text, line", [
    ("1 2 3 0\n", 1),
    ("p cnf 2 1\n1 x 2 0\n", 2),
    ("p cnf 2 2\n1 2 -1 0\n", None),
    ("p cnf 2 1\n1 2 3 0\n", 2),
])
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_dimacs_cnf(text)
    if line is not None:
        assert info.value.line == line


def test_dimacs_round_trip():
    assert parse_dimacs_cnf(EXAMPLE_FORMULA.to_dimacs()) == EXAMPLE_FORMULA


def test_sat_bruteforce():
    assert sat_bruteforce(CnfFormula(1, ((1, 1, 1),))) == {1: True}
    assert sat_bruteforce(UNSAT1) is None
    t = sat_bruteforce(EXAMPLE_FORMULA)
    assert EXAMPLE_FORMULA.satisfied_by(t)
    assert EXAMPLE_FORMULA.satisfied_by({1: False, 2: True, 3: False, 4: True})
    with pytest.raises(OracleTooLarge):
        sat_bruteforce(CnfFormula(21, ((1, 2, 3),)))


def test_example_instance_construction():
    red = build_reduction(EXAMPLE_FORMULA)
    assert (red.graph.n, red.graph.edge_count) == (38, 65)
    col = gc.is_bipartite(red.graph)
    assert col
    expected = expected_bipartition(red)
    assert all((col.coloring[v] == col.coloring[0]) == (expected[v] == expected[0]) for v in range(red.graph.n))


def test_degenerate_clause_collapses_edges():
    red = build_reduction(CnfFormula(1, ((1, 1, 1),)))
    assert (red.graph.n, red.graph.edge_count) == (12, 17)


def test_gadget_structure():
    f = random_formula(3, 4, seed=5)
    red = build_reduction(f)
    n, m = 3, 4
    assert red.graph.n == 8 * n + m + 3 and red.target == 4 * n + 2
    for i in range(1, n + 1):
        block = [red.vertex(f"{r}({i})") for r in ("u", "ubar", "v", "vprime", "x", "y", "z", "w")]
        sub = gc.induced_subgraph(red.graph, block)
        assert sub.edge_count == len(GADGET_EDGES) == 12
        inner = gc.induced_subgraph(red.graph, block[2:])
        assert gc.structural_metrics(inner).max_degree == inner.n - 3
    for j, clause in enumerate(f.clauses, 1):
        c = red.vertex(f"c({j})")
        expected = {red.literal_vertex(l) for l in clause} | {red.vertex("s1"), red.vertex("s3")}
        assert set(red.graph.neighbors(c)) == expected
    bare = build_reduction(f, include_path=False)
    assert bare.graph.n == 8 * n + m and bare.target == 4 * n


def test_role_map_round_trip():
    red = build_reduction(EXAMPLE_FORMULA)
    data = json.loads(red.role_map_json())
    assert {int(k): v for k, v in data.items()} == red.role_map()
    assert data["0"] == "u(1)" and data[str(red.graph.n - 1)] == "s3"


def test_upper_bound_function():
    for f in (EXAMPLE_FORMULA, UNSAT1):
        red = build_reduction(f)
        ub = upper_bound_function(red)
        assert ub.is_valid(red.graph) and ub.weight == 4 * f.num_vars + 3


def test_example_instance_twos():
    red = build_reduction(EXAMPLE_FORMULA)
    bold = red.function_from_roles(EXAMPLE_TWOS)
    assert bold.is_valid(red.graph) and bold.weight == 18
    t = extract_assignment(red, bold)
    assert EXAMPLE_FORMULA.satisfied_by(t)
    assert t == {1: True, 2: True, 3: False, 4: True}


def test_extract_rejects_wrong_weight():
    red = build_reduction(EXAMPLE_FORMULA)
    with pytest.raises(ValueError):
        extract_assignment(red, upper_bound_function(red))
    with pytest.raises(ValueError):
        extract_assignment(red, RomanFunction(red.graph.n, frozenset(), frozenset()))


def test_extract_flags_bad_assignment():
    # a floor-weight function of one formula, read against a formula it does not satisfy
    f = CnfFormula(1, ((-1, -1, -1),))
    red = build_reduction(f)
    value, g = reduction_gamma_r(red)
    assert value == 6
    t = extract_assignment(red, g)
    assert t == {1: False}
    liar = CnfFormula(1, ((1, 1, 1),))
    fake = type(red)(liar, red.graph, red.roles, red.include_path, red.target, red.index)
    with pytest.raises(ReductionInvariantViolated):
        extract_assignment(fake, g)


def test_unsat_instance():
    rep = verify_claims(build_reduction(UNSAT1))
    assert rep.gamma_r == 7 and not rep.satisfiable and rep.bondage_one is False and rep.passed


def test_satisfiable_two_variable_instance():
    f = CnfFormula(2, ((1, 2, 2), (-1, 2, -2)))
    rep = verify_claims(build_reduction(f))
    assert rep.gamma_r == 10 and rep.satisfiable and rep.bondage_one and rep.passed
    assert f.satisfied_by(rep.assignment)


def test_no_path_variant():
    rep = verify_claims(build_reduction(UNSAT1, include_path=False))
    assert rep.gamma_r > 4 and rep.passed
    rep = verify_claims(build_reduction(CnfFormula(1, ((1, -1, 1),)), include_path=False))
    assert rep.gamma_r == 4 and rep.passed


def test_decision_value_matches_full_solve():
    for f in all_small_formulas(1, 2):
        for path in (True, False):
            red = build_reduction(f, include_path=path)
            assert reduction_gamma_r(red)[0] == gamma_r(red.graph).value


def test_small_formula_enumeration():
    fs = all_small_formulas(2, 2)
    assert len(fs) == 4 + 10 + 20 + 210
    assert len(set(fs)) == len(fs)


def test_verify_reports_failures_without_raising():
    red = build_reduction(UNSAT1)
    rep = verify_claims(red, sat=True, raise_on_failure=False)
    assert not rep.passed and not rep.checks["floor_iff_sat"]
    with pytest.raises(ReductionInvariantViolated) as info:
        verify_claims(red, sat=True)
    assert info.value.claim == "floor_iff_sat"


def test_random_formula_deterministic():
    assert random_formula(3, 3, 1) == random_formula(3, 3, 1)
