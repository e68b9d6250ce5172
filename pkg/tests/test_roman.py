import os
import subprocess
import sys
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from romanbond import graph as gc
from romanbond.errors import BudgetExceeded, OracleTooLarge
from romanbond.roman import (
    RomanFunction, beta, classify, count_optimal_roman_functions, gamma, gamma_bruteforce, gamma_r,
    gamma_r_at_most, gamma_r_bruteforce, gamma_r_subset_identity, is_vrc_graph,
)

from test_graph import graphs


def roman_oracle_python(g):
    """Plain 3^n loop, independent of the numpy oracle."""
    best = None
    for f in product((0, 1, 2), repeat=g.n):
        if all(f[v] or any(f[u] == 2 for u in g.neighbors(v)) for v in range(g.n)):
            w = sum(f)
            best = w if best is None else min(best, w)
    return best


@pytest.mark.parametrize("g, value", [
    (gc.path(7), 5),
    (gc.grid2xn(4), 5),
    (gc.multipartite([3, 3]), 4),
    (gc.empty(3), 3),
    (gc.complement_of_cycles([6]), 4),
    (gc.complete(1), 1),
    (gc.cycle(4), 3),
    (gc.complete(2), 2),
])
def test_gamma_r_examples(g, value):
    res = gamma_r(g)
    assert res.value == value
    assert res.witness.is_valid(g) and res.witness.weight == value


def test_empty_graph_witness_is_all_ones():
    res = gamma_r(gc.empty(3))
    assert res.witness.v1 == frozenset({0, 1, 2}) and not res.witness.v2


def test_zero_vertices():
    assert gamma_r(gc.make_graph(0)).value == 0
    assert gamma(gc.make_graph(0)).value == 0


@pytest.mark.parametrize("g, value", [(gc.cycle(5), 2), (gc.complete(6), 1), (gc.empty(4), 4)])
def test_gamma_examples(g, value):
    res = gamma(g)
    assert res.value == value and len(res.witness) == value
    assert g.closed_neighborhood(res.witness) == g.full_mask


@pytest.mark.parametrize("g, value", [(gc.path(3), 1), (gc.cycle(5), 3), (gc.complete(4), 3)])
def test_beta_examples(g, value):
    res = beta(g)
    assert res.value == value
    assert all(u in res.witness or v in res.witness for u, v in g.edges())


def test_oracles_agree_with_plain_loop():
    for g in [gc.path(4), gc.cycle(5), gc.star(5), gc.complete(3), gc.empty(2), gc.grid2xn(3)]:
        expected = roman_oracle_python(g)
        assert gamma_r_bruteforce(g) == expected
        assert gamma_r_subset_identity(g) == expected


def test_oracle_size_limits():
    with pytest.raises(OracleTooLarge):
        gamma_r_bruteforce(gc.path(13))
    with pytest.raises(OracleTooLarge):
        gamma_r_subset_identity(gc.path(21))


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=9))
def test_solvers_match_oracles(g):
    r = gamma_r(g)
    assert r.value == gamma_r_bruteforce(g) == gamma_r_subset_identity(g)
    assert r.witness.is_valid(g) and r.witness.weight == r.value
    d = gamma(g)
    assert d.value == gamma_bruteforce(g)
    assert d.value <= r.value <= 2 * d.value
    b = beta(g)
    assert all(u in b.witness or v in b.witness for u, v in g.edges())
    assert len(b.witness) == b.value


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=9), st.integers(0, 20))
def test_decision_mode(g, w):
    exact = gamma_r(g).value
    f = gamma_r_at_most(g, w)
    if w >= exact:
        assert f is not None and f.is_valid(g) and f.weight <= w
    else:
        assert f is None


def test_budget_exceeded_carries_bounds():
    g = gc.grid2xn(20)
    with pytest.raises(BudgetExceeded) as info:
        gamma_r(g, budget=2)
    assert info.value.lower <= 21 <= info.value.upper


def test_roman_function_validation():
    g = gc.path(3)
    assert RomanFunction.from_values([0, 2, 0]).is_valid(g)
    assert not RomanFunction.from_values([0, 1, 0]).is_valid(g)
    f = RomanFunction.from_values([1, 0, 2])
    assert f.weight == 3 and f(0) == 1 and f.v0 == frozenset({1}) and f.values() == [1, 0, 2]


@pytest.mark.parametrize("g, count", [(gc.path(3), 1), (gc.cycle(3), 3), (gc.path(2), 3)])
def test_count_optimal_functions(g, count):
    c, fs = count_optimal_roman_functions(g)
    assert c == count
    assert all(f.is_valid(g) and f.weight == gamma_r(g).value for f in fs)
    # canonical order: lexicographically least V2 first
    keys = [sorted(f.v2) for f in fs]
    assert keys == sorted(keys)


def test_count_matches_enumeration():
    for g in [gc.cycle(6), gc.star(5), gc.grid2xn(3), gc.multipartite([2, 3])]:
        value = gamma_r(g).value
        brute = 0
        for mask in range(1 << g.n):
            s = [v for v in range(g.n) if mask >> v & 1]
            cover = g.closed_neighborhood(s)
            if 2 * len(s) + g.n - cover.bit_count() == value:
                brute += 1
        assert count_optimal_roman_functions(g, cap=10**6)[0] == brute


def test_classify_examples():
    assert classify(gc.cycle(7)).is_vrc_graph
    c5 = classify(gc.cycle(5))
    assert c5.is_roman and (c5.gamma, c5.gamma_r) == (2, 4)
    cm = classify(gc.complete_minus_pm(4))
    assert cm.is_vc_graph and cm.gamma == 2


def test_vrc_cycles():
    for k in range(1, 4):
        assert is_vrc_graph(gc.cycle(3 * k + 1))
        assert is_vrc_graph(gc.cycle(3 * k + 2))


@pytest.mark.parametrize("n", range(2, 9))
def test_grid_corner_can_take_two(n):
    g = gc.grid2xn(n)
    assert gamma_r(g, forced_v2=[0]).value == gamma_r(g).value


def test_fallback_mode_matches():
    code = ("from romanbond import graph as gc, _accel; from romanbond.roman import gamma_r; "
            "assert not _accel.USE_NUMBA; print(gamma_r(gc.grid2xn(6)).value, gamma_r(gc.cycle(11)).value)")
    env = dict(os.environ, ROMANBOND_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["7", "8"]

