"""Closed-form Roman domination and Roman bondage numbers for named families."""
from __future__ import annotations

from typing import NamedTuple, Sequence

from .errors import NotApplicable


class FormulaResult(NamedTuple):
    family: str
    params: tuple[int, ...]
    value: int
    source: str


def ceil_div(a: int, b: int) -> int:
    return (a + b - 1) // b


def _one(params: Sequence[int], family: str) -> int:
    if len(params) != 1:
        raise NotApplicable(f"{family} takes one parameter, got {tuple(params)}")
    return int(params[0])


def gamma_r_formula(family: str, params: Sequence[int]) -> FormulaResult:
    """Roman domination number of ``family`` with the given parameters.

    Families: ``path``, ``cycle`` (``ceil(2n/3)``), ``grid2xn`` (``n + 1``),
    ``multipartite`` (2, 3 or 4 by the smallest part), ``dominant_vertex``
    (any order-``n`` graph with a vertex of degree ``n - 1``: 2) and
    ``n3_regular`` (any ``(n-3)``-regular graph, ``n >= 4``: 4).
    """
    params = tuple(int(p) for p in params)
    if family in ("path", "cycle"):
        n = _one(params, family)
        if n < (3 if family == "cycle" else 1):
            raise NotApplicable(f"{family} with n={n}")
        return FormulaResult(family, params, ceil_div(2 * n, 3), "path_cycle")
    if family == "grid2xn":
        n = _one(params, family)
        if n < 1:
            raise NotApplicable(f"grid2xn with n={n}")
        return FormulaResult(family, params, n + 1, "grid")
    if family == "multipartite":
        if len(params) < 2 or min(params) < 1:
            raise NotApplicable("multipartite needs at least two parts of size >= 1")
        m1 = min(params)
        return FormulaResult(family, params, 2 if m1 == 1 else 3 if m1 == 2 else 4, "multipartite")
    if family == "dominant_vertex":
        n = _one(params, family)
        if n < 2:
            raise NotApplicable("dominant_vertex needs n >= 2")
        return FormulaResult(family, params, 2, "dominant_vertex")
    if family == "n3_regular":
        n = _one(params, family)
        if n < 4:
            raise NotApplicable("n3_regular needs n >= 4")
        return FormulaResult(family, params, 4, "n3_regular")
    raise NotApplicable(f"no Roman domination formula for {family!r}")


def bondage_r_formula(family: str, params: Sequence[int]) -> FormulaResult:
    """Roman bondage number of ``family``.

    ``path`` (1 if ``n = 0, 1 mod 3`` else 2), ``cycle`` (2 or 3 by the same
    residues), ``complete`` (``ceil(n/2)``), ``grid2xn`` (2) and
    ``dominant_vertices`` with params ``(n, t)`` (``ceil(t/2)``). Orders below
    3 (below 2 for grids) are rejected.
    """
    params = tuple(int(p) for p in params)
    if family in ("path", "cycle"):
        n = _one(params, family)
        if n < 3:
            raise NotApplicable(f"{family} bondage formula needs n >= 3, got {n}")
        low = n % 3 in (0, 1)
        if family == "path":
            return FormulaResult(family, params, 1 if low else 2, "PathBondage")
        return FormulaResult(family, params, 2 if low else 3, "CycleBondage")
    if family == "complete":
        n = _one(params, family)
        if n < 3:
            raise NotApplicable(f"complete bondage formula needs n >= 3, got {n}")
        return FormulaResult(family, params, ceil_div(n, 2), "CompleteBondage")
    if family == "grid2xn":
        n = _one(params, family)
        if n < 2:
            raise NotApplicable(f"grid bondage formula needs n >= 2, got {n}")
        return FormulaResult(family, params, 2, "GridBondage")
    if family == "dominant_vertices":
        if len(params) != 2:
            raise NotApplicable("dominant_vertices takes (n, t)")
        n, t = params
        if n < 3 or t < 1 or t > n:
            raise NotApplicable(f"dominant_vertices needs n >= 3 and 1 <= t <= n, got {params}")
        return FormulaResult(family, params, ceil_div(t, 2), "DominantVertices")
    raise NotApplicable(f"no Roman bondage formula for {family!r}")


GAMMA_R_FAMILIES = ("path", "cycle", "grid2xn", "multipartite", "dominant_vertex", "n3_regular")
BONDAGE_R_FAMILIES = ("path", "cycle", "complete", "grid2xn", "dominant_vertices")
