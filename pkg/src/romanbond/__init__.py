"""Roman domination, Roman bondage, their bounds, and the 3-SAT hardness reduction."""
from .bondage import UNBOUNDED, BondageResult, bondage, bondage_r, is_bondage_r_one
from .bounds import BoundReport, BoundTag, evaluate_all_bounds, mine_counterexamples
from .closed_forms import bondage_r_formula, gamma_r_formula
from .errors import BudgetExceeded, RomanBondError
from .graph import Graph, gen_family, make_graph, parse_graph, read_graph
from .reduction import CnfFormula, build_reduction, parse_dimacs_cnf, verify_claims
from .roman import RomanFunction, SolveResult, beta, gamma, gamma_r, gamma_r_at_most

__all__ = [
    "UNBOUNDED", "BondageResult", "bondage", "bondage_r", "is_bondage_r_one",
    "BoundReport", "BoundTag", "evaluate_all_bounds", "mine_counterexamples",
    "bondage_r_formula", "gamma_r_formula", "BudgetExceeded", "RomanBondError",
    "Graph", "gen_family", "make_graph", "parse_graph", "read_graph",
    "CnfFormula", "build_reduction", "parse_dimacs_cnf", "verify_claims",
    "RomanFunction", "SolveResult", "beta", "gamma", "gamma_r", "gamma_r_at_most",
]
