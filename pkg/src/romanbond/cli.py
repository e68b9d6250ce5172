"""Command-line front end: solvers, formula tables, bound mining and the 3-SAT reduction.

Exit codes: 0 success, 1 bound violation / claim failure / table mismatch,
2 input error, 3 search budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import graph as gc
from .bondage import UNBOUNDED, bondage, bondage_r
from .bounds import BoundTag, family_corpus, mine_counterexamples, random_corpus
from .closed_forms import bondage_r_formula, gamma_r_formula
from .errors import BudgetExceeded, ReductionInvariantViolated, RomanBondError
from .reduction import build_reduction, read_dimacs_cnf, sat_bruteforce, verify_claims, reduction_gamma_r
from .roman import beta, gamma, gamma_r

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def _emit(args, payload: dict, human: list[str], tsv: list[list] | None = None) -> None:
    if args.format == "json":
        print(json.dumps({"schema": SCHEMA_VERSION, "command": args.command, **payload}, sort_keys=True))
    elif args.format == "tsv" and tsv is not None:
        for row in tsv:
            print("\t".join(_cell(c) for c in row))
    else:
        for line in human:
            print(line)


def _cell(x) -> str:
    if x is None:
        return "-"
    if x == UNBOUNDED:
        return "infinity"
    return str(x)


def _num(x):
    """JSON form of a possibly unbounded value."""
    return None if x == UNBOUNDED else x


def _parse_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi) if sep else int(lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"range must look like 3..12, got {text!r}") from None
    if b < a:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(a, b + 1)


def _load_graph(args) -> tuple[str, gc.Graph]:
    if args.graph:
        return args.graph, gc.read_graph(args.graph)
    fam = gc.parse_family(args.family)
    return str(fam), gc.gen_family(fam)


# --- solve ---------------------------------------------------------------------------

def cmd_solve(args) -> int:
    label, g = _load_graph(args)
    t0 = time.perf_counter()
    payload = {"graph": label, "n": g.n, "m": g.edge_count, "which": args.which}
    if args.which in ("bondage", "bondage-r"):
        fn = bondage_r if args.which == "bondage-r" else bondage
        res = fn(g, k_max=args.k_max, node_limit=args.budget or 10**7)
        payload.update(value=_num(res.value), unbounded=res.unbounded,
                       witness=[list(e) for e in res.witness] if res.witness else None,
                       base=res.base_invariant, after_removal=res.removed_invariant)
        witness_text = " ".join(f"{u}-{v}" for u, v in res.witness) if res.witness else "-"
        extra = [f"base value: {res.base_invariant}", f"removed edges: {witness_text}"]
        value = res.value
    else:
        fn = {"gamma": gamma, "gamma-r": gamma_r}.get(args.which)
        res = fn(g, args.budget) if fn else beta(g)
        w = res.witness
        if args.which == "gamma-r":
            wit = {"v2": sorted(w.v2), "v1": sorted(w.v1)}
            extra = [f"V2: {sorted(w.v2)}", f"V1: {sorted(w.v1)}"]
        else:
            wit = sorted(w)
            extra = [f"witness: {wit}"]
        payload.update(value=res.value, unbounded=False, witness=wit, nodes=res.nodes_explored)
        extra.append(f"nodes: {res.nodes_explored}")
        value = res.value
    elapsed = time.perf_counter() - t0
    payload["elapsed"] = round(elapsed, 6)
    human = [f"{args.which}({label}) = {_cell(value)}", *extra, f"time: {elapsed:.3f}s"]
    _emit(args, payload, human, [["graph", "which", "value"], [label, args.which, value]])
    return EXIT_OK


# --- table ---------------------------------------------------------------------------

def _table_graph(family: str, k: int) -> gc.Graph:
    if family == "n3_regular":
        return gc.complement_of_cycles([k])
    if family == "dominant_vertex":
        return gc.star(k)
    return gc.gen_family(gc.Family(family, (k,)))


def cmd_table(args) -> int:
    formula = gamma_r_formula if args.metric == "gamma-r" else bondage_r_formula
    solver = gamma_r if args.metric == "gamma-r" else bondage_r
    rows, mismatches = [], 0
    for k in args.range:
        expected = formula(args.family, (k,)).value
        g = _table_graph(args.family, k)
        if g.n <= args.max_n:
            got = solver(g).value
            status = "MATCH" if got == expected else "MISMATCH"
        else:
            got, status = None, "SKIPPED"
        mismatches += status == "MISMATCH"
        rows.append({"param": k, "n": g.n, "formula": expected, "solver": _num(got) if got is not None else None,
                     "status": status})
    header = ["param", "n", "formula", "solver", "status"]
    lines = [f"{args.metric} on {args.family}", "  ".join(f"{h:>8}" for h in header)]
    lines += ["  ".join(f"{_cell(r[h]):>8}" for h in header) for r in rows]
    lines.append(f"{mismatches} mismatch(es)")
    payload = {"family": args.family, "metric": args.metric, "rows": rows, "mismatches": mismatches}
    _emit(args, payload, lines, [header] + [[r[h] for h in header] for r in rows])
    return EXIT_FAIL if mismatches else EXIT_OK


# --- bounds --------------------------------------------------------------------------

def cmd_bounds(args) -> int:
    corpus = []
    if args.families == "all":
        corpus += family_corpus(args.max_n)
    elif args.families != "none":
        for spec in args.families.split(";"):
            fam = gc.parse_family(spec)
            corpus.append((str(fam), gc.gen_family(fam)))
    if args.random:
        if args.seed is None:
            raise RomanBondError("--random needs an explicit --seed")
        corpus += random_corpus(args.random, args.n_min, args.n_max, args.p, args.seed,
                                connected=not args.allow_disconnected)
    if not corpus:
        raise RomanBondError("empty corpus: give --families or --random")
    if args.log:
        Path(args.log).parent.mkdir(parents=True, exist_ok=True)
    t0 = time.perf_counter()
    s = mine_counterexamples(corpus, log_path=args.log, jobs=args.jobs)
    elapsed = time.perf_counter() - t0
    lines = [f"graphs evaluated: {s.graphs}", f"violations: {len(s.violations)}"]
    for v in s.violations:
        lines.append(f"  VIOLATION {v['tag']} on {v['label']}: bound {v['bound']}, exact {_cell(v['exact'])}")
    if s.findings:
        lines.append(f"FINDING: {len(s.findings)} counterexample(s) to the vertex-connectivity conjecture")
        lines += [f"  {f['label']}: bound {f['bound']}, exact {f['exact']}" for f in s.findings]
    lines.append("coverage (applicable instances per tag):")
    for tag in BoundTag:
        tight = s.tight.get(tag.value)
        lines.append(f"  {tag.value:<22} {tag.direction:<6} {s.coverage[tag.value]:>6}"
                     + (f"  tight on {tight}" if tight else ""))
    lines.append(f"max b_R - Delta (gamma_R != n): {s.problem_max_gap} on {s.problem_witness}")
    if s.errors:
        lines.append(f"budget errors: {len(s.errors)}")
    lines.append(f"time: {elapsed:.2f}s")
    payload = s.to_json()
    payload["elapsed"] = round(elapsed, 3)
    tsv = [["tag", "direction", "applicable", "tight_on"]] + [
        [t.value, t.direction, s.coverage[t.value], s.tight.get(t.value)] for t in BoundTag]
    _emit(args, payload, lines, tsv)
    return EXIT_FAIL if s.violations else EXIT_OK


# --- reduction -----------------------------------------------------------------------

def cmd_reduce(args, verify: bool | None = None) -> int:
    formula = read_dimacs_cnf(args.cnf)
    red = build_reduction(formula, include_path=not args.no_path)
    verify = args.verify if verify is None else verify
    if args.out:
        gc.write_graph(red.graph, args.out, comments=[f"reduction of {Path(args.cnf).name}"])
        Path(args.out).with_suffix(".roles.json").write_text(red.role_map_json() + "\n")
    n = formula.num_vars
    payload = {"cnf": str(args.cnf), "variables": n, "clauses": formula.num_clauses,
               "include_path": red.include_path, "order": red.graph.n, "size": red.graph.edge_count,
               "target": red.target}
    lines = [f"reduction graph: {red.graph.n} vertices, {red.graph.edge_count} edges "
             f"({'with' if red.include_path else 'without'} s1s2s3 path)",
             f"satisfiable iff gamma_R = {red.target}"]
    code = EXIT_OK
    if verify:
        try:
            rep = verify_claims(red, budget=args.budget, raise_on_failure=False)
        except ReductionInvariantViolated as exc:
            rep, code = None, EXIT_FAIL
            lines.append(f"FAIL {exc}")
        if rep is not None:
            payload.update(gamma_r=rep.gamma_r, satisfiable=rep.satisfiable, checks=rep.checks,
                           bondage_one=rep.bondage_one,
                           bondage_edge=list(rep.bondage_edge) if rep.bondage_edge else None,
                           assignment={str(k): v for k, v in rep.assignment.items()} if rep.assignment else None,
                           passed=rep.passed)
            lines.append(f"gamma_R = {rep.gamma_r}, satisfiable = {str(rep.satisfiable).lower()}")
            if rep.bondage_one is not None:
                lines.append(f"b_R = 1: {str(rep.bondage_one).lower()}"
                             + (f" (edge {rep.bondage_edge[0]}-{rep.bondage_edge[1]})" if rep.bondage_edge else ""))
            lines += [f"  {'PASS' if ok else 'FAIL'} {name}" for name, ok in rep.checks.items()]
            lines.append("all claims pass" if rep.passed else "claim failure")
            code = EXIT_OK if rep.passed else EXIT_FAIL
    elif args.solve:
        value, _ = reduction_gamma_r(red, args.budget)
        sat = sat_bruteforce(formula) is not None
        payload.update(gamma_r=value, satisfiable=sat)
        lines.append(f"gamma_R = {value}, satisfiable = {str(sat).lower()}")
    _emit(args, payload, lines)
    return code


def cmd_verify_reduction(args) -> int:
    return cmd_reduce(args, verify=True)


# --- parser --------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("human", "json", "tsv"), default="human")
    p.add_argument("--budget", type=int, default=None, help="search node limit")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="romanbond", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact gamma, gamma_R, beta, b or b_R of one graph")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", help="graph file (p edge n m / e u v)")
    src.add_argument("--family", help="generator such as cycle:5 or multipartite:2,3,3")
    p.add_argument("--which", choices=("gamma", "gamma-r", "beta", "bondage", "bondage-r"), default="gamma-r")
    p.add_argument("--k-max", type=int, default=None, help="largest bondage set size to try")
    _common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("table", help="closed-form values against the exact solver")
    p.add_argument("--family", required=True,
                   choices=("path", "cycle", "complete", "grid2xn", "n3_regular", "dominant_vertex"))
    p.add_argument("--range", required=True, type=_parse_range, help="parameter range a..b")
    p.add_argument("--metric", choices=("gamma-r", "bondage-r"), default="gamma-r")
    p.add_argument("--max-n", type=int, default=24, help="skip the solver above this order")
    _common(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("bounds", help="check every bound on a corpus and mine counterexamples")
    p.add_argument("--families", default="none",
                   help="'all', 'none', or ';'-separated family specs")
    p.add_argument("--max-n", type=int, default=8, help="largest order for --families all")
    p.add_argument("--random", type=int, default=0, metavar="COUNT", help="number of random graphs")
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=9)
    p.add_argument("--p", type=float, default=0.4, help="edge probability")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--allow-disconnected", action="store_true")
    p.add_argument("--log", help="append violations and findings here as JSON lines")
    p.add_argument("--jobs", type=int, default=1)
    _common(p)
    p.set_defaults(func=cmd_bounds)

    for name, helptext, func in (("reduce", "build the 3-SAT reduction graph", cmd_reduce),
                                 ("verify-reduction", "build and verify the reduction claims",
                                  cmd_verify_reduction)):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--cnf", required=True, help="DIMACS CNF file with 3 literals per clause")
        p.add_argument("--no-path", action="store_true", help="omit the s1s2s3 path (Roman domination variant)")
        p.add_argument("--out", help="write the graph here plus a .roles.json sidecar")
        if name == "reduce":
            p.add_argument("--verify", action="store_true", help="check every claim by exact solves")
            p.add_argument("--solve", action="store_true", help="report gamma_R only")
        _common(p)
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        if args.format == "json":
            print(json.dumps({"schema": SCHEMA_VERSION, "command": args.command, "error": "budget",
                              "lower": exc.lower, "upper": exc.upper}))
        return EXIT_BUDGET
    except ReductionInvariantViolated as exc:
        print(f"claim failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (RomanBondError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
