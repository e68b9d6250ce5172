"""Time the branch-and-bound kernels with numba and with the plain-Python fallback.

Each mode runs in its own interpreter because the backend is fixed at import
time by ``ROMANBOND_NO_NUMBA``. Compilation is excluded: every workload is
run once before timing.

    python benchmarks/bench_kernels.py --repeat 3
"""
from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

WORKLOADS = {
    "gamma_r grid2xn:30": "gamma_r(gc.grid2xn(30))",
    "gamma_r C7 x C8": "gamma_r(gc.product(gc.cycle(7), gc.cycle(8)))",
    "gamma_r random n=62": "gamma_r(gc.random_connected_graph(62, 0.06, 11))",
    "gamma random n=62": "gamma(gc.random_connected_graph(62, 0.06, 11))",
    "bondage_r C5 x C5": "bondage_r(gc.product(gc.cycle(5), gc.cycle(5)))",
    "count optimal grid2xn:16": "count_optimal_roman_functions(gc.grid2xn(16))",
}

_CHILD = """
import json, sys, time
from romanbond import graph as gc, _accel
from romanbond.roman import gamma, gamma_r, count_optimal_roman_functions
from romanbond.bondage import bondage_r
repeat = int(sys.argv[1])
out = {"numba": _accel.USE_NUMBA}
for name, expr in json.loads(sys.argv[2]).items():
    value = eval(expr)
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        eval(expr)
        best = min(best, time.perf_counter() - t)
    out[name] = [best, str(value[0] if isinstance(value, tuple) else value.value)]
print(json.dumps(out))
"""


def run_mode(fallback: bool, repeat: int, workloads: dict) -> dict:
    env = dict(os.environ)
    env.pop("ROMANBOND_NO_NUMBA", None)
    if fallback:
        env["ROMANBOND_NO_NUMBA"] = "1"
    proc = subprocess.run([sys.executable, "-c", _CHILD, str(repeat), json.dumps(workloads)],
                          env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--only", help="substring filter on workload names")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    workloads = {k: v for k, v in WORKLOADS.items() if not args.only or args.only in k}
    t0 = time.perf_counter()
    jit = run_mode(False, args.repeat, workloads)
    py = run_mode(True, args.repeat, workloads)
    assert jit.pop("numba") and not py.pop("numba")
    for name in workloads:
        if jit[name][1] != py[name][1]:
            raise SystemExit(f"backends disagree on {name}: {jit[name][1]} vs {py[name][1]}")
    if args.json:
        print(json.dumps({"numba": jit, "fallback": py}, indent=1))
        return 0
    print(f"{'workload':<26}{'value':>6}{'numba s':>10}{'fallback s':>12}{'speedup':>9}")
    for name in workloads:
        (a, value), (b, _) = jit[name], py[name]
        print(f"{name:<26}{value:>6}{a:>10.4f}{b:>12.4f}{b / max(a, 1e-9):>8.1f}x")
    print(f"total wall time {time.perf_counter() - t0:.1f}s (best of {args.repeat})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
