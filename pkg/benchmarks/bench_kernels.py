"""Compare the numba kernels against the pure-Python fallback.

Each backend runs in its own interpreter because the switch is read at
import time::

    python benchmarks/bench_kernels.py [--repeat 3] [--json]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, random, time
from capfactor import _kernels, figures
from capfactor.cfcore import enumerate_kcfs
from capfactor.classify import classify_edges
from capfactor.maxflow import max_flow
from capfactor.netmodel import Edge, Network
from capfactor.reductions import NaesatInstance, max_partially_connected_cut, reduce_naesat

def dag(seed, nv, ne):
    rng = random.Random(seed)
    names = ["s", *(f"v{i}" for i in range(1, nv - 1)), "t"]
    pairs = [(rng.randrange(0, j), j) for j in range(1, nv)]
    pairs += [(i, rng.randrange(i + 1, nv)) for i in range(nv - 1)]
    while len(pairs) < ne:
        a, b = sorted(rng.sample(range(nv), 2))
        pairs.append((a, b))
    return Network(tuple(names), tuple(Edge(i, names[a], names[b]) for i, (a, b) in enumerate(pairs, 1)), "s", "t")

big = dag(1, 300, 1500)
gadget = reduce_naesat(NaesatInstance(3, figures.FIG6_CLAUSES)).network
fam = figures.exponential_family(4)
cases = {
    "max_flow 300x1500": lambda: max_flow(big),
    "classify 300x1500": lambda: classify_edges(big, strict=False),
    "enumerate fig1 n=4": lambda: enumerate_kcfs(fam, 1),
    "bipartitions fig6 gadget": lambda: max_partially_connected_cut(gadget),
}
out = {"jit": _kernels.NUMBA_ENABLED, "times": {}}
for name, fn in cases.items():
    fn()  # warm-up (includes compilation for the jit backend)
    runs = []
    for _ in range(REPEAT):
        t0 = time.perf_counter()
        fn()
        runs.append(time.perf_counter() - t0)
    out["times"][name] = min(runs)
print(json.dumps(out))
"""


def run_backend(disable: bool, repeat: int) -> dict:
    env = dict(os.environ, CAPFACTOR_DISABLE_NUMBA="1" if disable else "0")
    code = WORKLOAD.replace("REPEAT", str(repeat))
    proc = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true", help="print raw JSON instead of a table")
    args = ap.parse_args()
    jit = run_backend(False, args.repeat)
    py = run_backend(True, args.repeat)
    if args.json:
        print(json.dumps({"numba": jit, "python": py}, indent=2))
        return
    print(f"{'case':28s} {'numba [s]':>10s} {'python [s]':>11s} {'speed-up':>9s}")
    for name, t_jit in jit["times"].items():
        t_py = py["times"][name]
        print(f"{name:28s} {t_jit:10.4f} {t_py:11.4f} {t_py / t_jit:8.1f}x")


if __name__ == "__main__":
    main()
