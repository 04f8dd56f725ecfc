"""Compare the numba kernels with the plain Python fallback.

Each backend runs in its own interpreter because the choice is fixed at import time.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, sys, time
import numpy as np
from equicolor import _kernels, fixtures
from equicolor.constructions import stalactite_chain
from equicolor.oracle import exhaustive_equitable, exhaustive_forest_partition

repeat = int(sys.argv[1])
rng = np.random.default_rng(0)
outer = [fixtures.random_outerplanar(int(rng.integers(14, 19)), rng) for _ in range(10)]
planar = [fixtures.random_planar(int(rng.integers(16, 21)), rng, keep=1.0) for _ in range(5)]
g2, _ = stalactite_chain(2)

def warm():
    exhaustive_equitable(outer[0], 3)
    exhaustive_forest_partition(planar[0], 2)

cases = {
    "equitable s=3 on 10 outerplanar graphs": lambda: [exhaustive_equitable(g, 3) for g in outer],
    "stalactite G_2 at s=3": lambda: exhaustive_equitable(g2, 3, max_n=30),
    "two forests on 5 triangulations": lambda: [exhaustive_forest_partition(g, 2) for g in planar],
}
t0 = time.perf_counter(); warm(); compile_s = time.perf_counter() - t0
out = {"numba": _kernels.USE_NUMBA, "warmup_s": compile_s, "cases": {}}
for name, fn in cases.items():
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter(); fn(); best = min(best, time.perf_counter() - t0)
    out["cases"][name] = best
print(json.dumps(out))
"""


def run(no_numba: bool, repeat: int) -> dict:
    env = dict(os.environ, EQUICOLOR_NO_NUMBA="1" if no_numba else "0")
    res = subprocess.run(
        [sys.executable, "-c", WORKLOAD, str(repeat)], env=env, capture_output=True, text=True, check=True
    )
    return json.loads(res.stdout)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast, slow = run(False, args.repeat), run(True, args.repeat)
    if not fast["numba"]:
        print("numba unavailable; both columns use the fallback")
    print(f"{'case':42} {'numba s':>9} {'fallback s':>11} {'speedup':>8}")
    for name in fast["cases"]:
        a, b = fast["cases"][name], slow["cases"][name]
        print(f"{name:42} {a:9.4f} {b:11.4f} {b / a if a else float('inf'):7.1f}x")
    print(f"{'warm-up (includes JIT compile)':42} {fast['warmup_s']:9.4f} {slow['warmup_s']:11.4f}")


if __name__ == "__main__":
    main()
