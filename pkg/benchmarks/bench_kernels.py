"""Compare the compiled and pure-Python reduction kernels on fiber ideals.

    python3 benchmarks/bench_kernels.py [--repeat N] [--instances 2,2 1,4 veronese]

Each instance is a random fiber ideal; both kernels must return the same
reduced basis, and the best of ``--repeat`` runs is reported.
"""

from __future__ import annotations

import argparse
import sys
import time

from projram.degree import build_fiber_ideal, build_veronese_ideal
from projram.groebner import available_kernels, buchberger, quotient_dimension

DEFAULT_INSTANCES = ["1,3", "2,2", "1,4", "veronese", "2,3"]


def build(name, seed):
    if name == "veronese":
        return build_veronese_ideal(seed)[1]
    return build_fiber_ideal(tuple(int(x) for x in name.split(",")), seed)[1]


def best_time(ideal, kernel, repeat):
    best, basis = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        basis = buchberger(ideal, kernel=kernel)
        best = min(best, time.perf_counter() - t0)
    return best, basis


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--instances", nargs="+", default=DEFAULT_INSTANCES)
    ap.add_argument("--repeat", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    kernels = available_kernels()
    if "cython" not in kernels:
        print("compiled kernel not built; only the Python kernel is available", file=sys.stderr)
    print(f"{'instance':>10} {'degree':>6} {'pairs':>9} " + " ".join(f"{k + ' s':>10}" for k in kernels)
          + ("    speedup" if len(kernels) > 1 else ""))
    for name in args.instances:
        ideal = build(name, args.seed)
        times, bases = {}, {}
        for k in kernels:
            times[k], bases[k] = best_time(ideal, k, args.repeat)
        ref = bases[kernels[0]]
        if any(B.elements != ref.elements for B in bases.values()):
            raise SystemExit(f"{name}: kernels disagree")
        line = (f"{name:>10} {quotient_dimension(ref):>6} {ref.stats['pairs_processed']:>9} "
                + " ".join(f"{times[k]:>10.3f}" for k in kernels))
        if len(kernels) > 1:
            line += f" {times['python'] / times['cython']:>10.1f}x"
        print(line, flush=True)


if __name__ == "__main__":
    main()
