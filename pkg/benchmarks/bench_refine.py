#!/usr/bin/env python3
"""Compare the compiled and pure-Python refinement kernels.

Times raw refinement and full ``minimize`` on random τ-rich LTSs for
every available backend and checks that the partitions agree.

    python3 benchmarks/bench_refine.py --sizes 100 400 1600
"""

import argparse
import random
import time

from pis import refine
from pis.bench import bench_backends
from pis.equivalence import minimize
from pis.generators import random_lts


def time_minimize(sizes, seed, repeat):
    rng = random.Random(seed)
    rows = []
    for n in sizes:
        lts = random_lts(rng, ["a", "b", "c"], n, live=True, tau=True, extra=2.0, min_states=n)
        row = {"states": n}
        results = {}
        previous = refine.backend()
        try:
            for name in refine.BACKENDS:
                refine.set_backend(name)
                best = float("inf")
                for _ in range(repeat):
                    t0 = time.perf_counter()
                    results[name] = minimize(lts)
                    best = min(best, time.perf_counter() - t0)
                row[f"{name}_ms"] = best * 1e3
        finally:
            refine.set_backend(previous)
        values = list(results.values())
        row["agree"] = all(v == values[0] for v in values)
        rows.append(row)
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 400, 1600])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    names = sorted(refine.BACKENDS)
    if "compiled" not in names:
        print("compiled kernel not built; only the python backend is timed")
    head = "".join(f"{n + ' ms':>14}" for n in names)
    speedup = "compiled" in names and "python" in names

    print("refine")
    print(f"{'states':>8}{'trans':>8}{head}{'speedup':>9}  agree")
    for row in bench_backends(args.sizes, args.seed, args.repeat):
        times = "".join(f"{row[f'{n}_ms']:>14.2f}" for n in names)
        ratio = f"{row['python_ms'] / row['compiled_ms']:>8.1f}x" if speedup else ""
        print(f"{row['states']:>8}{row['transitions']:>8}{times}{ratio}  {row['agree']}")

    print("\nminimize")
    print(f"{'states':>8}{head}{'speedup':>9}  agree")
    for row in time_minimize(args.sizes, args.seed, args.repeat):
        times = "".join(f"{row[f'{n}_ms']:>14.2f}" for n in names)
        ratio = f"{row['python_ms'] / row['compiled_ms']:>8.1f}x" if speedup else ""
        print(f"{row['states']:>8}{times}{ratio}  {row['agree']}")


if __name__ == "__main__":
    main()
