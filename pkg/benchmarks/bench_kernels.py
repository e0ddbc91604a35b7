"""Compare the compiled kernels with the pure-Python/numpy fallback.

    python benchmarks/bench_kernels.py [--reps 100000]
"""
import argparse
import timeit

import numpy as np

from votesign import _backend


def bench(label, fn, number):
    best = min(timeit.repeat(fn, number=number, repeat=5)) / number
    print(f"  {label:<34s} {best * 1e6:12.1f} us")
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--reps", type=int, default=100_000)
    args = ap.parse_args()

    impls = [("python", _backend.python)]
    if _backend.compiled is not None:
        impls.append(("cython", _backend.compiled))
    else:
        print("compiled kernels not available; timing the fallback only")

    table1 = np.array([0.55] * 7 + [0.05] * 5)
    wide = np.random.default_rng(0).uniform(0.01, 0.99, size=200)
    results = {}
    for name, impl in impls:
        print(name)
        results[name] = (
            bench("pb_pmf n=12", lambda: impl.pb_pmf(table1), 2000),
            bench("pb_pmf n=200", lambda: impl.pb_pmf(wide), 50),
            bench(f"draw_counts n=12 reps={args.reps}", lambda: impl.draw_counts(table1, 1, 0, args.reps), 3),
        )
    if len(results) == 2:
        print("speed-up (python / cython)")
        for label, py, cy in zip(("pb_pmf n=12", "pb_pmf n=200", "draw_counts"), results["python"], results["cython"]):
            print(f"  {label:<34s} {py / cy:10.1f}x")


if __name__ == "__main__":
    main()
