#!/usr/bin/env python3
"""Benchmark the compiled 2D stencil kernel against the NumPy fallback.

The 5-point matvec is the hot inner operation of the 2D eigensolve path
(residual verification and any iterative method built on it).  Run:

    python3 benchmarks/benchmark_stencil.py [--sizes 201,401,801] [--reps 50]
"""

import argparse
import timeit

import numpy as np

from fluxsim import kernels


def bench(fn, diag, cf, cm, x, out, reps):
    fn(diag, cf, cm, x, out)  # warm-up
    t = timeit.repeat(lambda: fn(diag, cf, cm, x, out), number=reps, repeat=5)
    return min(t) / reps


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="201,401,801",
                    help="comma-separated grid sizes n (n x n points)")
    ap.add_argument("--reps", type=int, default=50)
    args = ap.parse_args()

    print(f"active backend: {kernels.BACKEND}")
    if kernels.BACKEND != "cython":
        print("compiled extension not built; benchmarking fallback only")
    header = f"{'n':>6} {'numpy (ms)':>12} {'cython (ms)':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    rng = np.random.default_rng(0)
    for n in [int(s) for s in args.sizes.split(",")]:
        diag = rng.normal(size=(n, n))
        x = rng.normal(size=(n, n))
        out = np.empty_like(x)
        t_np = bench(kernels.apply_h2d_numpy, diag, 2.0, 3.0, x, out,
                     args.reps)
        if kernels.BACKEND == "cython":
            t_cy = bench(kernels.apply_h2d, diag, 2.0, 3.0, x, out, args.reps)
            print(f"{n:>6} {t_np * 1e3:>12.4f} {t_cy * 1e3:>12.4f} "
                  f"{t_np / t_cy:>8.2f}x")
        else:
            print(f"{n:>6} {t_np * 1e3:>12.4f} {'-':>12} {'-':>9}")


if __name__ == "__main__":
    main()
