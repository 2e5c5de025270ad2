#!/usr/bin/env python3
"""Benchmark the C2 sweep kernel: compiled (numba) vs pure-numpy path.

Run with the default backend so both paths are importable:

    python3 benchmarks/bench_sweep.py [--samples 2001] [--n 200] [--p 10]

Reports wall time per backend and the maximum disagreement between the two
theta curves (which must be at rounding level).
"""

import argparse
import time

import numpy as np

from gpmor import kernels


def make_case(rng, n_nodes, n, p, samples):
    lifts = rng.standard_normal((n_nodes, n, p))
    params = np.linspace(0.0, 10.0, n_nodes)
    grid = np.linspace(-1.0, 11.0, samples)
    return lifts, params, grid


def timed(fn, *args, repeats=3):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=2001)
    ap.add_argument("--nodes", type=int, default=5)
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--p", type=int, default=10)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    lifts, params, grid = make_case(rng, args.nodes, args.n, args.p, args.samples)
    print(f"sweep: {args.samples} samples, {args.nodes} nodes, lifts {args.n}x{args.p}")

    t_np, ref = timed(kernels.theta_curve_numpy, lifts, params, grid)
    print(f"numpy : {t_np * 1e3:9.1f} ms")

    if kernels.theta_curve_numba is None:
        print("numba : unavailable (GPM_BACKEND=numpy or numba not installed)")
        return

    # warm up compilation before timing
    kernels.theta_curve_numba(lifts[:, :4, :2], params, grid[:8])
    t_nb, got = timed(kernels.theta_curve_numba, lifts, params, grid)
    print(f"numba : {t_nb * 1e3:9.1f} ms  (speedup x{t_np / t_nb:.2f})")
    print(f"max |difference| between backends: {np.max(np.abs(got - ref)):.3e}")


if __name__ == "__main__":
    main()
