#!/usr/bin/env python3
"""Timing comparison of the numba and pure-numpy kernel variants.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from sectorial import _backend, rand
from sectorial._kernels import oscillatory_rayleigh, support_sweep


def timeit(fn, repeat):
    fn()  # warmup (JIT compile / cache load)
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_oscillatory(repeat):
    cases = [(4, 64 * 4), (16, 64 * 16), (64, 64 * 64), (256, 64 * 256)]
    print("oscillatory_rayleigh (mode n, Simpson panels)")
    for n, intervals in cases:
        def run():
            for mode in range(1, n + 1):
                oscillatory_rayleigh(mode, intervals, 1.0, 0.7 + 0.2j)

        rows = {}
        for backend in ("numpy", "numba"):
            try:
                _backend.force_backend(backend)
            except ImportError:
                rows[backend] = None
                continue
            rows[backend] = timeit(run, repeat)
        _report(f"  sweep to n={n:4d} ({intervals} panels)", rows)


def bench_support_sweep(repeat):
    rng = rand.generator(0)
    print("support_sweep (numerical range boundary)")
    for n, angles in ((4, 720), (16, 720), (64, 360)):
        T = rand.complex_gaussian(rng, n)
        thetas = np.linspace(0.0, 2 * np.pi, angles, endpoint=False)

        def run():
            support_sweep(T, thetas)

        rows = {}
        for backend in ("numpy", "numba"):
            try:
                _backend.force_backend(backend)
            except ImportError:
                rows[backend] = None
                continue
            rows[backend] = timeit(run, repeat)
        _report(f"  n={n:3d}, {angles} angles", rows)


def _report(label, rows):
    numpy_t = rows.get("numpy")
    numba_t = rows.get("numba")
    if numba_t is None:
        print(f"{label}: numpy {numpy_t * 1e3:8.2f} ms   (numba unavailable)")
        return
    speedup = numpy_t / numba_t if numba_t > 0 else float("inf")
    print(f"{label}: numpy {numpy_t * 1e3:8.2f} ms   numba {numba_t * 1e3:8.2f} ms"
          f"   speedup x{speedup:.2f}")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    bench_oscillatory(args.repeat)
    bench_support_sweep(args.repeat)


if __name__ == "__main__":
    main()
