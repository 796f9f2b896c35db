#!/usr/bin/env python3
"""Benchmark the feature kernels: numba @njit loops vs pure numpy.

Usage: python3 benchmarks/bench_kernels.py [n_events]

Times each backend on synthetic streams sized like a long capture
session. The numba path is warmed once before timing so JIT compilation
is not counted.
"""

import sys
import time

import numpy as np

from collector.features import kernels


def bench(fn, args, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 2_000_000
    rng = np.random.default_rng(42)

    down = np.cumsum(rng.integers(1, 400, n)).astype(np.int64)
    space = rng.random(n) < 0.15
    x = rng.uniform(0, 3000, n)
    y = rng.uniform(0, 2000, n)
    t = np.cumsum(rng.integers(0, 40, n)).astype(np.int64)
    codes = rng.integers(0, 64, n - 1).astype(np.int64)
    speeds = rng.uniform(0, 800, n - 1)

    cases = [
        ("segment_starts", (down, space, 1000)),
        ("pair_kinematics", (x, y, t)),
        ("pair_stats", (codes, speeds, 64)),
    ]

    print(f"n = {n:,} events; best of 5 runs; active backend: {kernels.ACTIVE_BACKEND}")
    print(f"{'kernel':<18}" + "".join(f"{b:>12}" for b in sorted(kernels.IMPLS)) + f"{'speedup':>10}")
    for name, args in cases:
        times = {}
        for backend in sorted(kernels.IMPLS):
            impl = kernels.IMPLS[backend][name]
            impl(*args)  # warm-up (JIT compile / cache touch)
            times[backend] = bench(impl, args)
        row = f"{name:<18}" + "".join(f"{times[b] * 1e3:>10.2f}ms" for b in sorted(times))
        if "numba" in times and "numpy" in times:
            row += f"{times['numpy'] / times['numba']:>9.2f}x"
        print(row)

    if "numba" not in kernels.IMPLS:
        print("note: numba unavailable or disabled (COLLECTOR_NO_NUMBA); numpy only")


if __name__ == "__main__":
    main()
