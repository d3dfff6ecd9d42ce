#!/usr/bin/env python3
"""Benchmark the two trace-kernel backends (numba loop vs vectorized numpy).

Runs both backends on identical direction arrays of growing size, checks
they agree bit for bit, and prints a timing table with the speedup. The
numba backend is compiled explicitly here, so the TSA_EXO_NUMBA env flag
does not affect this script.

Usage: python3 benchmarks/bench_kernels.py [--repeats N]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from tsa_exo.kernels import numba_kernel, trace_columns_numpy

SIZES = [10_000, 100_000, 1_000_000, 5_000_000]

# Reference-device geometry; values only shape the arithmetic, not the timing.
STEP_ANGLE = 2.0 * np.pi * 0.01
LENGTH = 0.035
RADIUS = 0.001
PIN_RADIUS = 0.01
LIMIT_DEG = 50.0


def make_directions(n: int) -> np.ndarray:
    """Repeating CW/CCW/pause pattern like a long controller session."""
    cycle = np.concatenate(
        [
            np.ones(300, dtype=np.int8),
            -np.ones(300, dtype=np.int8),
            np.zeros(500, dtype=np.int8),
        ]
    )
    reps = n // cycle.shape[0] + 1
    return np.tile(cycle, reps)[:n]


def best_of(fn, args, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5, help="timing repeats")
    args = parser.parse_args()

    try:
        numba_fn = numba_kernel()
    except ImportError:
        print("numba is not installed; nothing to compare")
        return 1

    # Warm up: first call includes JIT compilation (or cache load).
    warm = make_directions(1000)
    start = time.perf_counter()
    numba_fn(warm, STEP_ANGLE, LENGTH, RADIUS, PIN_RADIUS, LIMIT_DEG)
    print(f"numba warm-up (compile/cache load): {time.perf_counter() - start:.3f} s")
    print()
    print(f"{'rows':>10}  {'numpy [ms]':>12}  {'numba [ms]':>12}  {'speedup':>8}")

    for n in SIZES:
        directions = make_directions(n)
        call_args = (directions, STEP_ANGLE, LENGTH, RADIUS, PIN_RADIUS, LIMIT_DEG)
        out_np = trace_columns_numpy(*call_args)
        out_nb = numba_fn(*call_args)
        for a, b in zip(out_np, out_nb):
            if not np.array_equal(a, b):
                raise AssertionError(f"backend mismatch at n={n}")
        t_np = best_of(trace_columns_numpy, call_args, args.repeats)
        t_nb = best_of(numba_fn, call_args, args.repeats)
        print(
            f"{n:>10}  {t_np * 1e3:>12.3f}  {t_nb * 1e3:>12.3f}  "
            f"{t_np / t_nb:>7.2f}x"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
