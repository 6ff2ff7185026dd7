#!/usr/bin/env python3
"""Benchmark the compiled convolution kernel against the pure-Python path.

Runs the hot workloads (pairwise and 4-fold energies of cube sets) with
each backend and prints a timing table plus an exactness cross-check.
Add the size sweep you care about with --sizes.

Usage: python benchmarks/bench_kernels.py [--sizes 32,64,96] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

from sumsetlab import gen_power
from sumsetlab.core import SparseCounts
from sumsetlab.engine import representation
from sumsetlab.kernels import (
    BACKEND,
    convolve_integer_dense,
    convolve_integer_py,
    dense_is_safe,
)


def _pair_counts(n: int) -> SparseCounts:
    return representation([gen_power(n, 3)] * 2)


def _time(fn, repeat: int) -> tuple[float, object]:
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_convolution(n: int, repeat: int) -> None:
    rep = _pair_counts(n)
    av, ac = list(rep.values), list(rep.counts)
    work = len(av) ** 2
    py_t, py_out = _time(lambda: convolve_integer_py(av, ac, av, ac), repeat)
    line = (
        f"N={n:<4d} nnz={len(av):<6d} work={work:.2e}  "
        f"python {py_t:8.3f}s ({work / py_t:.2e} ops/s)"
    )
    if BACKEND == "cython" and dense_is_safe(av, av, rep.mass**2):
        ext_t, ext_out = _time(lambda: convolve_integer_dense(av, ac, av, ac), repeat)
        assert ext_out == py_out, "backends disagree"
        line += f"  cython {ext_t:8.3f}s ({work / ext_t:.2e} ops/s)  speedup x{py_t / ext_t:.1f}"
    else:
        line += "  cython unavailable"
    print(line)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="32,64,96")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    print(f"import-selected backend: {BACKEND}")
    print("4-fold energy kernel: convolving r_{A+A} with itself, A = first N cubes")
    for n in (int(s) for s in args.sizes.split(",")):
        bench_convolution(n, args.repeat)


if __name__ == "__main__":
    main()
