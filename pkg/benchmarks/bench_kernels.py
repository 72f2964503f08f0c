#!/usr/bin/env python3
"""Times the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Workloads mirror the verification suites: projection tables and distance
histograms on a dense q=9 instance, transform trace counts, and the
orthogonal-group scan at q=3, d=3 (19683 candidate matrices).
"""

import argparse
import time

from ffplanes import full_configuration, make_field
from ffplanes._core import py_kernels
from ffplanes.geometry import grid_array

try:
    from ffplanes._core import _speedups
except ImportError:
    _speedups = None


def timeit(fn, repeat):
    best = None
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best


def workloads():
    ctx = make_field(3, 2)
    e, f = full_configuration(ctx, 2)
    dots = py_kernels.dot_products(e.array, f.normal_array, ctx.add_table, ctx.mul_table)
    grid = grid_array(ctx, 2)
    ctx3 = make_field(3)
    yield "dot_products (q=9, 81 pts x 16 normals)", lambda impl: impl.dot_products(
        e.array, f.normal_array, ctx.add_table, ctx.mul_table
    )
    yield "distance_hist (q=9, 11664 pairs)", lambda impl: impl.distance_hist(
        dots, f.normal_index, f.offsets, f.scales,
        ctx.sub_table, ctx.mul_table, ctx.sq_table, ctx.q,
    )
    yield "trace_counts (q=9, 81 freqs x 81 pts)", lambda impl: impl.trace_counts(
        e.array, grid, ctx.add_table, ctx.mul_table,
        ctx.trace_table, ctx.neg_table, ctx.p,
    )
    yield "orthogonal_scan (q=3, d=3, 19683 cands)", lambda impl: impl.orthogonal_scan(
        ctx3.q, 3, ctx3.add_table, ctx3.mul_table, ctx3.one
    )


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    print(f"{'workload':<42} {'pure':>10} {'compiled':>10} {'speedup':>8}")
    for name, fn in workloads():
        pure = timeit(lambda: fn(py_kernels), args.repeat)
        if _speedups is None:
            print(f"{name:<42} {pure * 1e3:>8.2f}ms {'n/a':>10} {'n/a':>8}")
            continue
        fast = timeit(lambda: fn(_speedups), args.repeat)
        print(
            f"{name:<42} {pure * 1e3:>8.2f}ms {fast * 1e3:>8.2f}ms "
            f"{pure / fast:>7.1f}x"
        )


if __name__ == "__main__":
    main()
