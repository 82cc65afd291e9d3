#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy/scipy fallback.

Times the two hot kernels on synthetic workloads shaped like the real
ones: non-dominated sweeps over lattice-image clouds and Hausdorff
distances between a sampled boundary and a dense reference curve.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from coopetition._kernels import _py

try:
    from coopetition._kernels import _speedups
except ImportError:
    _speedups = None


def timeit(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def pareto_input(n: int) -> np.ndarray:
    # Lattice image of the expected-loss map, pre-sorted and deduplicated
    # the way the boundary filter feeds the kernel.
    side = int(np.sqrt(n))
    t = np.linspace(0.0, 1.0, side)
    x, y = np.meshgrid(t, t, indexing="ij")
    pts = np.stack([(-4 * x * y).ravel(), (x + y).ravel()], axis=1)
    pts = np.unique(pts, axis=0)
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    return np.ascontiguousarray(pts[order])


def hausdorff_input(n: int, m: int):
    t = np.linspace(0.0, 1.0, n)
    a = np.ascontiguousarray(np.stack([-4 * t * t, 2 * t], axis=1))
    s = np.linspace(0.0, 1.0, m)
    b = np.ascontiguousarray(np.stack([-4 * s * s + 0.01, 2 * s], axis=1))
    return a, b


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    if _speedups is None:
        print("compiled kernels not built; showing fallback timings only")

    rows = []
    for n in (10_000, 100_000, 513 * 513):
        pts = pareto_input(n)
        py = timeit(lambda: _py.nondominated_min_mask(pts), args.repeat)
        cy = (
            timeit(lambda: _speedups.nondominated_min_mask(pts), args.repeat)
            if _speedups
            else float("nan")
        )
        rows.append((f"pareto sweep ({len(pts)} pts)", py, cy))

    for n, m in ((1_000, 4_000), (4_000, 8_193)):
        a, b = hausdorff_input(n, m)
        py = timeit(lambda: _py.hausdorff_distance(a, b), args.repeat)
        cy = (
            timeit(lambda: _speedups.hausdorff_distance(a, b), args.repeat)
            if _speedups
            else float("nan")
        )
        rows.append((f"hausdorff ({n} x {m})", py, cy))

    width = max(len(r[0]) for r in rows)
    print(f"{'workload':<{width}}  {'python':>10}  {'compiled':>10}  {'ratio':>6}")
    for name, py, cy in rows:
        ratio = py / cy if cy == cy and cy > 0 else float("nan")
        print(f"{name:<{width}}  {py * 1e3:>8.2f}ms  {cy * 1e3:>8.2f}ms  {ratio:>5.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
