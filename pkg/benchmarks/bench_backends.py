"""Benchmark the compiled scan kernel against the pure numpy fallback.

Usage: python benchmarks/bench_backends.py [points_per_angle]

Evaluates the family overlap sum and spectrum over a full 4-angle grid
with both backends, checks they agree to 1e-12, and reports throughput.
"""

import sys
import time

import numpy as np

from pentaks._kernels import available_backends, get_backend


def run(points: int) -> None:
    angles = np.linspace(0.0, np.pi / 2, points)
    phases = np.linspace(0.0, 2.0 * np.pi, points, endpoint=False)
    grids = np.meshgrid(angles, angles, phases, phases, indexing="ij")
    flat = [g.ravel() for g in grids]
    n = flat[0].size
    print(f"grid: {points}^4 = {n} evaluations")

    results = {}
    for name in available_backends():
        kernel = get_backend(name)
        kernel.family_spectra(*[f[:1000] for f in flat])  # warm up
        start = time.perf_counter()
        overlap, lam = kernel.family_spectra(*flat)
        elapsed = time.perf_counter() - start
        results[name] = (overlap, lam, elapsed)
        print(f"{name:>8}: {elapsed:8.3f} s   {n / elapsed / 1e6:8.2f} M evals/s")

    if len(results) == 2:
        (o1, l1, t1), (o2, l2, t2) = results["cython"], results["python"]
        worst = max(np.max(np.abs(o1 - o2)), np.max(np.abs(l1 - l2)))
        assert worst < 1e-10, f"backends disagree by {worst}"
        print(f"agreement: max |diff| = {worst:.3e}   speedup: {t2 / t1:.2f}x")
    else:
        print("compiled backend unavailable; nothing to compare")


if __name__ == "__main__":
    run(int(sys.argv[1]) if len(sys.argv) > 1 else 24)
