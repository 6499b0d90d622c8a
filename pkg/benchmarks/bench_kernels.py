#!/usr/bin/env python3
"""Timing comparison between the compiled kernel core and the NumPy fallback.

Run after installing the package:

    python benchmarks/bench_kernels.py

Each kernel is timed best-of-five on a representative workload; the package
selects whichever backend is available at import, so this script imports both
implementations directly.
"""

import time

import numpy as np

from eitslm._kernels import py_backend

try:
    from eitslm._kernels import _core
except ImportError:
    _core = None


def best_of(fn, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def make_cases(rng):
    omega_sq = rng.uniform(0.0, 1e18, size=(512, 512))
    gamma31, gamma21, delta, pref = 38.11e6, 2 * np.pi * 3000.0, -0.2 * 38.11e6, 6.86e6

    n = 64
    field = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    axes = (np.arange(n) - n // 2) * 1e-5
    freqs = (np.arange(4096) % n - n // 2) / (n * 1e-5)
    fx = freqs
    fy = np.roll(freqs, 7)

    values = rng.standard_normal((512, 512)) + 1j * rng.standard_normal((512, 512))
    theta = rng.uniform(0.0, 2 * np.pi, size=1_000_000)
    radius = rng.uniform(0.0, 200.0, size=theta.size)
    xq = radius * np.cos(theta)
    yq = radius * np.sin(theta)

    return [
        (
            "susceptibility_map (512x512)",
            lambda be: be.susceptibility_map(omega_sq, gamma31, gamma21, delta, pref),
        ),
        (
            "dft_points (64x64 -> 4096 pts)",
            lambda be: be.dft_points(field, axes, axes, fx, fy),
        ),
        (
            "bilinear_sample (1e6 pts)",
            lambda be: be.bilinear_sample(values, xq, yq, -256.0, -256.0, 1.0, 1.0),
        ),
    ]


def main():
    rng = np.random.default_rng(7)
    cases = make_cases(rng)
    print(f"{'kernel':36} {'numpy':>10} {'compiled':>10} {'speedup':>8}")
    for name, runner in cases:
        t_py = best_of(lambda: runner(py_backend))
        if _core is None:
            print(f"{name:36} {t_py * 1e3:8.2f}ms {'n/a':>10} {'n/a':>8}")
            continue
        t_c = best_of(lambda: runner(_core))
        ref = runner(py_backend)
        alt = runner(_core)
        worst = float(np.max(np.abs(ref - alt)) / max(np.max(np.abs(ref)), 1e-300))
        print(
            f"{name:36} {t_py * 1e3:8.2f}ms {t_c * 1e3:8.2f}ms {t_py / t_c:7.1f}x"
            f"   (max rel dev {worst:.1e})"
        )


if __name__ == "__main__":
    main()
