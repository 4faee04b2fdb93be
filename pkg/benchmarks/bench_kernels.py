#!/usr/bin/env python3
"""Benchmark the compiled kernel core against the NumPy fallback.

Times the four hot kernels (stencil sweep, Simpson quadrature, Horner
evaluation, tridiagonal eigensolver) plus one end-to-end residual scan.

Usage:
    python benchmarks/bench_kernels.py [--points N] [--matrix N] [--repeats R]
"""
import argparse
import time

import numpy as np


def _best_of(repeats, fn, *args):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(points, matrix_n, repeats):
    from rexosc._kernels import fallback

    backends = [("fallback", fallback)]
    try:
        from rexosc._kernels import _core
        backends.append(("compiled", _core))
    except ImportError:
        print("compiled extension not available; timing fallback only")

    rng = np.random.default_rng(0)
    samples = (rng.normal(size=points) + 1j * rng.normal(size=points))
    coeffs = rng.normal(size=25) + 1j * rng.normal(size=25)
    zs = rng.normal(size=points) + 1j * rng.normal(size=points)
    x = np.linspace(-12, 12, matrix_n)
    h = x[1] - x[0]
    diag = 2.0 / h**2 + x**2
    off = np.full(matrix_n - 1, -1.0 / h**2)

    cases = [
        (f"stencil sweep ({points} pts)",
         lambda impl: impl.second_derivative_profile(samples, 1e-3)),
        (f"simpson ({points} pts)",
         lambda impl: impl.simpson(samples, 1e-3)),
        (f"horner deg 24 ({points} pts)",
         lambda impl: impl.horner(coeffs, zs)),
        (f"tridiagonal eigensolver (n={matrix_n}, k=5)",
         lambda impl: impl.tridiagonal_smallest(diag, off, 5)),
    ]

    rows = []
    for label, fn in cases:
        times = {}
        for name, impl in backends:
            times[name] = _best_of(repeats, fn, impl)
        rows.append((label, times))

    width = max(len(r[0]) for r in rows) + 2
    header = f"{'kernel':<{width}}" + "".join(f"{n:>12}" for n, _ in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for label, times in rows:
        line = f"{label:<{width}}"
        for name, _ in backends:
            line += f"{times[name] * 1e3:>10.2f}ms"
        if len(backends) == 2:
            line += f"{times['fallback'] / times['compiled']:>9.1f}x"
        print(line)


def bench_end_to_end(repeats):
    from rexosc import verify
    from rexosc.model import Eigenstate, OscillatorSpec, REConfig

    spec = OscillatorSpec.oscillator(2.0)
    cfg = REConfig((2,))
    grids = verify.suggest_grids(spec, spacing=1e-3)
    t = _best_of(repeats, verify.residual_scan, spec, cfg,
                 Eigenstate((0,)), grids)
    from rexosc import BACKEND
    print(f"\nend-to-end residual scan (1D, h=1e-3, backend={BACKEND}): "
          f"{t * 1e3:.1f}ms")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=1_000_000)
    ap.add_argument("--matrix", type=int, default=2000)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()
    bench_kernels(args.points, args.matrix, args.repeats)
    bench_end_to_end(args.repeats)


if __name__ == "__main__":
    main()
