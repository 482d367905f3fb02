"""Benchmark the numba kernel path against the pure-numpy fallback.

Times the batched sparse-polynomial evaluation that dominates Monte-Carlo
Mahler estimates and the curve oracle.  Run as

    python -m stablepairs.benchmark [--samples N] [--repeats R]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from ._kernels import (
    HAS_NUMBA,
    _poly_values_numba,
    _poly_values_numpy,
    poly_log_abs,
)


def _workload(nvars: int, nterms: int, samples: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    expo = rng.integers(0, 4, size=(nterms, nvars)).astype(np.int64)
    coeffs = (rng.standard_normal(nterms) + 1j * rng.standard_normal(nterms)).astype(
        np.complex128
    )
    Z = (
        rng.standard_normal((samples, nvars)) + 1j * rng.standard_normal((samples, nvars))
    ).astype(np.complex128)
    return expo, coeffs, Z


def _time(fn, *args, repeats: int = 3) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=200_000)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args(argv)

    cases = [
        ("monomial, P^4", 5, 1),
        ("conic chow form", 6, 9),
        ("dense cubic, P^3", 4, 20),
        ("cubic chow form", 8, 34),
    ]
    print(f"{'case':24s} {'numpy':>10s} {'numba':>10s} {'speedup':>8s}")
    for name, nvars, nterms in cases:
        expo, coeffs, Z = _workload(nvars, nterms, args.samples)
        t_np = _time(_poly_values_numpy, expo, coeffs, Z, repeats=args.repeats)
        if HAS_NUMBA:
            _poly_values_numba(expo, coeffs, Z[:16])  # compile outside the timer
            t_nb = _time(_poly_values_numba, expo, coeffs, Z, repeats=args.repeats)
            ratio = f"{t_np / t_nb:7.2f}x"
            nb = f"{t_nb * 1e3:9.1f}ms"
        else:
            nb, ratio = "n/a", "n/a"
        print(f"{name:24s} {t_np * 1e3:9.1f}ms {nb:>10s} {ratio:>8s}")
    a = poly_log_abs(*_workload(4, 12, 4096))
    print(f"sanity: mean log|P| on 4096 pts = {float(np.mean(a)):.4f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
