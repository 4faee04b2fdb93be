"""NumPy reference implementations of the hot kernels.

These are the import-time fallback when the compiled extension is missing
(or disabled via REXOSC_NO_EXTENSION=1).  Semantics must match
``_core.pyx`` bit-for-bit at the contract level; `tests/test_kernels.py`
cross-checks the two backends.
"""
from __future__ import annotations

import numpy as np

BACKEND = "fallback"

# 9-point central stencil for f'', truncation error O(h^8).
STENCIL8 = np.array(
    [-1.0 / 560, 8.0 / 315, -1.0 / 5, 8.0 / 5, -205.0 / 72,
     8.0 / 5, -1.0 / 5, 8.0 / 315, -1.0 / 560]
)


def second_derivative_profile(samples: np.ndarray, spacing: float) -> np.ndarray:
    """Second derivative at all interior points (4 trimmed per side)."""
    f = np.asarray(samples)
    n = f.shape[0]
    if n < 9:
        raise ValueError("need at least 9 samples for the 8th-order stencil")
    out = STENCIL8[0] * f[0:n - 8]
    for j in range(1, 9):
        out = out + STENCIL8[j] * f[j:n - 8 + j]
    return out / spacing**2


def second_derivative_at(samples: np.ndarray, spacing: float, index: int) -> complex:
    """Second derivative at one interior index."""
    f = np.asarray(samples)
    window = f[index - 4:index + 5]
    return complex(np.dot(STENCIL8, window)) / spacing**2


def simpson(samples: np.ndarray, spacing: float) -> complex:
    """Composite Simpson rule over uniformly spaced samples.

    Even sample counts are handled by Simpson on the leading run plus a
    3/8 rule on the last three intervals.
    """
    f = np.asarray(samples, dtype=complex)
    n = f.shape[0]
    if n < 2:
        return 0j
    if n == 2:
        return complex(spacing * (f[0] + f[1]) / 2.0)
    if n % 2 == 1:
        core, tail = f, 0j
    else:
        core = f[:n - 3]
        tail = spacing * 3.0 / 8.0 * (f[n - 4] + 3.0 * f[n - 3] + 3.0 * f[n - 2] + f[n - 1])
    s = core[0] + core[-1] + 4.0 * core[1:-1:2].sum() + 2.0 * core[2:-2:2].sum()
    return complex(spacing * s / 3.0 + tail)


def horner(coefficients: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Evaluate a dense polynomial (ascending coefficients) at many points."""
    c = np.asarray(coefficients, dtype=complex)
    z = np.asarray(points, dtype=complex)
    out = np.full(z.shape, c[-1], dtype=complex)
    for k in range(c.shape[0] - 2, -1, -1):
        out = out * z + c[k]
    return out


def _sturm_count(diag: np.ndarray, off2: np.ndarray, probes: np.ndarray) -> np.ndarray:
    """Number of eigenvalues strictly below each probe (Sturm sequence)."""
    n = diag.shape[0]
    tiny = np.finfo(float).tiny
    count = np.zeros(probes.shape, dtype=np.int64)
    d = diag[0] - probes
    count += (d < 0.0)
    for i in range(1, n):
        d = np.where(np.abs(d) < tiny, -tiny, d)
        d = (diag[i] - probes) - off2[i - 1] / d
        count += (d < 0.0)
    return count


def tridiagonal_smallest(diag: np.ndarray, off: np.ndarray, k: int,
                         max_iter: int = 128) -> np.ndarray:
    """k smallest eigenvalues of a symmetric tridiagonal matrix, ascending.

    Bisection on Sturm counts; bracketed by Gershgorin discs, so it always
    converges to full float accuracy within ~70 iterations.
    """
    d = np.asarray(diag, dtype=float)
    e = np.asarray(off, dtype=float)
    n = d.shape[0]
    if e.shape[0] != n - 1:
        raise ValueError("off-diagonal must have length n-1")
    if not 1 <= k <= n:
        raise ValueError("k out of range")
    radius = np.zeros(n)
    radius[:-1] += np.abs(e)
    radius[1:] += np.abs(e)
    lo = np.full(k, np.min(d - radius))
    hi = np.full(k, np.max(d + radius))
    off2 = e * e
    targets = np.arange(k)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        cnt = _sturm_count(d, off2, mid)
        above = cnt > targets
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)
        if np.all(hi - lo <= 4.0 * np.finfo(float).eps * np.maximum(1.0, np.abs(hi))):
            break
    return 0.5 * (lo + hi)
