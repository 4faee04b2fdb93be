"""Hermite-family polynomials with exact integer construction.

Provides the physicists' Hermite polynomials H_n, their nodeless companions
obtained by the imaginary-argument substitution (even index), and the
composite polynomials that appear in the numerators of extended-oscillator
eigenfunctions.  Also supplies Sturm-sequence real-root counting used by
regularity scans.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DomainError

# Construction stays integer-exact well past this; the guard leaves a wide
# margin over the co-dimensions the package is used with (m <= 12 in tests).
_MAX_INDEX = 64

_REAL_TOL = 1e-12


@dataclass(frozen=True)
class Polynomial:
    """Dense univariate polynomial, complex coefficients in ascending order."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coefficients)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if not coeffs:
            coeffs = (0j,)
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, z):
        return evaluate(self, z)

    def is_zero(self) -> bool:
        return self.coefficients == (0j,)


def evaluate(p: Polynomial, z):
    """Horner evaluation at a scalar or array argument."""
    if np.isscalar(z) or isinstance(z, (int, float, complex)):
        out = _kernels.horner(np.array(p.coefficients), np.array([z], dtype=complex))
        return complex(out[0])
    return _kernels.horner(np.array(p.coefficients), np.asarray(z, dtype=complex))


def derivative(p: Polynomial) -> Polynomial:
    """Formal derivative."""
    c = p.coefficients
    if len(c) == 1:
        return Polynomial((0j,))
    return Polynomial(tuple(k * c[k] for k in range(1, len(c))))


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    out = np.convolve(np.array(p.coefficients), np.array(q.coefficients))
    return Polynomial(tuple(out))


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    n = max(len(p.coefficients), len(q.coefficients))
    out = [0j] * n
    for i, c in enumerate(p.coefficients):
        out[i] += c
    for i, c in enumerate(q.coefficients):
        out[i] += c
    return Polynomial(tuple(out))


def compose_linear(p: Polynomial, alpha: complex, beta: complex) -> Polynomial:
    """Coefficients of p(alpha*t + beta) as a polynomial in t."""
    result = Polynomial((0j,))
    lin = Polynomial((beta, alpha))
    for c in reversed(p.coefficients):
        result = add(multiply(result, lin), Polynomial((c,)))
    return result


def conjugate_coefficients(p: Polynomial) -> Polynomial:
    """Polynomial with conjugated coefficients (equals conj(p(conj(t))))."""
    return Polynomial(tuple(complex(c).conjugate() for c in p.coefficients))


# -- integer-exact constructions --------------------------------------------

def _int_hermite(n: int) -> list:
    if n < 0:
        raise DomainError("index must be non-negative")
    if n > _MAX_INDEX:
        raise DomainError(f"index {n} exceeds integer-exact construction limit")
    a = [1]
    if n == 0:
        return a
    b = [0, 2]
    for k in range(1, n):
        c = [0] + [2 * x for x in b]  # 2x * H_k
        for i, x in enumerate(a):
            c[i] -= 2 * k * x
        a, b = b, c
    return b


def _int_pseudo_hermite(m: int) -> list:
    h = _int_hermite(m)
    out = [0] * len(h)
    for k in range(m % 2, len(h), 2):
        out[k] = h[k] * (-1) ** ((k - m) // 2)
    return out


def _int_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _int_add(a: list, b: list) -> list:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return out


def hermite(n: int) -> Polynomial:
    """Physicists' Hermite polynomial H_n via the three-term recurrence."""
    return Polynomial(tuple(_int_hermite(n)))


def pseudo_hermite(m: int) -> Polynomial:
    """Nodeless Hermite companion: substitute an imaginary argument into H_m
    and strip the overall phase.  Real coefficients; strictly positive on the
    real line for even m, a single real zero at the origin for odd m."""
    return Polynomial(tuple(_int_pseudo_hermite(m)))


def exceptional_hermite(m: int, j: int) -> Polynomial:
    """Numerator polynomial of the extended-oscillator eigenfunctions.

    Index j = 0 is the constant 1 (ground level); j = n + 1 >= 1 combines
    the pseudo companion of index m with H_{n+1} and H_n.
    """
    if j < 0:
        raise DomainError("index must be non-negative")
    if j == 0:
        return Polynomial((1,))
    pm = _int_pseudo_hermite(m)
    dpm = [k * pm[k] for k in range(1, len(pm))] or [0]
    out = _int_add(_int_mul(pm, _int_hermite(j)), _int_mul(_int_hermite(j - 1), dpm))
    return Polynomial(tuple(out))


def pseudo_hermite_zeros(m: int) -> np.ndarray:
    """Complex zeros of the index-m pseudo companion (all purely imaginary)."""
    return -1j * hermite_real_roots(m)


def hermite_real_roots(m: int) -> np.ndarray:
    """All real roots of H_m, ascending (simple roots, |x| < sqrt(2m+1))."""
    if m == 0:
        return np.array([])
    bound = float(np.sqrt(2.0 * m + 1.0)) + 1.0
    return np.array(isolate_real_roots(hermite(m), -bound, bound))


# -- Sturm sequences ---------------------------------------------------------

def _real_coeffs(p: Polynomial) -> np.ndarray:
    c = np.array(p.coefficients)
    scale = np.max(np.abs(c)) or 1.0
    if np.max(np.abs(c.imag)) > _REAL_TOL * scale:
        raise DomainError("polynomial coefficients are not real")
    return c.real.copy()


def _trim(c: np.ndarray, tol: float) -> np.ndarray:
    scale = np.max(np.abs(c)) if c.size else 0.0
    if scale == 0.0:
        return np.zeros(1)
    k = c.size
    while k > 1 and abs(c[k - 1]) <= tol * scale:
        k -= 1
    return c[:k]


def _poly_rem(a: np.ndarray, b: np.ndarray, tol: float) -> np.ndarray:
    """Remainder of a / b on float coefficients with degree truncation."""
    r = a.copy()
    db = b.size - 1
    lead = b[-1]
    while r.size - 1 >= db and r.size > 1:
        k = r.size - 1 - db
        q = r[-1] / lead
        r = r[:-1].copy()
        if q != 0.0:
            r[k:k + db] -= q * b[:-1]
        r = _trim(r, tol)
        if r.size == 1 and r[0] == 0.0:
            break
    return r


def _sturm_chain(c: np.ndarray, tol: float) -> list:
    chain = [_trim(c, tol)]
    if chain[0].size > 1:
        d = np.array([k * c[k] for k in range(1, c.size)])
        chain.append(_trim(d, tol))
    while chain[-1].size > 1:
        r = _poly_rem(chain[-2], chain[-1], tol)
        if r.size == 1 and r[0] == 0.0:
            break
        chain.append(-r)
    return chain


def _variations(chain: list, x: float) -> int:
    vals = []
    for c in chain:
        v = 0.0
        for ck in c[::-1]:
            v = v * x + ck
        scale = np.max(np.abs(c)) * max(1.0, abs(x)) ** (c.size - 1)
        if abs(v) > 1e-14 * scale:
            vals.append(v)
    count = 0
    for u, w in zip(vals, vals[1:]):
        if (u > 0) != (w > 0):
            count += 1
    return count


def count_real_roots(p: Polynomial, lo: float, hi: float) -> int:
    """Distinct real roots of a real-coefficient polynomial in (lo, hi]."""
    if not lo < hi:
        raise DomainError("need lo < hi")
    c = _real_coeffs(p)
    chain = _sturm_chain(c, _REAL_TOL)
    if chain[0].size == 1:
        return 0
    return _variations(chain, lo) - _variations(chain, hi)


def isolate_real_roots(p: Polynomial, lo: float, hi: float,
                       tol: float = 1e-12) -> list:
    """Locate the distinct real roots of p in (lo, hi] by Sturm bisection."""
    c = _real_coeffs(p)
    chain = _sturm_chain(c, _REAL_TOL)
    if chain[0].size == 1:
        return []
    roots = []

    def recurse(a: float, b: float, count: int):
        if count == 0:
            return
        if b - a <= tol * max(1.0, abs(a), abs(b)):
            roots.extend([0.5 * (a + b)] * min(count, 1))
            return
        mid = 0.5 * (a + b)
        left = _variations(chain, a) - _variations(chain, mid)
        recurse(a, mid, left)
        recurse(mid, b, count - left)

    recurse(lo, hi, _variations(chain, lo) - _variations(chain, hi))
    return sorted(roots)
