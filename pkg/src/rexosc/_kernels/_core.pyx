# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: stencil sweeps, Simpson quadrature, Horner evaluation,
and a QL implicit-shift eigensolver for symmetric tridiagonal matrices.

Mirrors the contracts of ``fallback.py``; selected at import by
``rexosc._kernels``.
"""
import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, hypot

cnp.import_array()

BACKEND = "compiled"

cdef double[9] _C8
_C8[0] = -1.0 / 560; _C8[1] = 8.0 / 315; _C8[2] = -1.0 / 5
_C8[3] = 8.0 / 5;    _C8[4] = -205.0 / 72; _C8[5] = 8.0 / 5
_C8[6] = -1.0 / 5;   _C8[7] = 8.0 / 315;  _C8[8] = -1.0 / 560


def second_derivative_profile(samples, double spacing):
    """Second derivative at all interior points (4 trimmed per side)."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] f = \
        np.ascontiguousarray(samples, dtype=np.complex128)
    cdef Py_ssize_t n = f.shape[0]
    if n < 9:
        raise ValueError("need at least 9 samples for the 8th-order stencil")
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = \
        np.empty(n - 8, dtype=np.complex128)
    cdef Py_ssize_t i, j
    cdef double complex acc
    cdef double h2 = spacing * spacing
    for i in range(n - 8):
        acc = 0
        for j in range(9):
            acc = acc + _C8[j] * f[i + j]
        out[i] = acc / h2
    return out


def second_derivative_at(samples, double spacing, Py_ssize_t index):
    """Second derivative at one interior index."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] f = \
        np.ascontiguousarray(samples, dtype=np.complex128)
    cdef double complex acc = 0
    cdef Py_ssize_t j
    for j in range(9):
        acc = acc + _C8[j] * f[index - 4 + j]
    return complex(acc / (spacing * spacing))


def simpson(samples, double spacing):
    """Composite Simpson rule (3/8 correction for even sample counts)."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] f = \
        np.ascontiguousarray(samples, dtype=np.complex128)
    cdef Py_ssize_t n = f.shape[0]
    if n < 2:
        return 0j
    if n == 2:
        return complex(spacing * (f[0] + f[1]) / 2.0)
    cdef Py_ssize_t m = n if n % 2 == 1 else n - 3
    cdef double complex tail = 0
    if n % 2 == 0:
        tail = spacing * 3.0 / 8.0 * (f[n - 4] + 3.0 * f[n - 3] + 3.0 * f[n - 2] + f[n - 1])
    cdef double complex s = f[0] + f[m - 1]
    cdef Py_ssize_t i
    for i in range(1, m - 1):
        if i % 2 == 1:
            s = s + 4.0 * f[i]
        else:
            s = s + 2.0 * f[i]
    return complex(spacing * s / 3.0 + tail)


def horner(coefficients, points):
    """Evaluate a dense polynomial (ascending coefficients) at many points."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] c = \
        np.ascontiguousarray(coefficients, dtype=np.complex128)
    arr = np.ascontiguousarray(points, dtype=np.complex128)
    shape = arr.shape
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] z = arr.ravel()
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = \
        np.empty(z.shape[0], dtype=np.complex128)
    cdef Py_ssize_t i, k
    cdef Py_ssize_t nc = c.shape[0]
    cdef double complex acc, zi
    for i in range(z.shape[0]):
        zi = z[i]
        acc = c[nc - 1]
        for k in range(nc - 2, -1, -1):
            acc = acc * zi + c[k]
        out[i] = acc
    return out.reshape(shape)


cdef inline double _sign(double a, double b):
    return fabs(a) if b >= 0.0 else -fabs(a)


def tridiagonal_smallest(diag, off, Py_ssize_t k, int max_iter=50):
    """k smallest eigenvalues, ascending, via QL iteration with implicit shifts."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] d = \
        np.array(diag, dtype=np.float64, copy=True)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] e = np.zeros(d.shape[0], dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] off_arr = \
        np.ascontiguousarray(off, dtype=np.float64)
    cdef Py_ssize_t n = d.shape[0]
    if off_arr.shape[0] != n - 1:
        raise ValueError("off-diagonal must have length n-1")
    if not 1 <= k <= n:
        raise ValueError("k out of range")
    cdef Py_ssize_t i
    for i in range(n - 1):
        e[i] = off_arr[i]
    e[n - 1] = 0.0

    cdef Py_ssize_t l, m, it
    cdef double dd, g, r, s, c, p, f, b
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = fabs(d[m]) + fabs(d[m + 1])
                if fabs(e[m]) + dd == dd:
                    break
                m += 1
            if m == l:
                break
            it += 1
            if it > max_iter:
                raise RuntimeError("QL iteration did not converge")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + _sign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
            else:
                d[l] -= p
                e[l] = g
                e[m] = 0.0
                continue
            # underflow recovery path: retry the sweep
            continue
    d.sort()
    return d[:k].copy()
