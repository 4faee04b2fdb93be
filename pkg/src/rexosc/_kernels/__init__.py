"""Kernel backend selection.

Prefers the compiled Cython core; falls back to the NumPy implementations
when the extension is missing or REXOSC_NO_EXTENSION=1 is set.  Both
backends expose the same five callables.
"""
import os

from . import fallback

if os.environ.get("REXOSC_NO_EXTENSION", "") not in ("", "0"):
    _impl = fallback
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = fallback

BACKEND = _impl.BACKEND
second_derivative_profile = _impl.second_derivative_profile
second_derivative_at = _impl.second_derivative_at
simpson = _impl.simpson
horner = _impl.horner
tridiagonal_smallest = _impl.tridiagonal_smallest

__all__ = [
    "BACKEND",
    "fallback",
    "horner",
    "second_derivative_at",
    "second_derivative_profile",
    "simpson",
    "tridiagonal_smallest",
]
