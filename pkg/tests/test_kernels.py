"""Backend agreement: compiled kernels against the NumPy fallback."""
import numpy as np
import pytest

from rexosc import _kernels
from rexosc._kernels import fallback


def _backends():
    names = [("fallback", fallback)]
    if _kernels.BACKEND == "compiled":
        from rexosc._kernels import _core
        names.append(("compiled", _core))
    return names


@pytest.mark.parametrize("name,impl", _backends())
def test_simpson_gaussian(name, impl):
    x = np.linspace(-10, 10, 4001)
    val = impl.simpson(np.exp(-x**2).astype(complex), x[1] - x[0])
    assert abs(val - np.sqrt(np.pi)) < 1e-12


@pytest.mark.parametrize("name,impl", _backends())
def test_stencil_profile_quadratic(name, impl):
    x = np.linspace(-1, 1, 101)
    out = impl.second_derivative_profile((x**2).astype(complex), x[1] - x[0])
    assert np.max(np.abs(out - 2.0)) < 1e-10


def test_backends_agree():
    rng = np.random.default_rng(0)
    backs = _backends()
    if len(backs) < 2:
        pytest.skip("compiled backend unavailable")
    a, b = backs[0][1], backs[1][1]

    f = rng.normal(size=301) + 1j * rng.normal(size=301)
    np.testing.assert_allclose(a.second_derivative_profile(f, 0.01),
                               b.second_derivative_profile(f, 0.01),
                               rtol=1e-13, atol=1e-10)
    assert abs(a.simpson(f, 0.01) - b.simpson(f, 0.01)) < 1e-12
    assert abs(a.simpson(f[:-1], 0.01) - b.simpson(f[:-1], 0.01)) < 1e-12
    assert abs(a.second_derivative_at(f, 0.01, 41)
               - b.second_derivative_at(f, 0.01, 41)) < 1e-8

    c = rng.normal(size=9) + 1j * rng.normal(size=9)
    z = rng.normal(size=200) + 1j * rng.normal(size=200)
    np.testing.assert_allclose(a.horner(c, z), b.horner(c, z), rtol=1e-12)

    d = rng.normal(size=400)
    e = rng.normal(size=399)
    np.testing.assert_allclose(a.tridiagonal_smallest(d, e, 7),
                               b.tridiagonal_smallest(d, e, 7),
                               rtol=1e-10, atol=1e-10)


@pytest.mark.parametrize("name,impl", _backends())
def test_eigenvalues_match_dense(name, impl):
    rng = np.random.default_rng(3)
    d = rng.normal(size=60)
    e = rng.normal(size=59)
    mat = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
    ref = np.sort(np.linalg.eigvalsh(mat))[:5]
    np.testing.assert_allclose(impl.tridiagonal_smallest(d, e, 5), ref,
                               rtol=1e-11, atol=1e-11)


@pytest.mark.parametrize("name,impl", _backends())
def test_horner_matches_numpy(name, impl):
    rng = np.random.default_rng(5)
    c = rng.normal(size=12) + 1j * rng.normal(size=12)
    z = rng.normal(size=50) + 1j * rng.normal(size=50)
    ref = np.polyval(c[::-1], z)
    np.testing.assert_allclose(impl.horner(c, z), ref, rtol=1e-12)


def test_forced_fallback_env(monkeypatch):
    import importlib
    import rexosc._kernels as kmod

    monkeypatch.setenv("REXOSC_NO_EXTENSION", "1")
    mod = importlib.reload(kmod)
    assert mod.BACKEND == "fallback"
    monkeypatch.delenv("REXOSC_NO_EXTENSION")
    mod = importlib.reload(kmod)
