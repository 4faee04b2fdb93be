"""Oscillator specifications, rationally extended potentials, closed-form
eigenfunctions, energy ladders, co-dimension admissibility, and
degeneracy-grouped spectrum tables.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import poly, transform
from .errors import DomainError, ShapeError, SingularityError
from .transform import CouplingValue, DecoupledSystem

EVEN_ONLY = "even_only"
EVEN_AND_ODD = "even_and_odd"

_CASES = {
    "none": (),
    "linear": ("lambda0",),
    "quadratic2d": ("lam",),
    "lq3d": ("lambda0", "lam"),
    "q1_3d": ("lambda2", "lambda3"),
    "q2_3d": ("lambda1", "lam"),
}


@dataclass(frozen=True)
class OscillatorSpec:
    """Dimension, per-axis frequencies, and a tagged perturbation case."""

    dimension: int
    frequencies: tuple
    case: str = "none"
    couplings: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.dimension not in (1, 2, 3):
            raise DomainError("dimension must be 1, 2, or 3")
        freqs = tuple(float(w) for w in self.frequencies)
        if len(freqs) != self.dimension or any(w <= 0 for w in freqs):
            raise DomainError("need one positive frequency per axis")
        object.__setattr__(self, "frequencies", freqs)
        if self.case not in _CASES:
            raise DomainError(f"unknown perturbation case {self.case!r}")
        expected = set(_CASES[self.case])
        if set(self.couplings) != expected:
            raise DomainError(f"case {self.case!r} needs couplings {sorted(expected)}")
        if self.case == "linear" and self.dimension != 1:
            raise DomainError("linear case is one-dimensional")
        if self.case == "quadratic2d" and self.dimension != 2:
            raise DomainError("quadratic2d case is two-dimensional")
        if self.case in ("lq3d", "q1_3d", "q2_3d") and self.dimension != 3:
            raise DomainError(f"{self.case} case is three-dimensional")
        if self.case in ("q1_3d", "q2_3d") and freqs[0] != freqs[1]:
            raise DomainError(f"{self.case} requires equal x and y frequencies")
        if self.case == "q2_3d":
            l1 = self.couplings["lambda1"]
            if l1.is_imaginary and l1.magnitude != 0:
                raise DomainError("the xy coupling must be real in this case")

    # convenience constructors -------------------------------------------
    @classmethod
    def oscillator(cls, *frequencies: float) -> "OscillatorSpec":
        return cls(len(frequencies), tuple(frequencies))

    @classmethod
    def linear_1d(cls, omega: float, lambda0: CouplingValue) -> "OscillatorSpec":
        return cls(1, (omega,), "linear", {"lambda0": lambda0})

    @classmethod
    def quadratic_2d(cls, omega1: float, omega2: float,
                     lam: CouplingValue) -> "OscillatorSpec":
        return cls(2, (omega1, omega2), "quadratic2d", {"lam": lam})

    @classmethod
    def lq_3d(cls, omega1: float, omega2: float, omega3: float,
              lambda0: CouplingValue, lam: CouplingValue) -> "OscillatorSpec":
        return cls(3, (omega1, omega2, omega3), "lq3d",
                   {"lambda0": lambda0, "lam": lam})

    @classmethod
    def q1_3d(cls, omega: float, omega3: float, lambda2: CouplingValue,
              lambda3: CouplingValue) -> "OscillatorSpec":
        return cls(3, (omega, omega, omega3), "q1_3d",
                   {"lambda2": lambda2, "lambda3": lambda3})

    @classmethod
    def q2_3d(cls, omega: float, omega3: float, lambda1: CouplingValue,
              lam: CouplingValue) -> "OscillatorSpec":
        return cls(3, (omega, omega, omega3), "q2_3d",
                   {"lambda1": lambda1, "lam": lam})

    @property
    def is_hermitian(self) -> bool:
        return all(not (c.is_imaginary and c.magnitude != 0)
                   for c in self.couplings.values())


@dataclass(frozen=True)
class REConfig:
    """Per-tilde-axis co-dimensions of the rational extension."""

    codimensions: tuple

    def __post_init__(self):
        ms = tuple(int(m) for m in self.codimensions)
        if any(m < 0 for m in ms):
            raise DomainError("co-dimensions must be non-negative")
        object.__setattr__(self, "codimensions", ms)


@dataclass(frozen=True)
class Eigenstate:
    """Per-axis level: None marks the ground level, n >= 0 the (n+1)-th
    rung of the excited ladder (energy contribution (n + m + 1) per axis)."""

    levels: tuple

    def __post_init__(self):
        lv = tuple(None if x is None else int(x) for x in self.levels)
        if any(x is not None and x < 0 for x in lv):
            raise DomainError("excited indices must be non-negative")
        object.__setattr__(self, "levels", lv)

    @classmethod
    def ground(cls, dimension: int) -> "Eigenstate":
        return cls((None,) * dimension)

    @classmethod
    def excited(cls, *ns: int) -> "Eigenstate":
        return cls(tuple(ns))

    def label(self) -> str:
        return ",".join("g" if x is None else str(x) for x in self.levels)


@dataclass(frozen=True)
class SpectrumEntry:
    energy: float
    multiplicity: int
    states: tuple


@dataclass(frozen=True)
class SpectrumTable:
    entries: tuple
    frequencies_real: bool = True


def decouple(spec: OscillatorSpec) -> DecoupledSystem:
    """Coordinate map and tilde frequencies for any supported spec."""
    w = spec.frequencies
    c = spec.couplings
    if spec.case == "none":
        cmap = transform.CoordinateMap(np.eye(spec.dimension, dtype=complex),
                                       np.zeros(spec.dimension, dtype=complex))
        return DecoupledSystem(tuple(complex(x) for x in w), 0j, cmap)
    if spec.case == "linear":
        return transform.shift_map_1d(w[0], c["lambda0"])
    if spec.case == "quadratic2d":
        return transform.rotate_map_2d(w[0], w[1], c["lam"])
    if spec.case == "lq3d":
        return transform.decouple_3d_lq(w[0], w[1], w[2], c["lambda0"], c["lam"])
    if spec.case == "q1_3d":
        return transform.decouple_3d_q1(w[0], w[2], c["lambda2"], c["lambda3"])
    return transform.decouple_3d_q2(w[0], w[2], c["lambda1"].magnitude, c["lam"])


def base_potential(spec: OscillatorSpec, point):
    """The perturbed quadratic potential, literally as written."""
    p = np.asarray(point, dtype=complex)
    if p.shape[0] != spec.dimension:
        raise ShapeError("point dimension mismatch")
    v = sum(0.25 * w**2 * p[i] ** 2 for i, w in enumerate(spec.frequencies))
    c = spec.couplings
    if spec.case == "linear":
        v = v + c["lambda0"].value * p[0]
    elif spec.case == "quadratic2d":
        v = v + 0.5 * c["lam"].value * p[0] * p[1]
    elif spec.case == "lq3d":
        v = v + c["lambda0"].value * p[2] + 0.5 * c["lam"].value * p[0] * p[1]
    elif spec.case == "q1_3d":
        v = v + 0.5 * (c["lambda2"].value * p[1] * p[2]
                       + c["lambda3"].value * p[2] * p[0])
    elif spec.case == "q2_3d":
        v = v + 0.5 * c["lambda1"].value * p[0] * p[1] \
            + 0.5 * c["lam"].value * (p[1] * p[2] + p[2] * p[0])
    return v


_TINY = 1e-300


def rational_term_1d(omega, m: int, xt):
    """Rational extension term of co-dimension m along one tilde axis.

    Derivatives act on the composite of the pseudo companion with the scaled
    argument sqrt(omega/2)*xt, which is the reading that reproduces the
    closed forms of the shifted potentials exactly.
    """
    pm = poly.pseudo_hermite(m)
    s = np.sqrt(complex(omega) / 2)
    u = s * np.asarray(xt, dtype=complex)
    h = poly.evaluate(pm, u)
    if np.any(np.abs(h) < _TINY):
        raise SingularityError("rational term evaluated at a denominator zero")
    d1 = poly.evaluate(poly.derivative(pm), u) * s
    d2 = poly.evaluate(poly.derivative(poly.derivative(pm)), u) * s * s
    return -2.0 * (d2 / h - (d1 / h) ** 2 + complex(omega) / 2)


def admissible_codimensions(spec: OscillatorSpec) -> tuple:
    """Per-tilde-axis rule: odd co-dimensions are regular only on a shift
    axis whose linear coupling is imaginary and nonzero."""
    rules = [EVEN_ONLY] * spec.dimension
    if spec.case == "linear":
        l0 = spec.couplings["lambda0"]
        if l0.is_imaginary and l0.magnitude != 0:
            rules[0] = EVEN_AND_ODD
    elif spec.case == "lq3d":
        l0 = spec.couplings["lambda0"]
        if l0.is_imaginary and l0.magnitude != 0:
            rules[2] = EVEN_AND_ODD
    return tuple(rules)


def validate_config(spec: OscillatorSpec, config: REConfig) -> None:
    if len(config.codimensions) != spec.dimension:
        raise DomainError("one co-dimension per axis required")
    rules = admissible_codimensions(spec)
    for i, (m, rule) in enumerate(zip(config.codimensions, rules)):
        if m % 2 == 1 and rule == EVEN_ONLY:
            raise DomainError(
                f"odd co-dimension {m} on axis {i} makes the potential singular")


def re_potential(spec: OscillatorSpec, config: REConfig, point,
                 validate: bool = True):
    """Rationally extended potential in the original coordinates.

    ``validate=False`` skips the admissibility gate so the closed form of a
    singular configuration can still be sampled off its poles.
    """
    if validate:
        validate_config(spec, config)
    elif len(config.codimensions) != spec.dimension:
        raise DomainError("one co-dimension per axis required")
    sys = decouple(spec)
    t = sys.coordinate_map.forward(np.asarray(point, dtype=complex))
    v = base_potential(spec, point)
    for i, (w, m) in enumerate(zip(sys.tilde_frequencies, config.codimensions)):
        v = v + rational_term_1d(w, m, t[i])
    return v


def axis_eigenfunction(omega, m: int, level, t):
    """One tilde-axis factor (unnormalized).

    The ground factor carries a phase i^m so that parity-time eigenvalues of
    imaginary-shift configurations come out +1 on the ground level.
    """
    pm = poly.pseudo_hermite(m)
    s = np.sqrt(complex(omega) / 2)
    u = s * np.asarray(t, dtype=complex)
    h = poly.evaluate(pm, u)
    if np.any(np.abs(h) < _TINY):
        raise SingularityError("eigenfunction evaluated at a denominator zero")
    gauss = np.exp(-complex(omega) * np.asarray(t, dtype=complex) ** 2 / 4)
    if level is None:
        return (1j) ** m * gauss / h
    return gauss / h * poly.evaluate(poly.exceptional_hermite(m, level + 1), u)


def eigenfunction(spec: OscillatorSpec, config: REConfig, state: Eigenstate,
                  point, validate: bool = True):
    """Closed-form eigenfunction (unnormalized) in the original coordinates."""
    if validate:
        validate_config(spec, config)
    if len(state.levels) != spec.dimension:
        raise DomainError("one level per axis required")
    sys = decouple(spec)
    t = sys.coordinate_map.forward(np.asarray(point, dtype=complex))
    out = 1.0 + 0j
    for i, (w, m, lv) in enumerate(zip(sys.tilde_frequencies,
                                       config.codimensions, state.levels)):
        out = out * axis_eigenfunction(w, m, lv, t[i])
    return out


def relative_energy(config: REConfig, state: Eigenstate,
                    sys: DecoupledSystem) -> complex:
    """Energy above the joint ground level: sum of (n + m + 1) * omega_tilde
    over excited axes (ground axes contribute zero)."""
    if len(state.levels) != len(config.codimensions):
        raise DomainError("state and config must cover the same axes")
    total = 0j
    for w, m, lv in zip(sys.tilde_frequencies, config.codimensions, state.levels):
        if lv is not None:
            total += (lv + m + 1) * complex(w)
    return total


def unextended_energy(spec: OscillatorSpec, state) -> complex:
    """Eigenvalue of the unextended perturbed oscillator: sum of
    (n + 1/2) * omega_tilde plus the completing-the-square constant."""
    ns = state.levels if isinstance(state, Eigenstate) else tuple(state)
    if len(ns) != spec.dimension:
        raise DomainError("one quantum number per axis required")
    if any(n is None for n in ns):
        raise DomainError("unextended states use plain quantum numbers")
    sys = decouple(spec)
    return sum((n + 0.5) * complex(w)
               for n, w in zip(ns, sys.tilde_frequencies)) + sys.potential_constant


def _rational_weights(freqs, tol: float = 1e-9):
    """Integer weights W_i with omega_i proportional to W_i, or None."""
    base = min(f.real for f in freqs)
    fracs = []
    for f in freqs:
        if abs(f.imag) > tol * abs(f):
            return None
        frac = Fraction(f.real / base).limit_denominator(64)
        if abs(f.real / base - float(frac)) > tol * max(1.0, f.real / base):
            return None
        fracs.append(frac)
    den = math.lcm(*(fr.denominator for fr in fracs))
    return [fr.numerator * (den // fr.denominator) for fr in fracs], base / den


def spectrum(spec: OscillatorSpec, config: REConfig,
             energy_cutoff: float, tolerance: float = 1e-9) -> SpectrumTable:
    """All states with relative energy <= cutoff, grouped into degenerate
    levels.

    Rational tilde-frequency ratios are detected and grouped with exact
    integer arithmetic; otherwise levels closer than ``tolerance`` merge.
    """
    validate_config(spec, config)
    sys = decouple(spec)
    freqs = [complex(w) for w in sys.tilde_frequencies]
    real = all(abs(w.imag) <= 1e-12 * max(1.0, abs(w)) for w in freqs)
    axis_levels = []
    for w, m in zip(freqs, config.codimensions):
        levels = [None]
        n = 0
        while (n + m + 1) * w.real <= energy_cutoff + 1e-12:
            levels.append(n)
            n += 1
        axis_levels.append(levels)

    weights = _rational_weights(freqs) if real else None
    groups: dict = {}
    for combo in itertools.product(*axis_levels):
        state = Eigenstate(combo)
        e = relative_energy(config, state, sys).real
        if e > energy_cutoff + 1e-12:
            continue
        if weights is not None:
            ws, unit = weights
            key = sum((lv + m + 1) * wt for lv, m, wt
                      in zip(combo, config.codimensions, ws) if lv is not None)
            groups.setdefault(key, []).append((e, state))
        else:
            for key in groups:
                if abs(key - e) <= tolerance * max(1.0, abs(key)):
                    groups[key].append((e, state))
                    break
            else:
                groups.setdefault(e, []).append((e, state))

    entries = []
    for key, members in groups.items():
        energy = members[0][0]
        states = tuple(st for _, st in members)
        entries.append(SpectrumEntry(energy, len(states), states))
    entries.sort(key=lambda s: s.energy)
    return SpectrumTable(tuple(entries), frequencies_real=real)
