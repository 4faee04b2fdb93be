"""Command-line front end.

Subcommands: transform, degeneracy, spectrum, table, verify, plotdata.
Couplings are written flavor-tagged ("real:1.5", "imaginary:0.3"); complex
numbers serialize as {"re": .., "im": ..}; jobs round-trip through a
canonical JSON form (sorted keys, fixed separators).

Exit codes: 0 success, 1 validation failure, 2 numerical failure,
3 singular or degenerate configuration.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import model, transform, verify
from .errors import (
    DegenerateDirectionError,
    DegenerateTransformError,
    DomainError,
    FlavorError,
    IndeterminateError,
    NumericalFailureError,
    RexoscError,
    ShapeError,
    SingularityError,
)
from .model import Eigenstate, OscillatorSpec, REConfig
from .transform import CouplingValue

_VALIDATION = (DomainError, ShapeError, FlavorError)
_NUMERICAL = (NumericalFailureError, IndeterminateError)
_SINGULAR = (SingularityError, DegenerateTransformError, DegenerateDirectionError)


def _complex_dict(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _coupling_dict(c: CouplingValue) -> dict:
    return {"flavor": c.flavor, "magnitude": c.magnitude}


def _coupling_from(d) -> CouplingValue:
    return CouplingValue(d["magnitude"], d["flavor"])


@dataclass(frozen=True)
class JobConfig:
    """One CLI job: spec, extension config, states, grid and output options."""

    spec: OscillatorSpec
    config: REConfig
    states: tuple
    grids: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "spec": {
                "dimension": self.spec.dimension,
                "frequencies": list(self.spec.frequencies),
                "case": self.spec.case,
                "couplings": {k: _coupling_dict(v)
                              for k, v in sorted(self.spec.couplings.items())},
            },
            "config": {"codimensions": list(self.config.codimensions)},
            "states": [["g" if lv is None else lv for lv in st.levels]
                       for st in self.states],
            "grids": dict(sorted(self.grids.items())),
            "outputs": dict(sorted(self.outputs.items())),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "JobConfig":
        s = d["spec"]
        spec = OscillatorSpec(s["dimension"], tuple(s["frequencies"]), s["case"],
                              {k: _coupling_from(v) for k, v in s["couplings"].items()})
        config = REConfig(tuple(d["config"]["codimensions"]))
        states = tuple(Eigenstate(tuple(None if x == "g" else int(x) for x in st))
                       for st in d["states"])
        return cls(spec, config, states, dict(d.get("grids", {})),
                   dict(d.get("outputs", {})))

    @classmethod
    def from_json(cls, text: str) -> "JobConfig":
        return cls.from_dict(json.loads(text))


def _parse_state(text: str, dimension: int) -> Eigenstate:
    parts = text.split(",")
    if len(parts) != dimension:
        raise DomainError(f"state {text!r} needs one level per axis")
    return Eigenstate(tuple(None if p.strip() in ("g", "G") else int(p)
                            for p in parts))


def _build_spec(args) -> OscillatorSpec:
    omegas = tuple(float(w) for w in args.omega.split(","))
    dim = args.dim
    if len(omegas) != dim:
        raise DomainError("--omega must list one frequency per axis")
    linear = CouplingValue.parse(args.linear) if args.linear else None
    coupling = CouplingValue.parse(args.coupling) if args.coupling else None
    if dim == 1:
        if linear:
            return OscillatorSpec.linear_1d(omegas[0], linear)
        return OscillatorSpec.oscillator(*omegas)
    if dim == 2:
        if coupling:
            return OscillatorSpec.quadratic_2d(omegas[0], omegas[1], coupling)
        return OscillatorSpec.oscillator(*omegas)
    case = args.case
    if case == "lq":
        return OscillatorSpec.lq_3d(omegas[0], omegas[1], omegas[2],
                                    linear or CouplingValue.zero(),
                                    coupling or CouplingValue.zero())
    if case == "q1":
        if not (args.lambda2 and args.lambda3):
            raise DomainError("case q1 needs --lambda2 and --lambda3")
        return OscillatorSpec.q1_3d(omegas[0], omegas[2],
                                    CouplingValue.parse(args.lambda2),
                                    CouplingValue.parse(args.lambda3))
    if case == "q2":
        if args.lambda1 is None or coupling is None:
            raise DomainError("case q2 needs --lambda1 and --coupling")
        return OscillatorSpec.q2_3d(omegas[0], omegas[2],
                                    CouplingValue.parse(args.lambda1), coupling)
    if case:
        raise DomainError(f"unknown 3D case {case!r}")
    return OscillatorSpec.oscillator(*omegas)


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _ratio_string(freqs) -> str | None:
    vals = [complex(w).real for w in freqs]
    base = min(vals)
    fracs = []
    for v in vals:
        fr = Fraction(v / base).limit_denominator(64)
        if abs(v / base - float(fr)) > 1e-9:
            return None
        fracs.append(fr)
    den = np.lcm.reduce([fr.denominator for fr in fracs])
    ints = [fr.numerator * (den // fr.denominator) for fr in fracs]
    return ":".join(str(i) for i in ints)


# ------------------------------------------------------------- subcommands

def cmd_transform(args) -> int:
    spec = _build_spec(args)
    sys_ = model.decouple(spec)
    out = {
        "case": spec.case,
        "tilde_frequencies": [_complex_dict(w) for w in sys_.tilde_frequencies],
        "potential_constant": _complex_dict(sys_.potential_constant),
        "linear": [[_complex_dict(z) for z in row]
                   for row in sys_.coordinate_map.linear],
        "shift": [_complex_dict(z) for z in sys_.coordinate_map.shift],
        "real_spectrum": None,
        "tilde_ratio": _ratio_string(sys_.tilde_frequencies) if sys_.is_real else None,
    }
    if spec.case == "quadratic2d":
        lam = spec.couplings["lam"]
        out["mixing"] = _complex_dict(
            transform.mixing_factor_2d(*spec.frequencies, lam))
        out["real_spectrum"] = transform.spectral_reality_2d(*spec.frequencies, lam)
    elif spec.case == "lq3d":
        v = transform.spectral_reality_3d(
            "lq", omega1=spec.frequencies[0], omega2=spec.frequencies[1],
            omega3=spec.frequencies[2], lambda0=spec.couplings["lambda0"],
            lam=spec.couplings["lam"])
        out["real_spectrum"] = v.real
        out["certificate"] = v.certificate
    elif spec.case == "q1_3d":
        v = transform.spectral_reality_3d(
            "q1", omega=spec.frequencies[0], omega3=spec.frequencies[2],
            lambda2=spec.couplings["lambda2"], lambda3=spec.couplings["lambda3"])
        out["real_spectrum"] = v.real
        out["certificate"] = v.certificate
    elif spec.case == "q2_3d":
        v = transform.spectral_reality_3d(
            "q2", omega=spec.frequencies[0], omega3=spec.frequencies[2],
            lambda1=spec.couplings["lambda1"].magnitude, lam=spec.couplings["lam"])
        out["real_spectrum"] = v.real
        out["certificate"] = v.certificate
    else:
        out["real_spectrum"] = sys_.is_real
    _emit(args, json.dumps(out, sort_keys=True, indent=2) + "\n")
    return 0


def cmd_degeneracy(args) -> int:
    ratio = Fraction(args.ratio)
    flavor = args.flavor
    if args.dim == 2:
        omegas = [float(w) for w in args.omega.split(",")]
        coupling = transform.degeneracy_coupling_2d(ratio, omegas[0], omegas[1],
                                                    flavor=flavor)
        lam = CouplingValue(coupling.magnitude, coupling.flavor)
        freqs = transform.tilde_frequencies_2d(omegas[0], omegas[1], lam)
    elif args.dim == 3:
        omegas = [float(w) for w in args.omega.split(",")]
        l1 = CouplingValue.parse(args.lambda1).magnitude if args.lambda1 else None
        coupling = transform.degeneracy_coupling_3d(
            args.case, ratio, omega=omegas[0], omega3=omegas[-1],
            lambda1=l1, flavor=flavor)
        if args.case == "q2":
            freqs = transform.tilde_frequencies_q2(
                omegas[0], omegas[-1], l1,
                CouplingValue(coupling.magnitude, coupling.flavor))[1:]
        else:
            sysq = transform.decouple_3d_q1(
                omegas[0], omegas[-1],
                CouplingValue(coupling.magnitude, coupling.flavor),
                CouplingValue.zero())
            freqs = sysq.tilde_frequencies[1:]
    else:
        raise DomainError("degeneracy solving applies to dimensions 2 and 3")
    out = {
        "coupling": _coupling_dict(coupling),
        "target_ratio": str(ratio),
        "tilde_frequencies": [_complex_dict(w) for w in freqs],
        "achieved_ratio": _ratio_string(freqs),
    }
    _emit(args, json.dumps(out, sort_keys=True, indent=2) + "\n")
    return 0


def cmd_spectrum(args) -> int:
    job = _job_from_args(args)
    table = model.spectrum(job.spec, job.config, args.cutoff)
    if args.format == "json":
        out = {
            "frequencies_real": table.frequencies_real,
            "entries": [{"energy": e.energy, "multiplicity": e.multiplicity,
                         "states": [st.label() for st in e.states]}
                        for e in table.entries],
        }
        _emit(args, json.dumps(out, sort_keys=True, indent=2) + "\n")
    else:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["energy", "multiplicity", "states"])
        for e in table.entries:
            w.writerow([f"{e.energy:.12g}", e.multiplicity,
                        ";".join(st.label() for st in e.states)])
        _emit(args, buf.getvalue())
    return 0


def cmd_table(args) -> int:
    omega = float(args.omega)
    lam0 = CouplingValue.parse(args.linear) if args.linear else CouplingValue.zero()
    spec = (OscillatorSpec.linear_1d(omega, lam0) if lam0 else
            OscillatorSpec.oscillator(omega))
    xs = [float(x) for x in args.xs.split(",")]
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["m", "x", "re_V", "im_V", "re_psi0", "im_psi0",
                "re_psi1", "im_psi1"])
    for m in range(args.max_m + 1):
        config = REConfig((m,))
        for x in xs:
            pt = np.array([x], dtype=complex)
            v = complex(model.re_potential(spec, config, pt, validate=False))
            p0 = complex(model.eigenfunction(spec, config, Eigenstate((None,)),
                                             pt, validate=False))
            p1 = complex(model.eigenfunction(spec, config, Eigenstate((0,)),
                                             pt, validate=False))
            w.writerow([m, f"{x:.12g}", f"{v.real:.12g}", f"{v.imag:.12g}",
                        f"{p0.real:.12g}", f"{p0.imag:.12g}",
                        f"{p1.real:.12g}", f"{p1.imag:.12g}"])
    _emit(args, buf.getvalue())
    return 0


def _job_from_args(args) -> JobConfig:
    if getattr(args, "job", None):
        with open(args.job) as fh:
            return JobConfig.from_json(fh.read())
    spec = _build_spec(args)
    ms = tuple(int(m) for m in args.m.split(",")) if args.m else (0,) * spec.dimension
    config = REConfig(ms)
    states = tuple(_parse_state(s, spec.dimension) for s in args.state) \
        if args.state else (Eigenstate.ground(spec.dimension),)
    grids = {"n_points": args.points}
    if getattr(args, "spacing", None):
        grids["spacing"] = args.spacing
    job = JobConfig(spec, config, states, grids, {"format": args.format})
    if getattr(args, "emit_job", None):
        with open(args.emit_job, "w") as fh:
            fh.write(job.to_json())
    return job


def cmd_verify(args) -> int:
    job = _job_from_args(args)
    spec, config = job.spec, job.config
    model.validate_config(spec, config)
    report = verify.VerificationReport()
    report.pole_list = [{"axis": p.axis, "coordinate": p.coordinate}
                        for p in verify.pole_scan(spec, config)]
    spacing = job.grids.get("spacing")
    n_points = int(job.grids.get("n_points", 4001))
    grids = verify.suggest_grids(spec, n_points=n_points, spacing=spacing)

    workers = max(1, int(os.environ.get("REXOSC_THREADS", "1")))

    def scan(state):
        return verify.residual_scan(spec, config, state, grids)

    if workers > 1 and len(job.states) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(scan, job.states))
    else:
        results = [scan(st) for st in job.states]
    offsets = [off for _, off in results]
    report.max_residual = max(res for res, _ in results)
    report.fitted_offset = offsets[0]
    spread = max(abs(a - offsets[0]) for a in offsets)
    report.notes.append(f"offset spread across states: {spread:.3e}")

    parities = transform.pt_classification(spec)
    pt_values = {}
    for op in parities:
        try:
            vals = [verify.pt_parity_eigenvalue(spec, config, st, op, grids)
                    for st in job.states]
            pt_values[op.name] = [_complex_dict(v) for v in vals]
        except IndeterminateError as exc:
            pt_values[op.name] = str(exc)
    report.pt_eigenvalue = pt_values

    if spec.is_hermitian and model.decouple(spec).is_real:
        gram = verify.orthogonality_gram(spec, config, job.states)
        report.gram = [[_complex_dict(z) for z in row] for row in gram]

    out = {
        "max_residual": report.max_residual,
        "fitted_offset": _complex_dict(report.fitted_offset),
        "poles": report.pole_list,
        "pt_eigenvalues": report.pt_eigenvalue,
        "gram": report.gram,
        "notes": report.notes,
        "states": [st.label() for st in job.states],
    }
    _emit(args, json.dumps(out, sort_keys=True, indent=2) + "\n")
    return 0


def cmd_plotdata(args) -> int:
    job = _job_from_args(args)
    spec, config = job.spec, job.config
    state = job.states[0]
    grids = verify.suggest_grids(spec, n_points=args.points)
    if args.half_width:
        grids = [verify.Grid(g.center, args.half_width, args.points) for g in grids]
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["x", "y", "re_V", "im_V", "re_psi", "im_psi"])
    if spec.dimension == 1:
        xs = grids[0].points
        pts = xs[None, :].astype(complex)
        v = model.re_potential(spec, config, pts, validate=False)
        p = model.eigenfunction(spec, config, state, pts, validate=False)
        for i, x in enumerate(xs):
            w.writerow([f"{x:.12g}", "0", f"{v[i].real:.12g}", f"{v[i].imag:.12g}",
                        f"{p[i].real:.12g}", f"{p[i].imag:.12g}"])
    elif spec.dimension == 2:
        xs, ys = grids[0].points, grids[1].points
        pts = np.stack(np.meshgrid(xs, ys, indexing="ij")).astype(complex)
        v = model.re_potential(spec, config, pts, validate=False)
        p = model.eigenfunction(spec, config, state, pts, validate=False)
        for i, x in enumerate(xs):
            for j, y in enumerate(ys):
                w.writerow([f"{x:.12g}", f"{y:.12g}",
                            f"{v[i, j].real:.12g}", f"{v[i, j].imag:.12g}",
                            f"{p[i, j].real:.12g}", f"{p[i, j].imag:.12g}"])
    else:
        raise DomainError("plot grids are emitted for dimensions 1 and 2")
    _emit(args, buf.getvalue())
    return 0


# ------------------------------------------------------------------ parser

def _add_spec_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--omega", type=str, default="1")
    p.add_argument("--linear", type=str, default=None,
                   help="linear coupling, e.g. imaginary:1")
    p.add_argument("--coupling", type=str, default=None,
                   help="quadratic coupling, e.g. real:1.3229")
    p.add_argument("--case", type=str, default=None,
                   help="3D case: lq, q1, or q2")
    p.add_argument("--lambda1", type=str, default=None)
    p.add_argument("--lambda2", type=str, default=None)
    p.add_argument("--lambda3", type=str, default=None)
    p.add_argument("--out", type=str, default=None)


def _add_job_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--m", type=str, default=None, help="co-dimensions, e.g. 0,2")
    p.add_argument("--state", action="append", default=None,
                   help="per-axis levels, 'g' for ground (repeatable)")
    p.add_argument("--points", type=int, default=4001)
    p.add_argument("--spacing", type=float, default=None)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--job", type=str, default=None, help="load a JSON job file")
    p.add_argument("--emit-job", type=str, default=None,
                   help="write the canonical JSON job file")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="rexosc",
        description="Rationally extended oscillators: transforms, spectra, "
                    "and verification")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="decoupling map and tilde frequencies")
    _add_spec_flags(p)
    p.set_defaults(fn=cmd_transform)

    p = sub.add_parser("degeneracy", help="solve for the degeneracy coupling")
    _add_spec_flags(p)
    p.add_argument("--ratio", type=str, required=True, help="target ratio, e.g. 1/2")
    p.add_argument("--flavor", choices=["real", "imaginary"], default=None)
    p.set_defaults(fn=cmd_degeneracy)

    p = sub.add_parser("spectrum", help="degeneracy-grouped level table")
    _add_spec_flags(p)
    _add_job_flags(p)
    p.add_argument("--cutoff", type=float, required=True)
    p.set_defaults(fn=cmd_spectrum)

    p = sub.add_parser("table", help="closed-form 1D potential/eigenfunction samples")
    p.add_argument("--omega", type=str, default="2")
    p.add_argument("--linear", type=str, default=None)
    p.add_argument("--max-m", type=int, default=3)
    p.add_argument("--xs", type=str, default="-1.7,-0.9,0.4,1.1,2.3")
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(fn=cmd_table)

    p = sub.add_parser("verify", help="residuals, poles, PT eigenvalues, Gram")
    _add_spec_flags(p)
    _add_job_flags(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("plotdata", help="grid samples of Re/Im V and psi")
    _add_spec_flags(p)
    _add_job_flags(p)
    p.add_argument("--half-width", type=float, default=None)
    p.set_defaults(fn=cmd_plotdata)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except _VALIDATION as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 1
    except _SINGULAR as exc:
        print(f"singular configuration: {exc}", file=sys.stderr)
        return 3
    except _NUMERICAL as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except RexoscError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
