"""CLI subcommands, job round-trip, schemas, exit codes."""
import csv
import io
import json

import numpy as np
import pytest

from rexosc import cli
from rexosc.cli import JobConfig
from rexosc.model import Eigenstate, OscillatorSpec, REConfig
from rexosc.transform import CouplingValue

SQ7 = np.sqrt(7.0)


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_transform_2d_example(capsys):
    code, out, _ = run(["transform", "--dim", "2", "--omega", "1,2",
                        "--coupling", "real:1.3228756555322954"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["mixing"]["re"] == pytest.approx(-0.75, abs=1e-10)
    assert doc["tilde_ratio"] == "1:3"
    assert doc["real_spectrum"] is True


def test_degeneracy_imaginary_example(capsys):
    code, out, _ = run(["degeneracy", "--dim", "2", "--omega", "1,3",
                        "--flavor", "imaginary", "--ratio", "1/2"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["coupling"]["flavor"] == "imaginary"
    assert doc["coupling"]["magnitude"] == pytest.approx(SQ7, abs=1e-10)
    assert doc["achieved_ratio"] == "1:2"


def test_degeneracy_flavor_mismatch_exit(capsys):
    code, _, err = run(["degeneracy", "--dim", "2", "--omega", "1,3",
                        "--flavor", "real", "--ratio", "1/2"], capsys)
    assert code == 1
    assert "validation error" in err


def test_verify_1d_imaginary_m3(capsys):
    code, out, _ = run(["verify", "--dim", "1", "--omega", "2",
                        "--linear", "imaginary:1", "--m", "3",
                        "--state", "g", "--state", "0",
                        "--points", "3001"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["poles"] == []
    assert doc["max_residual"] <= 1e-6
    vals = doc["pt_eigenvalues"]["inversion"]
    assert vals[0]["re"] == pytest.approx(1.0, abs=1e-6)
    assert vals[1]["re"] == pytest.approx(-1.0, abs=1e-6)


def test_verify_rejects_inadmissible(capsys):
    code, _, err = run(["verify", "--dim", "1", "--omega", "2",
                        "--linear", "real:1", "--m", "3"], capsys)
    assert code == 1
    assert "singular" in err or "odd co-dimension" in err


def test_spectrum_csv_schema(capsys):
    code, out, _ = run(["spectrum", "--dim", "2", "--omega", "1,2",
                        "--coupling", "real:1.3228756555322954",
                        "--m", "0,0", "--cutoff", "10", "--format", "csv"],
                       capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["energy", "multiplicity", "states"]
    assert all(len(r) == 3 for r in rows[1:])
    energies = [float(r[0]) for r in rows[1:]]
    assert energies == sorted(energies)


def test_table_schema_and_values(capsys):
    code, out, _ = run(["table", "--omega", "2", "--linear", "real:1"], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["m", "x", "re_V", "im_V", "re_psi0", "im_psi0",
                       "re_psi1", "im_psi1"]
    assert {r[0] for r in rows[1:]} == {"0", "1", "2", "3"}
    # spot value: m=0 closed form at the first sample point
    r0 = rows[1]
    x = float(r0[1])
    assert float(r0[2]) == pytest.approx(x**2 + x - 2.0, abs=1e-9)


def test_plotdata_schema_and_symmetry(tmp_path, capsys):
    out_path = tmp_path / "plot.csv"
    code, _, _ = run(["plotdata", "--dim", "1", "--omega", "2",
                      "--linear", "imaginary:1", "--m", "2", "--state", "g",
                      "--points", "201", "--out", str(out_path)], capsys)
    assert code == 0
    rows = list(csv.reader(out_path.open()))
    assert rows[0] == ["x", "y", "re_V", "im_V", "re_psi", "im_psi"]
    data = np.array([[float(v) for v in r] for r in rows[1:]])
    xs, im_v, re_v = data[:, 0], data[:, 3], data[:, 2]
    # the imaginary part of V is odd, the real part even (PT symmetry)
    mid = len(xs) // 2
    assert abs(im_v[mid]) < 1e-9
    np.testing.assert_allclose(im_v, -im_v[::-1], atol=1e-9)
    np.testing.assert_allclose(re_v, re_v[::-1], atol=1e-9)


def test_plotdata_2d_runs(tmp_path, capsys):
    out_path = tmp_path / "plot2.csv"
    code, _, _ = run(["plotdata", "--dim", "2", "--omega", "1,3",
                      "--coupling", "imaginary:2.6457513110645907",
                      "--m", "2,2", "--state", "g,g", "--points", "41",
                      "--out", str(out_path)], capsys)
    assert code == 0
    rows = list(csv.reader(out_path.open()))
    assert len(rows) == 1 + 41 * 41


def test_job_roundtrip_byte_stable(tmp_path):
    spec = OscillatorSpec.quadratic_2d(1, 3, CouplingValue.imaginary(SQ7))
    job = JobConfig(spec, REConfig((2, 2)),
                    (Eigenstate((None, 0)), Eigenstate((1, None))),
                    {"n_points": 801}, {"format": "json"})
    text = job.to_json()
    again = JobConfig.from_json(text)
    assert again == job
    assert again.to_json() == text


def test_job_file_drives_verify(tmp_path, capsys):
    spec = OscillatorSpec.linear_1d(2.0, CouplingValue.imaginary(1.0))
    job = JobConfig(spec, REConfig((2,)), (Eigenstate((None,)),),
                    {"n_points": 2001}, {"format": "json"})
    path = tmp_path / "job.json"
    path.write_text(job.to_json())
    code, out, _ = run(["verify", "--job", str(path)], capsys)
    assert code == 0
    assert json.loads(out)["max_residual"] <= 1e-6


def test_emit_job_matches_flags(tmp_path, capsys):
    path = tmp_path / "emitted.json"
    code, _, _ = run(["spectrum", "--dim", "1", "--omega", "2", "--m", "2",
                      "--cutoff", "8", "--emit-job", str(path)], capsys)
    assert code == 0
    job = JobConfig.from_json(path.read_text())
    assert job.spec.dimension == 1
    assert job.config.codimensions == (2,)


def test_exit_code_singular_table(capsys):
    # sampling exactly on the pole of the odd-m closed form
    code, _, err = run(["table", "--omega", "2", "--linear", "real:1",
                        "--xs", "-0.5"], capsys)
    assert code == 3
    assert "singular" in err


def test_threads_env_smoke(capsys, monkeypatch):
    monkeypatch.setenv("REXOSC_THREADS", "2")
    code, out, _ = run(["verify", "--dim", "1", "--omega", "2",
                        "--linear", "imaginary:1", "--m", "1",
                        "--state", "g", "--state", "0",
                        "--points", "2001"], capsys)
    assert code == 0
    assert json.loads(out)["max_residual"] <= 1e-6
