import json
import math
import subprocess
import sys

import numpy as np
import pytest

from avgdistortion import cli
from avgdistortion.errors import ToleranceNotReached
from avgdistortion.spectrum import singular_values


def run_ok(*argv):
    code, out, err = cli.run(list(argv))
    assert code == 0, err
    assert "\n" not in out
    return json.loads(out)


def run_err(expected_code, *argv):
    code, out, err = cli.run(list(argv))
    assert code == expected_code
    assert out == ""
    doc = json.loads(err)
    assert "error" in doc
    return doc


@pytest.fixture
def id3(tmp_path):
    p = tmp_path / "id3.csv"
    p.write_text("1,0,0\n0,1,0\n0,0,1\n")
    return p


def test_compute_isotropic_inline():
    doc = run_ok("compute", "--sigmas", "1,1,1")
    assert doc["estimate"]["value"] == 0.0
    assert doc["bounds"]["upper"] == pytest.approx(0.0, abs=1e-15)
    assert doc["dim"] == 3


def test_compute_three_four_quad():
    doc = run_ok("compute", "--sigmas", "3,4", "--method", "quad")
    assert doc["estimate"]["value"] == pytest.approx(1.2527630, abs=1e-7)
    assert doc["estimate"]["method"] == "quadrature"
    assert doc["provenance"]["abs_tol"] == 1e-10
    assert doc["sigmas"] == [4.0, 3.0]


def test_compute_matrix_csv(id3):
    doc = run_ok("compute", "--matrix", str(id3))
    assert doc["sigmas"] == pytest.approx([1, 1, 1], abs=1e-15)
    assert doc["estimate"]["value"] == pytest.approx(0.0, abs=1e-15)


def test_compute_matrix_json_and_sigma_files(tmp_path):
    m = tmp_path / "m.json"
    m.write_text(json.dumps({"matrix": [[1, 1], [0, 1]]}))
    doc = run_ok("compute", "--matrix", str(m), "--method", "quad")
    s = tmp_path / "s.json"
    s.write_text(json.dumps({"sigmas": doc["sigmas"]}))
    assert run_ok("compute", "--sigmas", str(s), "--method", "quad")["estimate"] == doc["estimate"]
    c = tmp_path / "s.csv"
    c.write_text("\n".join(repr(v) for v in doc["sigmas"]) + "\n")
    assert run_ok("compute", "--sigmas", str(c), "--method", "quad")["estimate"] == doc["estimate"]


def test_explicit_format_override(tmp_path):
    p = tmp_path / "matrix.dat"
    p.write_text(json.dumps({"matrix": [[2.0]]}))
    run_err(2, "compute", "--matrix", str(p))
    doc = run_ok("compute", "--matrix", str(p), "--format", "json")
    assert doc["estimate"]["value"] == pytest.approx(math.log(2))


def test_round_trip_matrix_vs_sigmas(tmp_path, rng):
    for k in range(5):
        n = int(rng.integers(2, 8))
        m = rng.normal(size=(n, n))
        path = tmp_path / f"m{k}.csv"
        path.write_text("\n".join(",".join(repr(float(x)) for x in row) for row in m))
        a = run_ok("compute", "--matrix", str(path), "--method", "quad")
        sig = ",".join(repr(v) for v in singular_values(m).sigmas)
        b = run_ok("compute", "--sigmas", sig, "--method", "quad")
        assert abs(a["estimate"]["value"] - b["estimate"]["value"]) < 1e-9


def test_mc_determinism_byte_identical():
    argv = ["compute", "--sigmas", "3,2,1", "--method", "mc", "--samples", "2000", "--seed", "42",
            "--mode", "reduction"]
    first = cli.run(argv)
    assert first == cli.run(argv)
    doc = json.loads(first[1])
    assert doc["provenance"]["seed"] == 42 and doc["provenance"]["mode"] == "reduction"
    assert doc["estimate"]["std_error"] > 0
    assert "timestamp" not in first[1]


def test_auto_uses_closed_form_then_quadrature():
    assert run_ok("compute", "--sigmas", "2,0,0")["estimate"]["method"] == "closed_form"
    assert run_ok("compute", "--sigmas", "2,1")["estimate"]["method"] == "quadrature"


def test_constants_examples():
    doc = run_ok("constants", "3")
    assert doc["mean_log_coordinate"]["value"] == -1.0
    assert doc["agrees"] is True
    doc = run_ok("constants", "2")
    assert doc["mean_log_coordinate"]["value"] == pytest.approx(-math.log(2), abs=1e-15)
    assert doc["xi_paper"]["value"] == pytest.approx(-math.log(2) - 0.5, abs=1e-15)
    assert doc["agrees"] is False
    assert doc["psi_half"] == {"rational": "0", "gamma_coeff": "-1", "log2_coeff": "0",
                               "value": doc["psi_half"]["value"]}
    doc = run_ok("constants", "1")
    assert doc["mean_log_coordinate"]["value"] == 0.0
    assert doc["psi_half"]["log2_coeff"] == "-2"


def test_constants_invalid_n():
    run_err(2, "constants", "0")
    run_err(2, "constants", "two")


def test_lln_command(tmp_path):
    ones = tmp_path / "ones.csv"
    ones.write_text("1\n" * 4)
    doc = run_ok("lln", "--sigmas", str(ones), "--dims", "2,4")
    assert all(abs(x) < 1e-10 for x in doc["deviations"])
    alt = tmp_path / "alt.csv"
    alt.write_text("1\n2\n" * 16)
    doc = run_ok("lln", "--sigmas", str(alt), "--dims", "2,8,32")
    assert doc["ratios"][0] > doc["ratios"][1] > doc["ratios"][2]
    assert doc["hypothesis"]["ratios_strictly_decreasing"] is True


def test_lln_rejects_zero_entry(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("1\n0\n1\n")
    run_err(2, "lln", "--sigmas", str(bad), "--dims", "2,3")


@pytest.mark.parametrize("argv", [
    ["compute", "--sigmas", "1,2", "--bogus"],
    ["compute", "--sig", "1,2"],
    ["compute"],
    ["compute", "--sigmas", "1,2", "--matrix", "x.csv"],
    ["compute", "--sigmas", "0,0"],
    ["compute", "--sigmas", "1,-2"],
    ["compute", "--sigmas", "/no/such/file.csv"],
    ["compute", "--sigmas", "1,2", "--method", "magic"],
    ["compute", "--sigmas", "1,2", "--tol", "0.5"],
    ["compute", "--sigmas", "1,2", "--samples", "1", "--method", "mc"],
    ["lln", "--sigmas", "x.csv", "--dims", "a,b"],
    ["frobnicate"],
])
def test_input_errors_exit_2(argv):
    run_err(2, *argv)


def test_malformed_csv(tmp_path):
    p = tmp_path / "m.csv"
    p.write_text("1,2\n3,x\n")
    doc = run_err(2, "compute", "--matrix", str(p))
    assert "m.csv:2" in doc["error"]
    p.write_text("1,2\n3\n")
    run_err(2, "compute", "--matrix", str(p))


def test_numerical_failure_exit_3(monkeypatch):
    def boom(*a, **k):
        raise ToleranceNotReached("forced")
    monkeypatch.setattr(cli, "quad_estimate", boom)
    doc = run_err(3, "compute", "--sigmas", "2,1")
    assert doc["kind"] == "ToleranceNotReached"


def test_bounds_violation_is_hard_error(monkeypatch):
    from avgdistortion.estimate import DistortionEstimate, Method
    monkeypatch.setattr(cli, "quad_estimate", lambda s, q: DistortionEstimate(99.0, Method.QUADRATURE))
    doc = run_err(3, "compute", "--sigmas", "2,1")
    assert doc["kind"] == "BoundsViolation"


def test_json_shortest_repr_and_infinity():
    assert cli.dumps({"x": 0.1, "y": math.inf, "z": [1e-10]}) == '{"x":0.1,"y":"inf","z":[1e-10]}'


def test_console_script_subprocess():
    proc = subprocess.run([sys.executable, "-m", "avgdistortion", "constants", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["agrees"] is True
    proc = subprocess.run([sys.executable, "-m", "avgdistortion", "compute", "--nope"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 2
    assert proc.stdout == ""
    assert "error" in json.loads(proc.stderr)
