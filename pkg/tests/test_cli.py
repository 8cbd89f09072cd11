import json
import subprocess
import sys

import pytest

from ffheights.cli import main

QUAD = """\
[map]
F0 = X0^2 + t*X1^2
F1 = X1^2

[points]
origin = [0, 1]
other = [t^2 + 1, t]
"""

POWER = """\
[map]
F0 = X0^2
F1 = X1^2

[points]
tee = [t, 1]
two = [2, 1]
"""


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in (("quad", QUAD), ("power", POWER)):
        path = tmp_path / f"{name}.ffh"
        path.write_text(text)
        out[name] = str(path)
    return out


def run_json(capsys, *argv):
    assert main([*argv, "--format", "json"]) == 0
    return json.loads(capsys.readouterr().out)


def test_classify_critical_point(files, capsys):
    doc = run_json(capsys, "classify", files["quad"], "--point", "origin", "--budget", "10")
    (row,) = doc["points"]
    assert row["verdict"] == "PositiveCertified"
    assert row["lower"] == "1/4" and row["witness_n"] == 2


def test_hhat_contains_one(files, capsys):
    doc = run_json(capsys, "hhat", files["power"], "--point", "tee", "--iters", "8")
    iv = doc["points"][0]["interval"]
    assert iv == {"lo": "1", "hi": "1", "n": 8, "defect": 0}


def test_orbit_zero_echoes_point(files, capsys):
    doc = run_json(capsys, "orbit", files["quad"], "--iters", "0")
    assert [r["orbit"] for r in doc["points"]] == [[["0", "1"]], [["t^2 + 1", "t"]]]


def test_height_command(files, capsys):
    doc = run_json(capsys, "height", files["quad"])
    assert [r["height"] for r in doc["points"]] == [0, 2]
    assert doc["map"]["defect_bound"] == 1 and doc["map"]["d"] == 2


def test_isotrivial_command(files, capsys):
    doc = run_json(capsys, "isotrivial", files["quad"])
    assert doc["verdict"] == "NonIsotrivial" and doc["witness"] == "sigma2"
    assert doc["invariants"] == {"sigma1": "2", "sigma2": "4*t", "sigma3": "0"}


def test_gap_scan_command(files, capsys):
    doc = run_json(capsys, "gap-scan", files["quad"], "--max-deg", "1", "--coeff-bound", "1", "--budget", "10")
    assert doc["total"] == doc["preperiodic"] + doc["positive_certified"] + doc["undecided"]
    assert doc["spec"] == {"k": 1, "max_deg": 1, "coeff_bound": 1}


def test_text_output_and_decimals(files, capsys):
    assert main(["hhat", files["quad"], "--iters", "3", "--decimal", "3"]) == 0
    out = capsys.readouterr().out
    assert "[3/8, 5/8] ~ [0.375, 0.625]" in out


def test_decimal_json_marks_approximation(files, capsys):
    doc = run_json(capsys, "classify", files["quad"], "--budget", "10", "--decimal", "4")
    assert doc["points"][0]["lower_approx"] == "~0.2500"


def test_options_section_supplies_defaults(tmp_path, capsys):
    path = tmp_path / "opts.ffh"
    path.write_text(QUAD + "[options]\niters = 2\n")
    doc = run_json(capsys, "hhat", str(path))
    assert doc["iters"] == 2
    doc = run_json(capsys, "hhat", str(path), "--iters", "4")
    assert doc["iters"] == 4


def test_json_is_stable(files, capsys):
    argv = ["gap-scan", files["quad"], "--max-deg", "1", "--coeff-bound", "1", "--budget", "12", "--format", "json"]
    outs = set()
    for threads in ("1", "3"):
        assert main(argv + ["--threads", threads]) == 0
        outs.add(capsys.readouterr().out)
    assert len(outs) == 1


def test_input_errors_exit_one(files, tmp_path, capsys):
    bad = tmp_path / "bad.ffh"
    bad.write_text("[map]\nF0 = X0^2 + X1^3\nF1 = X1^2\n")
    assert main(["height", str(bad)]) == 1
    assert "line 2" in capsys.readouterr().err
    assert main(["height", str(tmp_path / "missing.ffh")]) == 1
    assert main(["height", files["quad"], "--point", "nobody"]) == 1
    assert main(["frobnicate", files["quad"]]) == 1
    assert main(["hhat", files["quad"], "--iters", "-1"]) == 1
    capsys.readouterr()


def test_not_a_morphism_exit_one(tmp_path, capsys):
    bad = tmp_path / "bad.ffh"
    bad.write_text("[map]\nF0 = X0^2\nF1 = t*X0*X1\n")
    assert main(["height", str(bad)]) == 1
    assert "NotAMorphism" in capsys.readouterr().err


def test_unsupported_shape_exit_one(tmp_path, capsys):
    path = tmp_path / "plane.ffh"
    path.write_text("[map]\nF0 = X0^2 + t*X1^2\nF1 = X1^2 + t*X2^2 - X0*X2\nF2 = X2^2 + X0*X1\n")
    assert main(["isotrivial", str(path)]) == 1
    capsys.readouterr()


def test_internal_error_exit_two(files, monkeypatch, capsys):
    import ffheights.cli as cli

    def boom(*args, **kwargs):
        raise RuntimeError("kaput")

    monkeypatch.setattr(cli, "classify", boom)
    assert main(["classify", files["quad"]]) == 2
    assert "kaput" in capsys.readouterr().err


def test_module_entry_point_reads_stdin():
    proc = subprocess.run(
        [sys.executable, "-m", "ffheights", "orbit", "-", "--iters", "2", "--point", "origin"],
        input=QUAD, capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert "t^2 + t" in proc.stdout
