import csv
import json

import numpy as np
import pytest

from beamlab import MonotoneKind, evaluate_monotone, make_fock, make_grid, purity_polynomial
from beamlab.cli import main, parse_grid_arg, parse_kind_args, parse_tol_args, slug


def run(*argv):
    return main([str(a) for a in argv])


def test_slug():
    assert slug("fock:3") == "fock_3"
    assert slug("sup:0.6|0>+0.8|3>@8") == "sup_0.6_0_+0.8_3_8"
    assert slug("???") == "x"


def test_parse_helpers():
    assert parse_grid_arg("0.1,0.9,5") == (0.1, 0.9, 5)
    kinds = parse_kind_args(["renyi:2..4", "purity"])
    assert [k.label for k in kinds] == ["renyi:2", "renyi:3", "renyi:4", "purity"]
    assert parse_tol_args(["concavity=1e-6"]) == {"concavity": 1e-6}
    from beamlab import DomainError

    with pytest.raises(DomainError):
        parse_grid_arg("0.1,0.9")
    with pytest.raises(DomainError):
        parse_kind_args(["renyi:4..2"])
    with pytest.raises(DomainError):
        parse_tol_args(["concavity"])


def test_sweep_csv_format_and_roundtrip(tmp_path):
    out = tmp_path / "out"
    assert run("sweep", "fock:2", "--kind", "von_neumann", "--grid", "0.1,0.9,9", "--out", out) == 0
    path = out / "fock_2__von_neumann.csv"
    raw = path.read_bytes()
    assert b"\r" not in raw
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["T", "value", "kind", "state", "alpha"]
    ts = [float(r[0]) for r in rows[1:]]
    assert ts == sorted(ts) and len(ts) == 9
    expected = [
        evaluate_monotone(make_fock(2), MonotoneKind("von_neumann"), t)
        for t in make_grid(0.1, 0.9, 9)
    ]
    got = [float(r[1]) for r in rows[1:]]
    assert got == expected
    assert all(r[2] == "von_neumann" and r[3] == "fock:2" and r[4] == "" for r in rows[1:])


def test_sweep_deterministic_bytes(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert run("sweep", "random:6,3", "--kind", "renyi:2", "--grid", "0.05,0.95,7", "--out", out) == 0
    name = "random_6_3__renyi_2.csv"
    assert (a / name).read_bytes() == (b / name).read_bytes()


def test_sweep_renyi_range_and_json(tmp_path):
    out = tmp_path / "out"
    assert run("sweep", "fock:1", "--kind", "renyi:1..3", "--grid", "0.2,0.8,5",
               "--format", "json", "--out", out) == 0
    paths = sorted(out.glob("fock_1__renyi_*.json"))
    assert [p.name for p in paths] == [
        "fock_1__renyi_1.json", "fock_1__renyi_2.json", "fock_1__renyi_3.json"]
    doc = json.loads(paths[1].read_text())
    assert doc["alpha"] == 2.0 and doc["log_base"] == "e" and len(doc["values"]) == 5


def test_sweep_qcs_grid_trimmed_to_open_interval(tmp_path):
    out = tmp_path / "out"
    assert run("sweep", "fock:1", "--kind", "qcs_witness", "--grid", "0,1,21", "--out", out) == 0
    with open(out / "fock_1__qcs_witness.csv", newline="") as fh:
        rows = list(csv.reader(fh))[1:]
    ts = [float(r[0]) for r in rows]
    assert len(ts) == 19 and min(ts) > 0.0 and max(ts) < 1.0


def test_sweep_plot_renders_png(tmp_path):
    out = tmp_path / "out"
    assert run("sweep", "fock:1", "--grid", "0.1,0.9,5", "--plot", "--out", out) == 0
    png = out / "sweep.png"
    assert png.exists() and png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_verify_quick_suite_report_and_exit(tmp_path, capsys):
    out = tmp_path / "out"
    assert run("verify", "--suite", "quick", "--out", out) == 0
    stdout = capsys.readouterr().out
    assert "verdict: OK" in stdout
    assert "FAIL(expected)" in stdout
    records = json.loads((out / "report.json").read_text())
    assert records and all(r["log_base"] == "e" for r in records)
    expectations = {r["expectation"] for r in records}
    assert expectations == {"pass", "fail", "info"}


def test_verify_report_matches_schema(tmp_path):
    jsonschema = pytest.importorskip("jsonschema")
    from importlib.resources import files

    schema = json.loads(files("beamlab").joinpath("schemas/report.schema.json").read_text())
    out = tmp_path / "out"
    run("verify", "--suite", "quick", "--out", out)
    records = json.loads((out / "report.json").read_text())
    jsonschema.validate(records, schema)


def test_verify_quick_deterministic_bytes(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert run("verify", "--suite", "quick", "--out", out) == 0
    assert (a / "report.json").read_bytes() == (b / "report.json").read_bytes()


def test_verify_inject_corruption_fails(tmp_path, capsys):
    out = tmp_path / "out"
    assert run("verify", "--suite", "quick", "--inject-corruption", "--out", out) == 1
    assert "verdict: NOT OK" in capsys.readouterr().out


def test_verify_targeted_checks(tmp_path, capsys):
    out = tmp_path / "out"
    code = run("verify", "fock:2", "--kind", "g_concurrence", "--grid", "0.01,0.99,41",
               "--check", "symmetry", "--check", "monotonicity", "--check", "derivative_identity",
               "--out", out)
    assert code == 0
    records = json.loads((out / "report.json").read_text())
    assert [r["check"] for r in records] == ["symmetry", "gconc_monotonicity", "derivative_identity"]
    assert all(r["passed"] for r in records)
    assert "PASS" in capsys.readouterr().out


def test_verify_tolerance_override_can_force_failure(tmp_path):
    out = tmp_path / "out"
    code = run("verify", "fock:2", "--kind", "von_neumann", "--grid", "0.01,0.99,21",
               "--check", "concavity", "--tol", "concavity=-100", "--out", out)
    assert code == 1


def test_fig1_artifacts(tmp_path):
    out = tmp_path / "out"
    assert run("fig1", "--format", "json", "--no-plot", "--out", out) == 0
    names = sorted(p.name for p in out.glob("fig1_alpha*.json"))
    assert len(names) == 12
    assert names[0] == "fig1_alpha01.json" and names[-1] == "fig1_alpha12.json"
    summary = json.loads((out / "fig1_summary.json").read_text())
    assert summary["grid"] == [0.01, 0.99, 99]
    orders = summary["orders"]
    assert [o["alpha"] for o in orders] == list(range(1, 13))
    assert orders[0]["concave"] and orders[0]["peak_at_half"]
    assert not orders[-1]["concave"] and not orders[-1]["peak_at_half"]
    assert not (out / "fig1.png").exists()


def test_poly_self_overlap(tmp_path, capsys):
    out = tmp_path / "out"
    assert run("poly", "fock:1", "--out", out) == 0
    with open(out / "poly_fock_1.csv", newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["m", "coefficient", "state", "other"]
    coeffs = [float(r[1]) for r in rows[1:]]
    assert np.allclose(coeffs, purity_polynomial(make_fock(1)).coefficients, atol=1e-14)
    assert coeffs[1] == 0.0  # sub-1e-14 values are written as structural zeros
    with open(out / "poly_fock_1_check.csv", newline="") as fh:
        check_rows = list(csv.reader(fh))
    assert check_rows[0] == ["T", "direct", "reconstructed", "residual"]
    assert max(abs(float(r[3])) for r in check_rows[1:]) < 1e-12
    assert "max |direct - reconstructed|" in capsys.readouterr().out


def test_poly_two_states(tmp_path):
    out = tmp_path / "out"
    assert run("poly", "fock:1@26", "thermal:0.5@26", "--format", "json", "--out", out) == 0
    doc = json.loads((out / "poly_fock_1_26__thermal_0.5_26.json").read_text())
    assert doc["state"] == "fock:1@26" and doc["other"] == "thermal:0.5@26"
    assert abs(sum(doc["coefficients"]) - 1.0) < 1e-8


def test_error_exits_with_code_2(tmp_path, capsys):
    out = tmp_path / "out"
    assert run("sweep", "blah:3", "--out", out) == 2
    assert "error:" in capsys.readouterr().err
    assert run("sweep", "coherent:2.0@8", "--out", out) == 2
    assert "tail" in capsys.readouterr().err
    assert run("sweep", "fock:1", "--kind", "bogus", "--out", out) == 2
    capsys.readouterr()
    assert run("sweep", "fock:1", "--grid", "0.1,0.9", "--out", out) == 2
    capsys.readouterr()
    assert run("poly", "fock:1", "fock:2", "fock:3", "--out", out) == 2
    capsys.readouterr()
    assert run("poly", "fock:1", "thermal:0.5", "--out", out) == 2
    assert "cutoff mismatch" in capsys.readouterr().err
    assert run("verify", "thermal:0.5", "--check", "derivative_identity", "--out", out) == 2
    assert "pure state" in capsys.readouterr().err


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        run("--version")
    assert exc.value.code == 0
    assert "beamlab" in capsys.readouterr().out
