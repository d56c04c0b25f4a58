import io
import json
from pathlib import Path

import pytest

from mukailab import scenarios
from mukailab.cli import main
from mukailab.scenarios import ScenarioReport, dump_reports

DATA = Path(__file__).resolve().parent.parent / "data"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_verify_all(tmp_path):
    target = tmp_path / "reports.json"
    code, out = run("verify", "scenario", "--all", "--json", str(target))
    assert code == 0
    assert "12/12 scenarios passed" in out
    text = target.read_text(encoding="utf-8")
    reparsed = dump_reports([ScenarioReport.from_json(d) for d in json.loads(text)])
    assert reparsed == text


def test_verify_single_and_list():
    code, out = run("verify", "scenario", "S8_mori_nef")
    assert code == 0 and "[PASS] S8_mori_nef" in out
    code, out = run("verify", "list")
    assert code == 0 and out.split() == scenarios.list_scenarios()


def test_verify_failure_exit_code(monkeypatch):
    def broken(rep):
        rep.check("deliberately wrong", 1, 2)

    monkeypatch.setitem(scenarios._CATALOG, "S99_broken", broken)
    code, out = run("verify", "scenario", "S99_broken")
    assert code == 1
    assert "[FAIL] S99_broken" in out


def test_verify_usage_errors(capsys):
    assert run("verify", "scenario")[0] == 2
    assert run("verify", "scenario", "S1_quartic_residual", "--all")[0] == 2
    assert run("verify", "scenario", "nonexistent")[0] == 2
    assert "scenario" in capsys.readouterr().err


def test_lattice_det_and_sig():
    assert run("lattice", "det", "--input", str(DATA / "picard_quartic_line.json")) == (0, "-9\n")
    assert run("lattice", "sig", "--input", str(DATA / "l_ybr.json")) == (0, "(2, 1, 0)\n")
    assert run("lattice", "det", "--input", "quartic_with_line", "-v") == (0, "-9\n|det| = 9\n")


def test_lattice_complement_and_saturate():
    code, out = run("lattice", "complement", "--input", str(DATA / "l_ybr.json"))
    assert code == 0
    assert "rank 1" in out and "[-4]" in out
    code, out = run("lattice", "saturate", "--input", "quartic_with_line", "--gens", "D+E; D-E")
    assert code == 0
    assert "index of span in saturation: 2" in out and "primitive: no" in out


def test_lattice_dualcone_basis_snf():
    assert run("lattice", "dualcone", "--input", "quartic_with_line", "--gens", "E; D-E") == (0, "E; 3D - E\n")
    code, out = run("lattice", "basis", "--input", "quartic_with_line", "--basis", "D+E; E")
    assert code == 0 and out.splitlines()[1:] == ["  [10  3]", "  [ 3  0]"]
    code, out = run("lattice", "snf", "--input", str(DATA / "l_ybr.json"))
    assert code == 0 and out.startswith("invariant factors: 1, 1, 4")


def test_isometry_apply():
    code, out = run(
        "isometry", "apply", "--model", "quartic_with_line", "--word", "shift tw:O lb:D tw:O lb:D", "--vector", "(0,0,1)"
    )
    assert code == 0
    assert out.splitlines() == ["(-2, D, -1)", "transcendental sign: -1"]


def test_isometry_from_model_file():
    code, out = run(
        "isometry", "apply", "--model", str(DATA / "quartic_with_line_model.json"), "--word", "tw:U", "--vector", "(2,-D-E,3)"
    )
    assert code == 0 and out.splitlines()[0] == "(-2, D + E, -3)"


def test_isometry_matrix():
    code, out = run("isometry", "matrix", "--model", "quartic_branch", "--word", "shift")
    assert code == 0 and "basis: r, A, s" in out and "transcendental sign: -1" in out


def test_cohomology():
    assert run("cohomology", "--m", "2", "--n", "3", "--coeff", "Cx") == (0, "Z/2\n")
    assert run("cohomology", "--m", "6", "--n", "4", "--coeff", "Cx+Z") == (0, "Z/6\n")


def test_pseudoheight():
    code, out = run("pseudoheight", "--input", str(DATA / "fano_index2.json"), "--sheaf-mode", "--json")
    assert code == 0
    assert json.loads(out) == {"pseudoheight": 2, "iso_range_max": 0, "injection_at": 1, "connected_by_criterion": True}


@pytest.mark.parametrize(
    "argv, field",
    [
        (["lattice", "det", "--input", "/nonexistent.json"], "input"),
        (["lattice", "dualcone", "--input", "quartic_with_line", "--gens", "E"], "--gens"),
        (["lattice", "saturate", "--input", "quartic_with_line", "--gens", "D; F"], "generators[1]"),
        (["isometry", "apply", "--model", "quartic_with_line", "--word", "tw:V", "--vector", "(0,0,1)"], "--word"),
        (["isometry", "apply", "--model", "quartic_with_line", "--word", "shift", "--vector", "(0,0)"], "--vector"),
        (["isometry", "apply", "--model", "quartic_with_line", "--word", "shift"], "--vector"),
        (["isometry", "apply", "--model", "no_such_model", "--word", "shift", "--vector", "(0,0,1)"], "model"),
        (["cohomology", "--m", "1", "--n", "2", "--coeff", "Z"], "--m"),
        (["cohomology", "--m", "2", "--n", "2", "--coeff", "Q"], "--coeff"),
    ],
)
def test_input_errors_exit_2(argv, field, capsys):
    code, out = run(*argv)
    assert code == 2
    err = capsys.readouterr().err
    assert err.startswith("mukailab: error: ") and field in err


def test_bad_json_and_argparse_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    assert run("lattice", "det", "--input", str(bad))[0] == 2
    table = tmp_path / "t.json"
    table.write_text(json.dumps({"n": 2, "rel_dim": 3, "e_plain": {"1,2": -1}}), encoding="utf-8")
    assert run("pseudoheight", "--input", str(table), "--sheaf-mode")[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("lattice", "det")[0] == 2
    assert run("cohomology", "--m", "x", "--n", "1", "--coeff", "Z")[0] == 2
    capsys.readouterr()


def test_no_color_when_not_a_tty():
    code, out = run("verify", "scenario", "S6_wall_spherical")
    assert "\033[" not in out
