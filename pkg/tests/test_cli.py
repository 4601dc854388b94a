"""Command-line behavior: frozen outputs, formats, exit codes, cache."""

import json

import pytest

from modchar import cli, reps
from modchar.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_basis_text_frozen(capsys):
    code, out, _ = run(capsys, "basis", "--p", "3", "--r", "1", "--max-degree", "4")
    assert code == 0
    assert out.splitlines() == ["0: 1", "3: x y", "4: y^2"]


def test_basis_q2(capsys):
    code, out, _ = run(capsys, "basis", "--p", "2", "--r", "1", "--max-degree", "2")
    assert code == 0
    assert out.splitlines() == ["0: 1", "1: y", "2: y^2"]


def test_basis_q4_includes_y0y1(capsys):
    code, out, _ = run(capsys, "basis", "--p", "2", "--r", "2", "--max-degree", "3")
    assert code == 0
    assert "2: y0 y1" in out


def test_chi_frozen(capsys):
    code, out, _ = run(capsys, "chi", "--p", "2", "--n", "2", "--alpha", "y^3")
    assert code == 0
    assert out.strip() == "y⊗y^2 + y^2⊗y"


def test_chi_identity_case(capsys):
    code, out, _ = run(capsys, "chi", "--p", "3", "--n", "1", "--alpha", "x y")
    assert code == 0
    assert out.strip() == "x y"


def test_chi_non_invariant_is_input_error(capsys):
    code, _, err = run(capsys, "chi", "--p", "3", "--n", "2", "--alpha", "y")
    assert code == cli.EXIT_INPUT
    assert "invariant" in err


def test_chi_parse_error(capsys):
    code, _, err = run(capsys, "chi", "--p", "3", "--n", "1", "--alpha", "q^2")
    assert code == cli.EXIT_INPUT
    assert "parse" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["chi", "--p", "2"])
    assert exc.value.code == cli.EXIT_USAGE


def test_nonvanish_csv_column_order(capsys):
    code, out, _ = run(
        capsys,
        "nonvanish", "--p", "3", "--r", "1", "--n", "2", "--format", "csv",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "N,alpha,degree,status"
    assert "2,x y^5,11,nonzero" in lines
    assert "2,y^8,16,non-nilpotent" in lines
    assert len(lines) == 1 + 8 * 2  # N in [2, 9], two witnesses each


def test_dickson_report(capsys):
    code, out, _ = run(capsys, "dickson", "--p", "2", "--n", "2", "--dmax", "9")
    assert code == 0
    line = out.splitlines()[0]
    assert "newton: ok" in line and "inverse: ok" in line
    assert "i=0: +1" in line and "i=2: +1" in line


def test_dickson_bad_dmax(capsys):
    code, _, err = run(capsys, "dickson", "--p", "2", "--n", "2", "--dmax", "1")
    assert code == cli.EXIT_INPUT
    assert "dmax" in err


def test_tuples_frozen(capsys):
    code, out, _ = run(capsys, "tuples", "--p", "2", "--n", "2", "--max", "7")
    assert code == 0
    assert out.splitlines() == [
        "(1, 2)  degree 3",
        "(1, 4)  degree 5",
        "(2, 4)  degree 6",
        "(1, 6)  degree 7",
        "(2, 5)  degree 7",
        "(3, 4)  degree 7",
    ]


def test_chi_extension_field_and_csv(capsys):
    code, out, _ = run(
        capsys, "chi", "--p", "2", "--r", "2", "--n", "2", "--alpha", "y0 y1"
    )
    assert code == 0
    assert out.strip() == "0"
    code, out, _ = run(
        capsys, "chi", "--p", "2", "--n", "2", "--alpha", "y^3", "--format", "csv"
    )
    assert code == 0
    assert out.splitlines() == [
        "term,coeff",
        "y⊗y^2,1",
        "y^2⊗y,1",
    ]


def test_basis_csv_and_json(capsys):
    code, out, _ = run(
        capsys, "basis", "--p", "3", "--r", "1", "--max-degree", "4",
        "--format", "csv",
    )
    assert code == 0
    assert out.splitlines() == ["degree,monomial", "0,1", "3,x y", "4,y^2"]
    code, out, _ = run(
        capsys, "basis", "--p", "3", "--r", "1", "--max-degree", "4",
        "--format", "json",
    )
    payload = json.loads(out)
    assert payload["basis"] == {"0": ["1"], "3": ["x y"], "4": ["y^2"]}


def test_rep_analyze_json(capsys, tmp_path):
    path = _write_rep(tmp_path, reps.regular_rep(2, 2))
    code, out, _ = run(capsys, "rep-analyze", path, "--chi", "3", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["socle_dims"] == [1, 3, 4]
    assert payload["verdict"] == "reduced"
    assert payload["quotient_rank"] == 2
    assert payload["chi"]["y^3"] == "z1^2 z2 + z1 z2^2"


def test_json_outputs_are_deterministic(capsys):
    args = ["nonvanish", "--p", "2", "--r", "1", "--n", "2", "--format", "json"]
    code, out1, _ = run(capsys, *args)
    assert code == 0
    payload = json.loads(out1)
    assert payload["schema"] == "modchar/1"
    code, out2, _ = run(capsys, *args)
    assert out1 == out2


def test_cache_round_trip_byte_identical(capsys, tmp_path):
    args = [
        "dickson", "--p", "2", "--n", "2", "--format", "json",
        "--cache-dir", str(tmp_path),
    ]
    code, fresh, _ = run(capsys, *args)
    assert code == 0
    assert list(tmp_path.glob("*.json"))
    code, cached, _ = run(capsys, *args)
    assert code == 0
    assert cached == fresh
    # and identical to a run without any cache
    code, bare, _ = run(capsys, "dickson", "--p", "2", "--n", "2", "--format", "json")
    assert bare == fresh


def _write_rep(tmp_path, rep, basepoint=None, name="rep.json"):
    path = tmp_path / name
    path.write_text(json.dumps(reps.rep_to_dict(rep, basepoint)))
    return str(path)


def test_rep_analyze_regular(capsys, tmp_path):
    path = _write_rep(tmp_path, reps.regular_rep(2, 2))
    code, out, _ = run(capsys, "rep-analyze", path, "--chi", "3")
    assert code == 0
    assert "socle dims: 1, 3, 4" in out
    assert "reduced to rank 2" in out
    assert "chi[y^3] = z1^2 z2 + z1 z2^2" in out


def test_rep_analyze_direct_sum_zero(capsys, tmp_path):
    b = reps.basic_rep(2, 1, 1).rep
    path = _write_rep(tmp_path, reps.direct_sum(b, b))
    code, out, _ = run(capsys, "rep-analyze", path)
    assert code == 0
    assert "verdict: zero" in out


def test_rep_analyze_validation_error(capsys, tmp_path):
    bad = {
        "p": 3,
        "r": 1,
        "dim": 2,
        "generators": [[[1, 0], [0, 1]], [[0, 1], [1, 0]]],
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, _, err = run(capsys, "rep-analyze", str(path))
    assert code == cli.EXIT_INPUT
    assert "generator 1" in err


def test_rep_analyze_refuses_extension_field_chi(capsys, tmp_path):
    pr = reps.basic_rep(2, 2, 1)
    path = _write_rep(tmp_path, pr.rep, pr.basepoint)
    code, out, err = run(capsys, "rep-analyze", path, "--chi", "3")
    assert code == cli.EXIT_INPUT
    assert "prime field" in err
    # without --chi the same file analyzes fine
    code, out, _ = run(capsys, "rep-analyze", path)
    assert code == 0
    assert "socle dims: 1, 2" in out


def test_rep_analyze_missing_file(capsys):
    code, _, err = run(capsys, "rep-analyze", "/nonexistent/rep.json")
    assert code == cli.EXIT_INPUT


def test_verify_named_suites(capsys):
    code, out, _ = run(
        capsys, "verify", "--suite", "lowest-degrees", "--suite", "witnesses"
    )
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 2
    assert all(line.startswith("pass") for line in lines)


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "--suite", "nope")
    assert code == cli.EXIT_INPUT


def test_verify_failure_gives_check_exit_code(capsys, monkeypatch):
    from modchar import verify

    def broken(profile):
        return verify.SuiteResult("witnesses", False, "injected failure", 0.0)

    monkeypatch.setitem(verify.ALL_SUITES, "witnesses", broken)
    code, out, _ = run(capsys, "verify", "--suite", "witnesses")
    assert code == cli.EXIT_CHECK_FAILURE
    assert "FAIL" in out and "witnesses" in out


def test_cache_env_var(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("MODCHAR_CACHE", str(tmp_path))
    code, out1, _ = run(capsys, "tuples", "--p", "2", "--n", "2", "--max", "5")
    assert code == 0
    assert list(tmp_path.glob("*.json"))
    code, out2, _ = run(capsys, "tuples", "--p", "2", "--n", "2", "--max", "5")
    assert out1 == out2


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
