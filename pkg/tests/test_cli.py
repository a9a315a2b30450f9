import json

import pytest

from ctcong.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv,expected",
    [
        (["sum", "--seq", "catalan", "--r", "1", "--p", "5"], "-2"),
        (["sum", "--seq", "central_binomial", "--r", "2", "--p", "7"], "3"),
        (["sum", "--poly", "2+x+1/x", "--mult", "1-x", "--r", "1", "--p", "5"], "-2"),
        (["sum", "--seq", "multinomial3", "--r", "1,1,1", "--p", "3", "--power", "3"], "1"),
        (["sum", "--seq", "multinomial3", "--r", "2", "--p", "5"], "1"),
        (["sum", "--poly", "(1+y)*(1+1/x)", "--poly", "(1+x)*(1+1/y)", "--r", "1,1", "--p", "5"], "-1"),
    ],
)
def test_sum(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.strip() == expected


@pytest.mark.parametrize(
    "argv,code,kind",
    [
        (["sum", "--poly", "1/(1+x)", "--r", "1", "--p", "5"], 2, "NonMonomialDivisor"),
        (["sum", "--poly", "x+", "--r", "1", "--p", "5"], 2, "ParseError"),
        (["sum", "--poly", "6", "--r", "1", "--p", "5"], 3, "NonUnitConstantTerm"),
        (["sum", "--seq", "catalan", "--r", "1", "--p", "9"], 4, "NotPrime"),
        (["sum", "--seq", "catalan", "--r", "1", "--p", "3"], 4, "PrimeTooSmall"),
        (["sum", "--seq", "catalan", "--r", "1", "--p", "3", "--power", "2"], 4, "PrimeTooSmall"),
        (["sum", "--seq", "nope", "--r", "1", "--p", "5"], 2, "UnknownSequence"),
        (["sum", "--r", "1", "--p", "5"], 2, "ValueError"),
    ],
)
def test_sum_errors(capsys, argv, code, kind):
    got, _, err = run(capsys, *argv)
    assert got == code
    assert json.loads(err)["error"] == kind


def test_parse_error_reports_position(capsys):
    _, _, err = run(capsys, "sum", "--poly", "1+*x", "--r", "1", "--p", "5")
    assert json.loads(err)["position"] == 2


def test_bad_r_is_usage_error(capsys):
    with pytest.raises(SystemExit) as e:
        main(["sum", "--seq", "catalan", "--r", "0", "--p", "5"])
    assert e.value.code == 2


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--seq", "motzkin", "--pmax", "50", "--rmax", "3")
    assert code == 0
    assert "FAIL" not in out and "summary: 42 pass, 0 fail" in out


def test_verify_super_cube(capsys):
    code, out, _ = run(capsys, "verify", "--seq", "multinomial3", "--pmax", "30", "--super", "3")
    assert code == 0 and " 0 fail" in out


def test_verify_reports_counterexample(capsys):
    code, out, _ = run(
        capsys, "verify", "--seq", "motzkin", "--pmax", "50", "--super", "2", "--format", "json"
    )
    assert code == 1
    report = json.loads(out)
    assert set(report) == {"version", "command", "results", "summary"}
    assert report["summary"]["fail"] > 0
    row = report["results"][0]
    assert set(row) == {"spec", "r", "p", "k", "engine", "oracle", "predicted", "pass"}
    assert any(r["p"] == 3 and not r["pass"] for r in report["results"])


def test_json_and_text_have_same_rows(capsys):
    args = ["verify", "--seq", "catalan", "--pmax", "30", "--rmax", "2"]
    _, text, _ = run(capsys, *args)
    _, js, _ = run(capsys, *args, "--format", "json")
    rows = json.loads(js)["results"]
    lines = [l for l in text.splitlines() if l.startswith(("ok", "FAIL"))]
    assert len(lines) == len(rows)
    for line, row in zip(lines, rows):
        assert f"p={row['p']} " in line and f"engine={row['engine']} " in line


def test_json_is_stable(capsys, monkeypatch):
    args = ["verify", "--seq", "binomial_squared", "--pmax", "20", "--format", "json"]
    _, first, _ = run(capsys, *args)
    monkeypatch.setenv("CTCONG_THREADS", "2")
    _, second, _ = run(capsys, *args)
    assert first == second


def test_discover_central_binomial(capsys):
    code, out, _ = run(
        capsys, "discover", "--seq", "central_binomial", "--r", "1", "--pmax", "100",
        "--format", "json", "--oeis", "offline",
    )
    assert code == 0
    claim = json.loads(out)["results"][0]
    assert claim["modulus"] == 3
    assert claim["case_values"] == {"1": 1, "2": -1}
    assert claim["super_level"] == 2
    assert claim["oeis"]["alpha"]["ids"] == ["A006134"]


def test_discover_multinomial4(capsys):
    code, out, _ = run(capsys, "discover", "--seq", "multinomial4", "--r", "1,1,1,1", "--pmax", "20")
    assert code == 0 and "super_level 1" in out


def test_discover_custom_matches_builtin(capsys):
    _, custom, _ = run(
        capsys, "discover", "--poly", "1+x+1/x", "--mult", "1-x^2", "--r", "1", "--pmax", "100",
        "--format", "json",
    )
    _, builtin, _ = run(
        capsys, "discover", "--seq", "motzkin", "--r", "1", "--pmax", "100", "--format", "json"
    )
    a, b = json.loads(custom)["results"][0], json.loads(builtin)["results"][0]
    for key in ("modulus", "cases", "super_level", "evidence", "counterexamples"):
        assert a[key] == b[key]


def test_discover_no_pattern_exits_zero(capsys):
    code, out, _ = run(
        capsys, "discover", "--poly", "x+2+3/x", "--r", "1", "--pmax", "100",
    )
    assert code == 0 and out.startswith("no pattern")


def test_selftest_subset(capsys):
    code, out, _ = run(capsys, "selftest", "--criteria", "6,7,8,10,11")
    assert code == 0
    assert out.count("PASS") == 5
