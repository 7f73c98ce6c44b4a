import json
import shutil
import subprocess
import sys

import pytest

from qsuper.cli import main, run

RECORD_KEYS = {"suite", "axiom", "instance", "lhs", "rhs", "residual", "pass"}


@pytest.mark.parametrize("argv, expected", [
    (["normalize", "--algebra", "F", "theta x"], "q^-1 x theta"),
    (["pair", "X", "x^3"], "3"),
    (["pair", "X Nab", "x^2 y theta"], "2"),
    (["coproduct", "theta"], "1 ⊗ theta + theta ⊗ x^-1 y"),
    (["counit", "x^2 y^-1"], "1"),
    (["antipode", "theta"], "-x y^-1 theta"),
    (["star", "--algebra", "O", "x theta"], "-q^-1 x theta"),
    (["diff", "x theta"], "q^2 x dtheta - q theta dx"),
    (["partial", "x", "x^2"], "(1 + q^-2) x"),
    (["weyl", "normalize", "px x"], "1 + q^-2 x px"),
    (["weyl", "act", "px py", "x y"], "q^-2"),
    (["normalize", "--algebra", "Omega", "w2 w1 + w1 w2"], "0"),
    (["normalize", "--algebra", "Dual", "G[1,0] X"], "G(1,0) X"),
    (["coproduct", "--algebra", "HKTheta", "Theta"], "L ⊗ Theta + Theta ⊗ 1"),
])
def test_commands(argv, expected):
    assert run(argv) == (0, expected)


def test_mc_forms():
    code, out = run(["mc-forms"])
    assert code == 0
    assert out.splitlines() == ["w1 = q^-2 x^-1 dx", "w2 = q^-2 y^-1 dy", "w3 = x y^-1 dtheta"]


@pytest.mark.parametrize("argv", [
    ["frobnicate"], ["check", "nope"], ["normalize", "--algebra", "O", "x^-1"], ["normalize", "x +"],
    ["antipode", "--algebra", "GL", "a"], ["star", "--algebra", "Omega", "dx"], ["check", "hopf-lie", "Nope"],
    ["weyl", "act", "px"], ["matrices", "nope"], ["normalize", "--algebra", "Nope", "x"], [],
])
def test_usage_errors_exit_2(argv, capsys):
    code, _ = run(argv)
    assert code == 2


def test_error_names_alphabet():
    code, out = run(["normalize", "--algebra", "O", "x zeta"])
    assert code == 2 and "x, y, theta" in out


def test_check_failure_exits_1():
    code, out = run(["matrices", "remark47_G"])
    assert code == 1 and "y theta - q theta y" in out
    assert run(["matrices", "ex31a"])[0] == 0


def test_json_report_schema():
    code, out = run(["matrices", "--format", "json"])
    body = json.loads(out)
    assert code == 1 and body["pass"] is False
    records = [r for rep in body["reports"] for r in rep["records"]]
    assert records and all(set(r) == RECORD_KEYS for r in records)
    assert all(r["pass"] is False for r in records)
    code, out = run(["check", "weyl-star", "--format", "json", "--bound", "2"])
    body = json.loads(out)
    assert code == 0 and body["suite"] == "weyl-star" and body["pass"] is True
    assert all({"suite", "pass", "checked", "records", "notes"} <= set(r) for r in body["reports"])


def test_json_command_output():
    code, out = run(["normalize", "--format", "json", "theta x"])
    assert json.loads(out) == {"command": "normalize", "result": "q^-1 x theta"}


def test_output_is_deterministic():
    argv = ["check", "calculus", "--bound", "2", "--seed", "7"]
    assert run(argv) == run(argv)


def test_rules_flag_selects_calculus():
    code, out = run(["check", "calculus", "--rules", "45", "--bound", "2"])
    assert code == 0 and "calculus consistency:45" in out


@pytest.mark.parametrize("suite", ["hopf", "coaction", "equivalence", "confluence", "weyl-star"])
def test_check_suites_pass(suite):
    code, out = run(["check", suite, "--bound", "2"])
    assert code == 0, out
    assert out.splitlines()[-1].startswith("PASS")


def test_figure_written(tmp_path):
    path = tmp_path / "fig" / "checks.png"
    code, _ = run(["check", "equivalence", "--figure", str(path)])
    assert code == 0
    assert path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_normalize_output_reparses():
    for text in ("theta y x^-1 theta x", "(x + theta)^3", "y^-2 theta x^3 + q x"):
        _, once = run(["normalize", text])
        assert run(["normalize", once]) == (0, once)


def test_main_writes_streams(capsys):
    assert main(["pair", "Y", "y^4"]) == 0
    assert capsys.readouterr().out == "4\n"
    assert main(["check", "nope"]) == 2
    assert "unknown suite" in capsys.readouterr().err


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "qsuper.cli", "normalize", "--algebra", "F", "theta x"],
                         capture_output=True, text=True, check=True)
    assert out.stdout == "q^-1 x theta\n"


@pytest.mark.skipif(shutil.which("qsuper") is None, reason="console script not installed")
def test_console_script():
    out = subprocess.run(["qsuper", "pair", "X", "x^3"], capture_output=True, text=True)
    assert (out.returncode, out.stdout) == (0, "3\n")
