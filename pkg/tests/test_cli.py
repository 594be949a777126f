from __future__ import annotations

import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from ncpoly.cli import execute, main
from ncpoly.paper_examples import EXAMPLES, load_golden, run_example

SCHEMA = json.loads(resources.files("ncpoly").joinpath("data/report.schema.json").read_text(encoding="utf-8"))
EXAMPLE_IDS = ["4.5", "5.2", "6.3", "7.7", "9.1", "9.2", "9.3", "9.5", "10.1", "10.3", "10.4", "11.2", "11.3"]


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_registry_lists_every_example():
    assert sorted(EXAMPLES) == sorted(EXAMPLE_IDS)
    assert sorted(load_golden()) == sorted(EXAMPLE_IDS)


@pytest.mark.parametrize("id", EXAMPLE_IDS)
def test_paper_example_exits_zero(id, capsys):
    code, out, _ = run(["paper-example", id], capsys)
    assert code == 0, out
    assert "[FAIL]" not in out


def test_paper_example_mismatch_exit_code():
    golden = load_golden()
    golden["9.5"] = golden["9.5"][:-1] + ["something else"]
    result = run_example("9.5", golden)
    assert not result.ok and result.diff


def test_paper_example_9_5_reports_remainder(capsys):
    code, out, _ = run(["paper-example", "9.5"], capsys)
    assert code == 0 and "remainder: -2k" in out


def test_solve_prints_family(capsys):
    code, out, _ = run(["solve", "i@1 - 1@i", "k"], capsys)
    assert code == 0 and "x = C1 + C2 i + 1/2 j" in out


def test_divide_remainder(capsys):
    code, out, _ = run(["divide", "x*x + 1", "--by", "x - 5"], capsys)
    assert code == 0 and "26" in out
    report = execute(["divide", "x*x + 1", "--by", "x - 5"])
    assert report.result["remainder"] == "26"


@pytest.mark.parametrize("argv", [
    ["eval", "x^2 - ix - jx - k", "--at", "j"],
    ["mul", "x - i", "x - j"],
    ["matrix", "i@1 - 1@i"],
    ["sqrt", "i"],
    ["sqrt", "-1"],
    ["divide", "x^2 + 1", "--general", "2@1", "-2i"],
    ["factor-chain", "(x - j)(x - k)(x - j - k)", "--roots", "j,k"],
    ["ore-mul", "x - i", "x - j"],
    ["ore-check"],
    ["odivide", "((x - j)(x - k))(x - jl)", "--by", "x - k"],
    ["paper-example", "4.5"],
])
def test_json_reports_validate(argv, capsys):
    code, out, _ = run(argv + ["--json"], capsys)
    assert code == 0
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    assert report["exit_code"] == 0 and report["error"] is None
    assert list(report) == ["command", "algebra", "inputs", "result", "checks", "warnings", "exit_code", "error"]


@pytest.mark.parametrize("argv,code", [
    ([], 1),
    (["frobnicate"], 1),
    (["mul", "x"], 1),
    (["eval", "x"], 1),
    (["paper-example", "99.9"], 1),
    (["eval", "x +", "--at", "i"], 2),
    (["mul", "x", "(x - q)"], 2),
    (["divide", "x^2", "--general", "i@1 - 1@i", "k"], 3),
    (["ore-mul", "x - i", "x", "--algebra", "O"], 3),
    (["matrix", "i@1", "--algebra", "O"], 2),
    (["sqrt", "x"], 3),
])
def test_exit_codes(argv, code, capsys):
    got, _, err = run(argv, capsys)
    assert got == code
    report = execute(argv)
    assert report.exit_code == code and report.error
    jsonschema.validate(json.loads(report.to_json()), SCHEMA)


def test_negative_arguments(capsys):
    code, out, _ = run(["eval", "x^2", "--at", "-2i"], capsys)
    assert code == 0 and "-4" in out


def test_octonion_warning(capsys):
    code, _, err = run(["odivide", "ijx", "--by", "x - k"], capsys)
    assert code == 0 and "associates to the left" in err


def test_file_input(tmp_path, capsys):
    path = tmp_path / "exprs.txt"
    path.write_text("# factors\nx - i\nx - j\n", encoding="utf-8")
    code, out, _ = run(["mul", "--file", str(path)], capsys)
    assert code == 0 and "x^2" in out
    code, _, _ = run(["mul", "--file", str(tmp_path / "missing.txt")], capsys)
    assert code == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ncpoly", "paper-example", "9.1"], capture_output=True, text=True)
    assert proc.returncode == 0 and "remainder: 0" in proc.stdout
