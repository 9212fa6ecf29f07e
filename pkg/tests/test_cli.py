import json
import subprocess
import sys

import pytest

from projram.cli import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_phi_json(capsys):
    code, out = run(capsys, "phi", "2,2", "--seed", "42")
    d = json.loads(out)
    assert code == EXIT_OK and d["degree"] == 2 and d["agreement"] is True
    assert d["partition"] == [2, 2]


def test_phi_replay_byte_identical(capsys):
    a = run(capsys, "phi", "1,3", "--no-timings")[1]
    b = run(capsys, "phi", "1,3", "--no-timings")[1]
    assert a == b and json.loads(a)["degree"] == 1


@pytest.mark.parametrize("argv", [["phi", "0,2"], ["phi", "x"], ["phi", "1,1", "--primes", "15"],
                                  ["catalan", "1"], ["nope"], ["phi", "1,1", "--trials", "0"]])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as info:
        sys.exit(main(argv))
    assert info.value.code == EXIT_USAGE


def test_budget_exit(capsys):
    code, out = run(capsys, "phi", "2,3", "--budget-steps", "20")
    assert code == EXIT_BUDGET and json.loads(out)["agreement"] is False


def test_env_budget(capsys, monkeypatch):
    monkeypatch.setenv("PROJRAM_BUDGET_STEPS", "20")
    assert run(capsys, "phi", "2,3")[0] == EXIT_BUDGET
    monkeypatch.setenv("PROJRAM_BUDGET_STEPS", "lots")
    assert run(capsys, "phi", "2,3")[0] == EXIT_USAGE


@pytest.mark.parametrize("parts,verdict", [("1,1,1,2", False), ("2,2,2", True), ("1,1", True)])
def test_rank(capsys, parts, verdict):
    code, out = run(capsys, "rank", parts)
    assert code == EXIT_OK and json.loads(out)["maximal_variation"] is verdict


def test_catalan(capsys):
    assert run(capsys, "catalan", "5", "--format", "text") == (EXIT_OK, "14\n")
    d = json.loads(run(capsys, "catalan", "5")[1])
    assert d == {"n": 5, "plucker_degree": 14, "catalan": 14}


def test_veronese(capsys):
    code, out = run(capsys, "veronese")
    assert code == EXIT_OK and json.loads(out)["degree"] == 3


def test_table(capsys):
    code, out = run(capsys, "table", "--max-d", "5")
    rows = [line.split(",") for line in out.strip().splitlines()]
    assert code == EXIT_OK
    assert rows[0] == ["a1\\a2", "1", "2", "3", "4"]
    assert rows[1][1] == "1" and rows[2][1:3] == ["1", "2"] and rows[3][1:3] == ["1", "6"]
    assert rows[4][1] == "1" and rows[4][2] == ""


def test_table_budget(capsys):
    code, out = run(capsys, "table", "--max-d", "5", "--budget-steps", "30")
    assert code == EXIT_BUDGET and "skipped" in out


def test_phi_csv_and_text(capsys):
    out = run(capsys, "phi", "1,1", "--format", "csv")[1].splitlines()
    assert out[0].startswith("partition,degree") and len(out) == 7
    out = run(capsys, "phi", "1,1", "--format", "text")[1]
    assert out.startswith("(1, 1): degree 1")


def test_selftest(capsys):
    code, out = run(capsys, "selftest")
    assert code == EXIT_OK
    assert all(line.startswith("PASS") for line in out.strip().splitlines())


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "projram", "catalan", "4", "--format", "text"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "5"
