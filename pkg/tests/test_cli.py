import json
import subprocess
import sys

import pytest

from scenario_sched.adversaries import rule1_counterexample
from scenario_sched.cli import main


@pytest.fixture
def inst_file(tmp_path):
    p = tmp_path / "inst.json"
    p.write_text(rule1_counterexample().dumps())
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_opt(capsys, inst_file):
    code, out = run(capsys, "opt", inst_file)
    data = json.loads(out)
    assert code == 0 and data["value"] == "3" and data["decimal"].startswith("3")


def test_run(capsys, inst_file):
    code, out = run(capsys, "run", inst_file, "--alg", "alg53")
    data = json.loads(out)
    assert code == 0 and data["ratio"] == "5/3" and data["audit_ok"]


def test_duel_and_fixed(capsys):
    code, out = run(capsys, "duel", "--alg", "fixed", "--adv", "omhc3", "--seed", "3")
    data = json.loads(out)
    assert code == 0 and data["ratio"] == "3" and data["algorithm"] == "fixed:3"


def test_minimax(capsys):
    code, out = run(capsys, "minimax", "--adv", "lb53")
    data = json.loads(out)
    assert code == 0 and data["certified"] and data["least_ratio"] == {"a": "9/8", "b": "1/8"}


def test_minimax_inconclusive(capsys):
    code, out = run(capsys, "minimax", "--adv", "general-N:2", "--depth-cap", "1")
    assert code == 1 and json.loads(out)["result"] == "inconclusive"


def test_gen_is_seeded(capsys, monkeypatch):
    a = run(capsys, "gen", "--m", "2", "--K", "2", "--n", "5", "--weights", "rational:10/10", "--seed", "4")[1]
    b = run(capsys, "gen", "--m", "2", "--K", "2", "--n", "5", "--weights", "rational:10/10", "--seed", "4")[1]
    assert a == b and len(json.loads(a)["jobs"]) == 5


def test_env_seed(monkeypatch, capsys):
    monkeypatch.setenv("SCENARIO_SCHED_SEED", "11")
    a = run(capsys, "gen", "--m", "2", "--K", "2", "--n", "6")[1]
    b = run(capsys, "gen", "--m", "2", "--K", "2", "--n", "6", "--seed", "11")[1]
    assert a == b


def test_table_formats(capsys):
    code, out = run(capsys, "table", "--format", "csv", "--count", "10")
    assert code == 0 and out.startswith("setting,")
    code, out = run(capsys, "table", "--format", "json", "--count", "10")
    assert json.loads(out)[0]["algorithm"] == "alg53"


def test_transform(capsys, inst_file):
    code, out = run(capsys, "transform", "delete", inst_file, "--at", "3")
    data = json.loads(out)
    assert code == 0 and data["report"]["kind"] == "delete"
    assert data["instance"]["jobs"][2]["p"] == "0"


def test_errors(capsys, inst_file):
    assert main(["duel", "--alg", "nope", "--adv", "lb53"]) == 2
    assert main(["duel", "--alg", "alg53", "--adv", "omhc3"]) == 2
    assert main(["transform", "cut", inst_file, "--at", "1"]) == 2
    assert main(["opt", "/nonexistent.json"]) == 2


def test_module_entry_point(inst_file):
    out = subprocess.run([sys.executable, "-m", "scenario_sched", "opt", inst_file], capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["value"] == "3"
