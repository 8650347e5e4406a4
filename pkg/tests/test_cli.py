import json
import subprocess
import sys

import pytest

from schreier.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_member(capsys):
    assert call(capsys, "member", "--xi", "w", "--set", "2,3,4,5") == (0, {"member": True})


def test_tau(capsys):
    assert call(capsys, "tau", "--xi", "1", "--set", "1,2,3,4,5") == (0, {"tau": 3})


def test_verify_weaksumming(capsys):
    code, doc = call(capsys, "verify", "--suite", "weaksumming", "--xi", "1", "--horizon", "31")
    assert code == 0 and doc["passed"]
    assert {r["computed"] for r in doc["checks"]} >= {"1/1"}
    assert doc["seed"] == 20240601


def test_ordinal_partition_maximal(capsys):
    code, doc = call(capsys, "ordinal", "--xi", "w^2+w+1")
    assert code == 0 and doc["R"] == ["0", "1", "w+1", "w^2+w+1"]
    code, doc = call(capsys, "ordinal", "--xi", "w^w", "--horizon", "3")
    assert doc["fundamental"] == ["w", "w^2", "w^3"]
    code, doc = call(capsys, "partition", "--xi", "1", "--set", "1,2,3,4,5")
    assert doc["tau"] == 3 and doc["blocks"][0] == [1]
    code, doc = call(capsys, "maximal", "--xi", "2", "--set", "2,3,4,5,6,7")
    assert doc == {"member": True, "maximal": True}


def test_norms(capsys):
    code, doc = call(capsys, "norm", "--xi", "2", "--vector", "[1,1,1,1,1,1,1]")
    assert code == 0 and doc["value"] == "6/1" and doc["witness"] == [2, 3, 4, 5, 6, 7]
    code, doc = call(capsys, "dualnorm", "--xi", "1", "--vector", '{"1": 1, "2": 1, "3": 1}')
    assert doc["value"] == "2/1"


def test_average(capsys):
    code, doc = call(capsys, "average", "--xi", "2", "--n", "2")
    assert doc["support"] == [2, 3, 4, 5, 6, 7]


def test_pair_and_ops(capsys):
    code, doc = call(capsys, "pair", "verify", "--xi", "2", "--iota", "1", "--horizon", "3")
    assert code == 0 and doc["certificate"]["passed"]
    code, doc = call(capsys, "op", "identity", "--xi", "1", "--zeta", "2", "--horizon", "7")
    assert code == 0
    code, doc = call(capsys, "op", "norm", "--xi", "1", "--zeta", "2",
                     "--matrix", '[[1, 1, "1/2"], [2, 1, 1], [3, 3, 2]]')
    assert code == 0 and doc["exact"] and doc["lower"] == doc["upper"]
    code, doc = call(capsys, "op", "dyadic", "--xi", "1", "--n", "3")
    assert code == 0 and doc["tau"] == [1, 2, 7]
    code, doc = call(capsys, "op", "injectivity", "--xi", "1", "--blocks", "[[2,3,4,5,6,7]]")
    assert doc["ratio"] == "2/1"


def test_pair_file_roundtrip(capsys, tmp_path):
    out = tmp_path / "pair.json"
    code, doc = call(capsys, "pair", "build", "--xi", "1", "--iota", "1", "--horizon", "3",
                     "--out", str(out))
    assert code == 0 and json.loads(out.read_text()) == doc
    code, doc = call(capsys, "pair", "verify", "--pair", str(out))
    assert code == 0


def test_negative_pair_exit_code(capsys, tmp_path):
    run(["pair", "build", "--xi", "2", "--iota", "1", "--horizon", "3"])
    doc = json.loads(capsys.readouterr().out)
    doc["Xstar"][0], doc["Xstar"][1] = doc["Xstar"][1], doc["Xstar"][0]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out = call(capsys, "pair", "verify", "--pair", str(path))
    assert code == 1 and not out["certificate"]["i"]["passed"]


@pytest.mark.parametrize("argv,code", [
    (["member", "--xi", "w+-", "--set", "1"], 2),
    (["member", "--set", "1"], 2),
    (["tau", "--xi", "1", "--set", "0,1"], 2),
    (["nonsense"], 2),
    (["verify", "--suite", "nope"], 2),
    (["op", "norm", "--xi", "1", "--matrix", '{"x": 1}'], 2),
    (["member", "--xi", "w^(w^(w^(w^w)))", "--set", "1"], 3),
    (["op", "dyadic", "--xi", "2", "--n", "4"], 3),
    (["norm", "--xi", "1", "--vector", json.dumps([1] * 40)], 3),
])
def test_exit_codes(argv, code, capsys):
    assert run(argv) == code
    capsys.readouterr()


def test_report_empty_config(capsys):
    code, doc = call(capsys, "report", "--config", '{"suites": {}}')
    assert code == 0 and doc["passed"] and doc["suites"] == {}


def test_report_is_deterministic(capsys):
    cfg = '{"suites": {"negative": {}, "tau": {"N": 6, "trials": 30}}}'
    run(["report", "--config", cfg])
    a = capsys.readouterr().out
    run(["report", "--config", cfg])
    b = capsys.readouterr().out
    assert a == b and json.loads(a)["passed"]


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "schreier.cli", "tau", "--xi", "1",
                           "--set", "1,2,3"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"tau": 2}
