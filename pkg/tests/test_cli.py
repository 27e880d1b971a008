import json

from dadelab.cli import main
from dadelab.moduleio import read_module


def test_verify_text(capsys):
    assert main(["verify", "--group", "C2", "--suite", "D1,D2"]) == 0
    out = capsys.readouterr().out
    assert out.strip().splitlines()[-1] == "passed=2 failed=0 unresolved=0"


def test_verify_json_to_file(tmp_path, capsys):
    path = tmp_path / "r.jsonl"
    rc = main(["verify", "--group", "C2,C4", "--suite", "D1", "--format", "json", "--out", str(path)])
    assert rc == 0
    rows = [json.loads(line) for line in path.read_text().splitlines()]
    assert [r["group"] for r in rows] == ["C2", "C4"]
    assert "passed=2" in capsys.readouterr().out


def test_usage_errors(capsys):
    assert main(["verify", "--group", "C6"]) == 2
    assert main(["verify", "--group", "C2", "--suite", "X9"]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["verify", "--group", "C2", "--precision", "2"]) == 2
    assert main(["dade", "order", "--group", "C4", "--gen", "nope"]) == 2
    assert main(["compute", "omega", "--group", "C4", "--rel", "<b>"]) == 2


def test_precision_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("DADELAB_PRECISION", "9")
    assert main(["verify", "--group", "C2", "--suite", "D1", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["N"] == 9
    monkeypatch.setenv("DADELAB_PRECISION", "x")
    assert main(["verify", "--group", "C2"]) == 2


def test_compute_omega(tmp_path, capsys):
    path = tmp_path / "w.mod"
    assert main(["compute", "omega", "--group", "C4", "--ring", "O", "--m", "1", "--out", str(path)]) == 0
    assert capsys.readouterr().out.strip() == "dim=3 det=a:z^2"
    assert read_module(path).dim == 3
    assert main(["compute", "omega", "--group", "C2xC2", "--ring", "k", "--rel", "<a1>"]) == 0
    assert capsys.readouterr().out.strip().splitlines()[-1] == "dim=1 det=a1:1 a2:1"


def test_dade_commands(tmp_path, capsys):
    assert main(["dade", "order", "--group", "Q8", "--gen", "omega", "--bound", "8"]) == 0
    assert capsys.readouterr().out.strip() == "order=4"
    assert main(["compute", "order", "--group", "C2xC2", "--gen", "omega", "--bound", "4", "--ring", "O"]) == 0
    assert capsys.readouterr().out.strip() == "order=Unresolved(4)"
    path = tmp_path / "phi.mod"
    assert main(["dade", "lift", "--group", "C4", "--gen", "omega", "--out", str(path)]) == 0
    assert "det=a:z^0" in capsys.readouterr().out
    assert read_module(path).dim == 3
    assert main(["dade", "section", "--group", "C4", "--bound", "4"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["passed"] and rep["group"] == "C4"
