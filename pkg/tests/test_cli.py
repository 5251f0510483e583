import json

import pytest

from diamondlab.cli import run


@pytest.fixture
def famfile(tmp_path):
    def make(text):
        p = tmp_path / "f.txt"
        p.write_text(text)
        return str(p)
    return make


def test_lubell_empty_set(famfile, capsys):
    assert run(["lubell", "--family", famfile("n=3\n{}\n")]) == 0
    assert capsys.readouterr().out == "1/1\n"


def test_census_json(famfile, capsys):
    assert run(["census", "--family", famfile("n=2\n{}\n1\n1,2\n"), "--format", "json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["counts"] == [0, 0, 1, 1] and out["lubell"] == "5/2"


def test_check_exit_codes(famfile, capsys):
    assert run(["check", "--family", famfile("n=2\n{}\n1\n2\n1,2\n")]) == 1
    assert run(["check", "--family", famfile("n=2\n{}\n1\n1,2\n")]) == 0
    assert run(["check", "--family", famfile("n=2\n{}\n1\n1,2\n"), "--pattern", "P3"]) == 1


def test_search_commands(tmp_path, capsys):
    wit = tmp_path / "w.txt"
    assert run(["lubell-star", "--n", "3", "--format", "json", "--witness-out", str(wit)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["objective"] == "7/3" and out["matches_formula"] and out["exhaustive"]
    assert wit.read_text().startswith("n=3\n{}\n")
    assert run(["search-la", "--n", "3", "--pattern", "P2", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["objective"] == "3/1"
    assert run(["lubell-star", "--n", "5", "--node-budget", "10", "--exhaustive"]) == 1


def test_f_value(tmp_path, famfile, capsys):
    assert run(["f-value", "--family", famfile("n=2\n{}\n1\n1,2\n")]) == 0
    assert capsys.readouterr().out == "1/2\n"
    g = tmp_path / "g.txt"
    g.write_text("v=4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n")
    assert run(["f-value", "--graph", str(g), "--n", "6"]) == 0
    assert capsys.readouterr().out == "0/1\n"


def test_verify_targets(capsys):
    assert run(["verify", "lemma2", "--n", "4", "--exhaustive", "--format", "json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["cases_checked"] == 1280 and out["violations"] == []
    assert run(["verify", "tables", "--which", "gmax", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 10 and lines[3].startswith("Hpar,0/1,1/1")
    assert run(["verify", "case1", "--n-max", "20"]) == 0
    assert run(["verify", "epsilon", "--n-max", "12"]) == 0
    assert run(["verify", "lemma3", "--v-max", "4", "--n-max", "20"]) == 0
    assert run(["verify", "fH", "--count", "20"]) == 0
    assert run(["verify", "sq-identity", "--count", "5"]) == 0
    assert run(["verify", "psi-bounds", "--n", "6", "--count", "10"]) == 0


def test_usage_errors(tmp_path, capsys):
    assert run(["lubell", "--family", str(tmp_path / "missing.txt")]) == 2
    assert run(["lubell"]) == 2
    assert run(["verify", "nonsense"]) == 2
    assert run(["verify", "tables", "--which", "nope"]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("n=2\n7\n")
    assert run(["lubell", "--family", str(bad)]) == 2
    assert run(["search-la", "--n", "9"]) == 2


def test_out_file_is_byte_stable(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["verify", "fH", "--count", "30", "--seed", "4", "--threads", "1", "--format", "json", "--out", str(a)]) == 0
    assert run(["verify", "fH", "--count", "30", "--seed", "4", "--threads", "2", "--format", "json", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
