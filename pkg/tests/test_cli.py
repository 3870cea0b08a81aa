from __future__ import annotations

import json

import pytest

from cubedensity.cli import EXIT_FEASIBILITY, EXIT_OK, EXIT_USAGE, digest, log_dir, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def records():
    path = log_dir() / "runs.jsonl"
    return [json.loads(line) for line in path.read_text().splitlines()]


def test_count_exact(capsys):
    code, out, _ = run(capsys, "count", "--pattern", "W10", "--set", "T", "--n", "6")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert (doc["fraction"]["numerator"], doc["fraction"]["denominator"]) == ("3", "4")
    assert (doc["good_count"], doc["total"]) == (120, 160)
    rec = records()[-1]
    assert rec["command"] == "count" and rec["result_digest"] == digest(rec["result"])
    assert rec["result"] == doc


def test_count_construction_and_local(capsys):
    code, out, _ = run(capsys, "count", "--pattern", "Z3", "--set", "Z3-construction", "--n", "8")
    assert code == EXIT_OK and json.loads(out)["good_count"] == 1024
    code, out, _ = run(capsys, "count", "--pattern", "W10", "--set", "T", "--n", "6", "--local", "set:∅")
    assert code == EXIT_OK and json.loads(out)["in_S"] is True
    assert json.loads(out)["good_count"] == 15


def test_count_sampled_reproducible(capsys):
    argv = ("count", "--pattern", "Z3", "--set", "Z3-construction", "--n", "30", "--sampled", "2000", "--seed", "5")
    a = run(capsys, *argv)[1]
    b = run(capsys, *argv)[1]
    assert a == b
    assert records()[-1]["seeds"] == [5]


def test_exit_codes(capsys):
    assert run(capsys, "count", "--pattern", "Z3", "--set", "Z3-construction", "--n", "30")[0] == EXIT_FEASIBILITY
    assert run(capsys, "count", "--pattern", "nope", "--set", "empty", "--n", "4")[0] == EXIT_USAGE
    assert run(capsys, "classify", "--d", "5")[0] == EXIT_FEASIBILITY
    with pytest.raises(SystemExit) as exc:
        main(["count"])
    assert exc.value.code == EXIT_USAGE


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--d", "3")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["orbit_count"] == len(doc["classes"]) == 22
    assert doc["complement_class_count"] == 14


def test_search_deterministic(capsys):
    argv = ("search", "--pattern", "Z3", "--n", "5", "--seed", "4", "--restarts", "2", "--steps", "1500")
    a = json.loads(run(capsys, *argv)[1])
    b = json.loads(run(capsys, *argv)[1])
    a.pop("wall_time", None), b.pop("wall_time", None)
    assert a == b
    rec = records()[-1]
    assert rec["n"] == 5 and "H_key" in rec and rec["params"]["seed"] == 4


def test_report(capsys):
    code, out, _ = run(capsys, "report", "--n", "8")
    assert code == EXIT_OK and out.startswith("name,")
    code, out, _ = run(capsys, "report", "--n", "8", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["bounds_version"] == "1"


def test_spec_file(tmp_path, capsys):
    p = tmp_path / "layered.json"
    p.write_text(json.dumps({"kind": "layered", "modulus": 4, "residues": [0, 2]}))
    code, out, _ = run(capsys, "count", "--pattern", "Z3", "--set", str(p), "--n", "6")
    assert code == EXIT_OK and "fraction" in json.loads(out)
