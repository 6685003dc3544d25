import json

import pytest
from helpers import DATA

from gridfloer.cli import run
from gridfloer.grid_model import load_grid, serialize_grid


def grid(name):
    return str(DATA / f"{name}.grid")


def test_validate(capsys):
    assert run(["validate", grid("tref_sing2")]) == 0
    assert capsys.readouterr().out.strip() == "ok size=5 k=2 components=1"


def test_compute_text_and_json(capsys):
    assert run(["compute", grid("tref_sing1")]) == 0
    assert capsys.readouterr().out.strip() == "q^-1 + 2*t + t^2*q"
    assert run(["compute", grid("trefoil_right"), "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["flavor"] == "hat" and out["n"] == 5 and out["components"] == 1
    assert out["poincare"] == "t^-2*q^-1 + t^-1 + q"
    assert out["euler"] == "q^-1 - 1 + q"
    assert {"m": 0, "a": "1", "rank": 1} in out["ranks"]


def test_compute_tilde(capsys):
    assert run(["compute", grid("unknot"), "--flavor", "tilde"]) == 0
    assert capsys.readouterr().out.strip() == "t^-1*q^-1 + 1"


def test_euler(capsys):
    assert run(["euler", grid("trefoil_left")]) == 0
    assert capsys.readouterr().out.strip() == "q^-1 - 1 + q"


def test_resolve(capsys):
    assert run(["resolve", grid("tref_sing1"), "--index", "1"]) == 0
    assert capsys.readouterr().out.startswith("grid v1\ncols 5\nrows 5\n")
    assert run(["resolve", grid("tref_sing1"), "--index", "01"]) == 2


def test_moves(tmp_path, capsys):
    script = tmp_path / "walk.txt"
    script.write_text("cyclic row start\ncyclic row end\n")
    assert run(["moves", grid("trefoil_right"), "--script", str(script)]) == 0
    assert capsys.readouterr().out == serialize_grid(load_grid(grid("trefoil_right")))
    script.write_text("commute col 0\n")
    assert run(["moves", grid("trefoil_right"), "--script", str(script)]) == 2


def test_fuzz(capsys):
    assert run(["fuzz", grid("tref_sing1"), "--seed", "3", "--steps", "4", "--max-size", "6"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["check"] == "fuzz" and out["pass"] is True and out["seed"] == 3


@pytest.mark.parametrize("jobs", ["1", "2"])
def test_verify_all(capsys, jobs):
    assert run(["verify", grid("tref_sing2"), "--jobs", jobs]) == 0
    lines = [json.loads(x) for x in capsys.readouterr().out.splitlines()]
    assert [x["check"] for x in lines] == ["d2", "vassiliev", "symmetry"]
    assert all(x["pass"] for x in lines)


def test_verify_failure_exit_code(capsys):
    assert run(["verify", grid("trefoil_right"), "--acyclic"]) == 1
    assert json.loads(capsys.readouterr().out)["pass"] is False


def test_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.grid"
    bad.write_text("grid v1\ncols 2\n")
    assert run(["validate", str(bad)]) == 2
    assert run(["validate", str(tmp_path / "missing.grid")]) == 2
    assert run(["nonsense"]) == 2
    assert "error" in capsys.readouterr().err


def test_resource_limit(monkeypatch, capsys):
    assert run(["compute", grid("tref_sing3_ppm"), "--budget", "100"]) == 3
    monkeypatch.setenv("GRIDFLOER_BUDGET", "100")
    assert run(["compute", grid("tref_sing3_ppm")]) == 3
    monkeypatch.setenv("GRIDFLOER_BUDGET", "many")
    assert run(["compute", grid("unknot")]) == 2
    assert "resource limit" in capsys.readouterr().err
