import csv
import io
import json
import subprocess
import sys

import pytest

from kodaira_moduli import cli
from kodaira_moduli.errors import InvariantBreach
from kodaira_moduli.exactmath import rat_from_json
from kodaira_moduli.invariants import classify, construct_example


def call(*argv, stdin=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def construct_doc(n, r=2):
    code, out, _ = call("construct", "--n", str(n), "--r", str(r))
    assert code == 0
    doc = json.loads(out)
    return {"lattice": doc["lattice"], "chern": doc["chern"]}


def test_classify_construct_round_trip():
    code, out, _ = call("classify", "--json", json.dumps(construct_doc(2)))
    assert code == 0
    rep = json.loads(out)["report"]
    assert rep["dim"] == 4 and rep["stably_irreducible"] is True
    # the report's inputs re-validate against the input schema
    cli.validate({k: json.loads(out)[k] for k in ("lattice", "chern")}, "moduli.schema.json")


def test_input_from_file_and_stdin(tmp_path, monkeypatch):
    doc = json.dumps(construct_doc(1))
    path = tmp_path / "in.json"
    path.write_text(doc)
    a = call("classify", "--input", str(path))
    b = call("classify", "--input", "-", stdin=doc, monkeypatch=monkeypatch)
    assert a[0] == b[0] == 0 and a[1] == b[1]


def test_betti():
    code, out, _ = call("betti", "--n", "2")
    assert code == 0 and json.loads(out)["betti"] == [1, 3, 8, 18, 24, 18, 8, 3, 1]
    code, out, _ = call("betti", "--n", "3", "--torsion", "3", "--format", "text")
    assert code == 0 and "106" in out and "Z^3 + Z/3" in out


def test_catalog_csv():
    code, out, _ = call("catalog", "--max-n", "5", "--max-r", "3", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 12
    for row in rows:
        n, r = int(row["n"]), int(row["r"])
        lat, ch = construct_example(n, r)
        rep = classify(lat, ch)
        assert json.loads(row["gram"]) == [list(g) for g in lat.gram]
        assert int(row["c2"]) == ch.c2 and int(row["dim"]) == rep.dim == 2 * n
        assert row["delta"] == str(rep.delta) and row["t"] == str(rep.t)
        assert row["stably_irreducible"] == "true"
    by = {(int(r["n"]), int(r["r"])): r for r in rows}
    assert by[0, 2]["note"] == "four points"
    assert by[2, 2]["graph_base"] == "ruled surface over B"
    assert by[3, 2]["graph_base"] == "P^2-bundle over B"


def test_catalog_deterministic_across_jobs():
    outs = {call("catalog", "--max-n", "8", "--max-r", "5", "--jobs", str(j))[1] for j in (1, 4, 1)}
    assert len(outs) == 1
    rows = json.loads(outs.pop())["rows"]
    assert all(rat_from_json(r["delta"]) * r["r"] ** 2 == r["n"] for r in rows)


def test_text_formats():
    doc = json.dumps(construct_doc(3))
    for cmd in ("classify", "normalize", "strata", "fibres", "compare"):
        code, out, err = call(cmd, "--json", doc, "--format", "text")
        assert code == 0, err
        assert out.strip()
    code, out, _ = call("catalog", "--max-n", "1", "--max-r", "2", "--format", "text")
    assert out.splitlines()[0].split()[:3] == ["n", "r", "gram"]


def test_strata_and_fibres_json():
    doc = json.dumps(construct_doc(3))
    code, out, _ = call("strata", "--json", doc)
    data = json.loads(out)
    assert data["total_dim"] == 3 and data["strata"][1]["product"] == "B x B"
    code, out, _ = call("fibres", "--json", doc, "--k", "1", "--branch", "yes")
    data = json.loads(out)
    assert data["fibres"][0]["intersection_sections"] == 1
    code, out, _ = call("fibres", "--json", json.dumps(construct_doc(6)), "--k", "3", "--mults", "2,1")
    assert code == 0 and json.loads(out)["fibres"][0]["components"][0]["extra"]["nu"] == [[0, 1], [1, 0]]


def test_normalize_command():
    doc = {"lattice": {"rank": 1, "gram": [[-2]], "torsion": 1}, "chern": {"r": 2, "c1": [3], "c2": 5}}
    code, out, _ = call("normalize", "--json", json.dumps(doc))
    data = json.loads(out)
    assert data["chern"]["c1"] == [-1] and data["chern"]["c2"] == 9 and data["twist"] == [-2]


def test_modify_script():
    doc = {
        "lattice": {"rank": 1, "gram": [[-8]], "torsion": 1},
        "record": {"c1": [1], "c2": 0, "jumps": [{"at": "b", "mult": 2}]},
        "script": [
            {"op": "allowable", "at": "b", "h": 1},
            {"op": "positive", "at": "c", "h": 1},
            {"op": "allowable", "at": "c"},
        ],
    }
    code, out, err = call("modify", "--json", json.dumps(doc))
    assert code == 0, err
    steps = json.loads(out)["steps"]
    assert [rat_from_json(s["delta"]) for s in steps] == [1, 0.5, 1, 0.5]
    assert steps[-1]["jumps"] == [{"at": "b", "mult": 1}] and steps[-1]["base_twist"] == -3


def test_exit_codes(monkeypatch):
    assert call("classify", "--json", '{"lattice": ')[0] == 2
    code, _, err = call("classify", "--json", '{\n  "lattice": ]')
    assert code == 2 and "line 2, column" in err
    assert call("frobnicate")[0] == 2
    assert call("betti", "--n", "2", "--format", "csv")[0] == 2
    assert call("classify", "--json", json.dumps({"lattice": {"rank": 1, "gram": [[-3]]}, "chern": {"r": 2, "c1": [1], "c2": 0}}))[0] == 2
    assert call("classify", "--json", '{"chern": {}}')[0] == 2
    assert call("classify")[0] == 2
    negative = {"lattice": {"rank": 1, "gram": [[-2]], "torsion": 1}, "chern": {"r": 2, "c1": [0], "c2": -1}}
    assert call("strata", "--json", json.dumps(negative))[0] == 3
    assert call("construct", "--n", "-1")[0] == 3
    bad_script = {
        "lattice": {"rank": 1, "gram": [[-8]], "torsion": 1},
        "record": {"c1": [1], "c2": 0, "jumps": [{"at": "b", "mult": 1}]},
        "script": [{"op": "allowable", "at": "b", "h": 2}],
    }
    assert call("modify", "--json", json.dumps(bad_script))[0] == 3

    def boom(n, r):
        raise InvariantBreach("forced")

    monkeypatch.setattr(cli, "catalog_row", boom)
    assert call("catalog", "--max-n", "0", "--max-r", "2")[0] == 4


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "kodaira_moduli", "betti", "--n", "3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["betti"][6] == 106
