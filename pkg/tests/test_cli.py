from __future__ import annotations

import io
import json
import os
import subprocess
import sys

import pytest

from sqbgg.cli import main

TRI = '{"n": 3, "facets": [[1, 2], [1, 3], [2, 3]]}'
TWO_EDGES = '{"n": 4, "facets": [[1, 2], [3, 4]]}'


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_betti_hochster_example():
    code, text = run("betti", TRI, "--method", "hochster", "--field", "q")
    assert code == 0
    rows = text.splitlines()
    assert "0\t-\t1" in rows and "1\t1,2,3\t1" in rows


@pytest.mark.parametrize("method", ["koszul", "hochster", "resolution", "bgg"])
@pytest.mark.parametrize("field", ["q", "fp:2"])
def test_betti_routes_print_identical_bytes(method, field):
    ref = run("betti", TWO_EDGES, "--field", field)[1]
    assert run("betti", TWO_EDGES, "--method", method, "--field", field) == (0, ref)


def test_betti_tsv_grammar():
    _, text = run("betti", TWO_EDGES, "--which", "ideal")
    for line in text.splitlines():
        i, F, v = line.split("\t")
        assert int(i) >= 0 and int(v) > 0
        assert F == "-" or [int(x) for x in F.split(",")] == sorted({int(x) for x in F.split(",")})


def test_betti_grid_and_json():
    code, grid = run("betti", TRI, "--format", "grid")
    assert code == 0 and grid.splitlines()[1] == "total: 1 1"
    _, js = run("betti", TRI, "--format", "json")
    assert json.loads(js) == {"n": 3, "entries": [[0, "-", 1], [1, "1,2,3", 1]]}


def test_dual_example_and_roundtrip():
    code, text = run("dual", TRI)
    assert code == 0 and json.loads(text) == {"n": 3, "facets": [[]]}
    for src in (TRI, TWO_EDGES, '{"n": 2, "facets": [], "void": true}'):
        once = run("dual", src)[1]
        twice = run("dual", once)[1]
        assert json.loads(twice) == json.loads(run("dual", run("dual", twice)[1])[1])
        assert json.loads(twice) == json.loads(src) | ({"void": True} if "void" in src else {})


def test_alexander_roundtrips_its_own_output():
    _, once = run("alexander", TRI)
    _, twice = run("alexander", once)
    ring = run("betti", TRI)[1]
    assert run("betti", twice)[1] == ring
    # 𝐀(K[Δ]) for the triangle is the maximal ideal
    assert run("betti", once)[1] == run("betti", '{"n": 3, "facets": [[]]}', "--which", "ideal")[1]


def test_extremal_and_projreg():
    _, text = run("extremal", TRI, "--format", "tsv")
    assert text == "1\t1,2,3\t1\n"
    _, text = run("extremal", TRI, "--grading", "coarse")
    assert json.loads(text) == {"grading": "coarse", "extremal": [[1, 3, 1]]}
    _, text = run("projreg", TRI)
    assert json.loads(text) == {"projdim": 1, "reg": 2}
    _, text = run("projreg", '{"n": 2, "facets": [], "void": true}', "--format", "tsv")
    assert text == "projdim\t-\nreg\t-\n"


def test_distinguished_and_growth():
    _, text = run("distinguished", TRI, "--format", "tsv")
    assert text.splitlines() == ["1,2\t0", "1,3\t0", "2,3\t0"]
    _, text = run("distinguished", TRI, "--kind", "z")
    assert json.loads(text)["pairs"] == [[2, 0]]
    _, text = run("growth", TRI, "--format", "tsv")
    assert "2\t3\t1" in text.splitlines()


def test_verify_example():
    code, text = run("verify", "--suite", "bcp", "--gen", "all", "--n", "3")
    rep = json.loads(text)
    assert code == 0 and rep["failures"] == [] and rep["checked"] == 31
    assert rep["elapsed_ms"] is None


def test_verify_replay(tmp_path):
    # a hand-made report whose recorded failure no longer reproduces
    fake = {"suite": "bcp", "failures": [{"instance": {"kind": "complex", "n": 3, "field": "q",
                                                        "tag": "t", "complex": json.loads(TRI)}}]}
    p = tmp_path / "report.json"
    p.write_text(json.dumps(fake))
    code, text = run("verify", "--replay", str(p))
    assert code == 0 and json.loads(text)["reproduced"] == 0


def test_gen_emits_complexes():
    code, text = run("gen", "--gen", "all", "--n", "2")
    lines = text.splitlines()
    assert code == 0 and len(lines) == 2 + 3 + 6
    code, text = run("gen", "--gen", "cone", "--n", "3", "--samples", "2")
    assert [json.loads(l)["kind"] for l in text.splitlines()] == ["sq-complex"] * 2


@pytest.mark.parametrize("argv,token", [
    (["betti", TRI, "--field", "fp:4"], "fp:4"),
    (["betti", '{"n": 2, "facets": [[1, 3]]}'], "3"),
    (["betti", '{"n": 2, "facets": [[1'], "JSON"),
    (["betti", "no/such/file.json"], "no/such/file.json"),
    (["verify", "--suite", "theoremA", "--gen", "cone", "--n", "3"], "theoremA"),
    (["verify", "--suite", "bcp", "--gen", "all", "--n", "5"], "5"),
    (["dual", '{"n": 1, "dims": [1, 1]}'], "dual"),
])
def test_malformed_input_exits_2_naming_the_token(argv, token, capsys):
    assert main(argv, io.StringIO()) == 2
    assert token in capsys.readouterr().err


def test_unknown_flag_is_rejected(capsys):
    assert main(["betti", TRI, "--bogus"], io.StringIO()) == 2
    assert "--bogus" in capsys.readouterr().err


def test_verification_failure_exits_1(monkeypatch):
    import sqbgg.harness as h

    monkeypatch.setitem(h._S_SUITES, "bcp", lambda C, ck, label: ck.expect("forced", 0, 1))
    code, text = run("verify", "--suite", "bcp", "--n", "1")
    assert code == 1 and json.loads(text)["failures"]


def test_stdin_input(monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(TRI))
    assert run("dual", "-") == (0, '{"facets":[[]],"n":3}\n')


def _subprocess(argv, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    return subprocess.run([sys.executable, "-m", "sqbgg", *argv], capture_output=True, env=env, check=False)


@pytest.mark.parametrize("argv", [
    ["gen", "--gen", "cone", "--n", "3", "--samples", "3", "--seed", "11"],
    ["betti", TWO_EDGES, "--method", "bgg", "--format", "grid"],
])
def test_bytes_independent_of_hash_seed(argv):
    a, b = _subprocess(argv, 1), _subprocess(argv, 2)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout and a.stdout
