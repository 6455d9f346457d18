import io
import json
import subprocess
import sys

import pytest

from symgraph import cli
from symgraph.core import read_graph


def run(argv):
    buf = io.StringIO()
    code = cli.main(argv, out=buf)
    return code, [json.loads(l) for l in buf.getvalue().splitlines()]


def test_gen_then_diameter(tmp_path):
    g = str(tmp_path / "g.txt")
    code, [rep] = run(["gen", "--reduction", "4", "--k", "9", "--sx", "2,4,8", "--sy", "1,3,5", "--out", g])
    assert code == 0 and rep["result"]["disjoint"] is True
    assert read_graph(g).digest() == rep["input_digest"]
    side = json.loads(open(g + ".json").read())
    assert {"reduction", "k", "ell", "seed", "disjoint", "possible_edges"} <= set(side)
    code, [rep] = run(["diameter", g, "--mode", "exact"])
    assert rep["result"]["value"] == 2
    assert set(rep["counters"]) == {"one_step", "set_ops", "peak_sets"}


def test_objective_reach(tmp_path):
    g, t = str(tmp_path / "g.txt"), tmp_path / "t.txt"
    t.write_text("0\n")
    run(["gen", "--reduction", "1", "--k", "8", "--ell", "1", "--mode", "disjoint", "--out", g])
    code, [rep] = run(["objective", g, "--kind", "reach", "--target", str(t)])
    assert code == 0 and rep["result"]["winning"] == list(range(9))


def test_scc_edgeless(tmp_path):
    g = str(tmp_path / "e.txt")
    run(["gen", "--family", "edgeless", "--n", "5", "--out", g])
    code, [rep] = run(["scc", g])
    assert rep["result"]["count"] == 5 and rep["counters"]["one_step"] <= 15


def test_malformed_graph_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1\n0 x\n")
    code, _ = run(["scc", str(bad)])
    assert code == 2
    assert "line 2, col 3" in capsys.readouterr().err


def test_bad_target_names_target_file(tmp_path, capsys):
    g, t = str(tmp_path / "g.txt"), tmp_path / "t.txt"
    run(["gen", "--family", "cycle", "--n", "3", "--out", g])
    t.write_text("7\n")
    assert run(["objective", g, "--kind", "reach", "--target", str(t)])[0] == 2
    assert str(t) in capsys.readouterr().err


def test_contract_violation_exit_3(tmp_path):
    g = str(tmp_path / "p.txt")
    run(["gen", "--family", "path", "--n", "4", "--out", g])
    assert run(["diameter", g, "--mode", "2approx"])[0] == 3
    assert run(["gen", "--reduction", "1", "--k", "10", "--ell", "3", "--out", g])[0] == 3


def test_input_errors_exit_2(tmp_path):
    g = str(tmp_path / "g.txt")
    assert run(["gen", "--reduction", "2", "--k", "4", "--sx", "1,a", "--sy", "", "--out", g])[0] == 2
    assert run(["scc", str(tmp_path / "missing.txt")])[0] == 2
    run(["gen", "--family", "cycle", "--n", "3", "--out", g])
    t = tmp_path / "t.txt"
    t.write_text("0")
    assert run(["objective", g, "--kind", "reach", "--target", str(t), "--method", "fixpoint"])[0] == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["nosuch"])
    assert exc.value.code == 2


def test_protocol_and_bench(tmp_path, monkeypatch):
    code, [rep] = run(["protocol", "--reduction", "1", "--k", "16", "--ell", "4", "--algorithm", "scc"])
    assert code == 0 and rep["result"]["max_bits_per_op"] <= 4
    monkeypatch.setenv("SYMGRAPH_THREADS", "3")
    code, lines = run(["bench", "--sizes", "8,16", "--repeat", "2", "--algorithm", "buchi"])
    assert code == 0 and [l["n"] for l in lines] == [8, 8, 16, 16]


def test_round_trip_digest(tmp_path):
    g = str(tmp_path / "g.txt")
    _, [rep] = run(["--seed", "12345678901234567890", "gen", "--family", "random", "--n", "50", "--out", g])
    assert rep["seed"] == 12345678901234567890
    _, [again] = run(["scc", g])
    assert again["input_digest"] == rep["input_digest"]


def test_module_entry_point(tmp_path):
    g = str(tmp_path / "g.txt")
    out = subprocess.run([sys.executable, "-m", "symgraph", "gen", "--family", "cycle", "--n", "4",
                          "--out", g], capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["result"]["m"] == 4
