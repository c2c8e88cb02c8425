import json
import subprocess
import sys

import pytest

from betweenness import generators as gen
from betweenness.cli import main
from betweenness.graph import write_edge_list


@pytest.fixture
def graphs(tmp_path):
    paths = {}
    for name, g in {
        "cycle9": gen.cycle(9),
        "path9": gen.path(9),
        "k4": gen.complete(4),
        "tri4": gen.tripartite_lb(4),
        "gnp40": gen.gnp(40, 0.15, 3),
        "lattice": gen.layered(70, 2),
    }.items():
        paths[name] = str(tmp_path / f"{name}.el")
        write_edge_list(g, paths[name])
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    report = json.loads(err.splitlines()[0])
    return code, out, report


def table(out):
    lines = out.splitlines()
    assert lines[0] == "vertex\tbc"
    return [float(line.split("\t")[1]) for line in lines[1:]]


def test_compute_cycle(capsys, graphs):
    code, out, report = run(capsys, "compute", graphs["cycle9"], "--method", "brandes")
    assert code == 0
    assert table(out) == [6.0] * 9
    assert out.splitlines()[1] == "0\t6.000000000"
    assert report["method"] == "brandes" and report["exit_code"] == 0 and report["wall_ms"] >= 0


def test_compute_tripartite(capsys, graphs):
    code, out, _ = run(capsys, "compute", graphs["tri4"], "--method", "parallel-pairwise")
    assert code == 0 and table(out)[4] == 16.0


def test_compute_k4_algebraic(capsys, graphs):
    code, out, _ = run(capsys, "compute", graphs["k4"], "--method", "algebraic")
    assert code == 0 and table(out) == [0.0] * 4


def test_no_normalize(capsys, graphs):
    _, out, _ = run(capsys, "compute", graphs["path9"], "--no-normalize")
    assert table(out)[4] == 32.0


def test_out_file(capsys, graphs, tmp_path):
    dest = tmp_path / "bc.tsv"
    code, out, report = run(capsys, "compute", graphs["path9"], "--out", str(dest))
    assert code == 0 and out == "" and report["output"] == str(dest)
    assert table(dest.read_text())[4] == 16.0


def test_rounds_reported(capsys, graphs):
    _, _, report = run(capsys, "compute", graphs["gnp40"], "--method", "parallel-wavefront")
    assert report["rounds"] == 1


@pytest.mark.parametrize("method, code", [("brandes", 3), ("algebraic", 3), ("parallel-pairwise", 3),
                                          ("parallel-wavefront", 3), ("oracle", 4)])
def test_lattice_never_prints_a_table(capsys, graphs, method, code):
    got, out, report = run(capsys, "compute", graphs["lattice"], "--method", method)
    assert got == code and out == ""
    assert report["overflow"] == (code == 3)


def test_algebraic_on_directed(capsys, graphs):
    code, out, report = run(capsys, "compute", graphs["tri4"], "--method", "algebraic")
    assert code == 2 and out == "" and report["infeasible"]


def test_parse_error(capsys, tmp_path):
    bad = tmp_path / "bad.el"
    bad.write_text("2 1 undirected unweighted\n0 0\n")
    code, _, report = run(capsys, "compute", str(bad))
    assert code == 1 and "line 2" in report["error"]
    code, _, _ = run(capsys, "compute", str(tmp_path / "missing.el"))
    assert code == 1


def test_disconnected(capsys, tmp_path):
    f = tmp_path / "two.el"
    f.write_text("4 2 undirected unweighted\n0 1\n2 3\n")
    assert run(capsys, "compute", str(f), "--method", "algebraic")[0] == 2
    assert run(capsys, "compute", str(f), "--method", "brandes")[0] == 0
    code, out, _ = run(capsys, "verify", str(f))
    assert code == 0 and "brandes\toracle" in out


def test_verify_path(capsys, graphs):
    code, out, _ = run(capsys, "verify", graphs["path9"])
    assert code == 0
    assert out.splitlines()[-1] == "PASS\tmax deviation 0.000e+00"


def test_verify_gnp(capsys, graphs):
    code, out, _ = run(capsys, "verify", graphs["gnp40"], "--seed", "3")
    assert code == 0 and out.splitlines()[-1].startswith("PASS")


def test_verify_fault_injection(capsys, graphs):
    code, out, _ = run(capsys, "verify", graphs["path9"], "--debug-corrupt-lambda")
    assert code == 5 and out.splitlines()[-1].startswith("FAIL")


def test_gen_cycle(capsys):
    code, out, _ = run(capsys, "gen", "cycle", "9")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "9 9 undirected unweighted" and len(lines) == 10


def test_gen_tripartite(capsys):
    _, out, _ = run(capsys, "gen", "tripartite-lb", "4")
    lines = out.splitlines()
    assert lines[0] == "12 32 directed weighted" and len(lines) == 33


def test_gen_deterministic(capsys):
    a = run(capsys, "gen", "gnp", "30", "0.2", "--seed", "7")[1]
    b = run(capsys, "gen", "gnp", "30", "0.2", "--seed", "7")[1]
    assert a == b


def test_gen_bad_params(capsys):
    assert run(capsys, "gen", "cycle", "2")[0] == 1


def bench_rows(out):
    lines = out.splitlines()
    head = lines[0].split("\t")
    return [dict(zip(head, line.split("\t"))) for line in lines[1:]]


def test_bench_threads(capsys):
    code, out, _ = run(capsys, "bench", "gnp:500:0.02", "--methods", "brandes", "--threads", "1,4")
    rows = bench_rows(out)
    assert code == 0 and [r["threads"] for r in rows] == ["1", "4"]
    assert rows[0]["checksum"] == rows[1]["checksum"]


def test_bench_counters(capsys):
    _, out, _ = run(capsys, "bench", "cycle:101", "--methods", "algebraic,parallel-pairwise,brandes")
    rows = bench_rows(out)
    assert rows[0]["fwd_iters"] == "50"
    assert rows[1]["rounds"] == "1"
    assert len({r["checksum"] for r in rows}) == 1


def test_threads_env_default(monkeypatch, capsys, graphs):
    monkeypatch.setenv("BC_THREADS", "3")
    _, _, report = run(capsys, "compute", graphs["path9"])
    assert report["threads"] == 3


def test_console_entry_point(graphs):
    proc = subprocess.run([sys.executable, "-m", "betweenness.cli", "compute", graphs["k4"]],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stderr)["command"] == "compute"
