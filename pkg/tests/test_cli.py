import json
import subprocess
import sys

import pytest

from powerdom.cli import run
from powerdom.generators import complete_bipartite, figure1
from powerdom.io import write_graph


@pytest.fixture
def fig1(tmp_path):
    p = tmp_path / "figure1.el"
    write_graph(figure1(), p)
    return p


def test_construct_and_verify(tmp_path, fig1, capsys):
    cert = tmp_path / "c.json"
    assert run(["construct", str(fig1), "--cert", str(cert)]) == 0
    assert "size 2" in capsys.readouterr().out
    assert json.loads(cert.read_text())["S"] == [2, 11]
    assert run(["verify", str(cert), str(fig1)]) == 0


def test_tampered_certificate_exits_one(tmp_path, fig1):
    cert = tmp_path / "c.json"
    run(["construct", str(fig1), "--cert", str(cert)])
    doc = json.loads(cert.read_text())
    doc["S"] = doc["S"][:1]
    cert.write_text(json.dumps(doc))
    assert run(["verify", str(cert), str(fig1)]) == 1


def test_garbage_certificate_exits_one(tmp_path, fig1):
    cert = tmp_path / "c.json"
    cert.write_text("{not json")
    assert run(["verify", str(cert), str(fig1)]) == 1


def test_solve_k33(tmp_path, capsys):
    p = tmp_path / "k33.g6"
    write_graph(complete_bipartite(3, 3), p)
    assert run(["solve", str(p), "--what", "pd"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "2"


@pytest.mark.parametrize("what,expected", [("dom", "3"), ("zf", "1"), ("vs", "0"), ("sp", "1")])
def test_solve_other_quantities(tmp_path, capsys, what, expected):
    p = tmp_path / "p.el"
    assert run(["gen", "path", "7", "-o", str(p)]) == 0
    capsys.readouterr()
    assert run(["solve", str(p), "--what", what]) == 0
    assert capsys.readouterr().out.splitlines()[0] == expected


def test_usage_errors_exit_two(tmp_path):
    assert run(["nonsense"]) == 2
    assert run(["solve", str(tmp_path / "missing.el")]) == 2
    assert run(["gen", "no_such_family", "-o", str(tmp_path / "x.el")]) == 2


def test_size_guard_exit_and_message(tmp_path, capsys):
    p = tmp_path / "q.el"
    run(["gen", "hypercube", "6", "-o", str(p)])
    capsys.readouterr()
    assert run(["solve", str(p)]) == 3
    assert "size guard" in capsys.readouterr().err


def test_construct_rejects_k33(tmp_path):
    p = tmp_path / "k33.el"
    write_graph(complete_bipartite(3, 3), p)
    assert run(["construct", str(p)]) == 1


def test_construct_sums_components(tmp_path, capsys):
    from powerdom.graph import Multigraph
    g = Multigraph(24, list(figure1().pairs()) + [(u + 12, v + 12) for u, v in figure1().pairs()])
    p = tmp_path / "two.el"
    write_graph(g, p)
    assert run(["construct", str(p), "--log", str(tmp_path / "log.txt"), "--dot", str(tmp_path / "g.dot")]) == 0
    assert "size 4" in capsys.readouterr().out
    assert "selected" in (tmp_path / "log.txt").read_text()
    assert "fillcolor" in (tmp_path / "g.dot").read_text()


def test_bounds_and_product(tmp_path, capsys):
    c3, k2, out = tmp_path / "c3.el", tmp_path / "k2.el", tmp_path / "prism.el"
    run(["gen", "cycle", "3", "-o", str(c3)])
    run(["gen", "path", "2", "-o", str(k2)])
    assert run(["product", str(c3), str(k2), "-o", str(out)]) == 0
    capsys.readouterr()
    assert run(["bounds", str(c3), str(k2), "--exact"]) == 0
    text = capsys.readouterr().out
    assert "exact: 1" in text and "upper_gamma_z: 1" in text
    assert run(["solve", str(out)]) == 0


def test_corpus_is_deterministic(tmp_path):
    write_graph(complete_bipartite(3, 3), tmp_path / "k33.g6")
    manifest = tmp_path / "m.txt"
    manifest.write_text("# demo\nfig gen:figure1\nk33 k33.g6\nbc gen:bridged_cubic 3\ntree gen:random_tree 8\n")
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(["corpus", str(manifest), "--csv", str(a)]) == 0
    assert run(["--seed", "0", "corpus", str(manifest), "--csv", str(b), "--workers", "2"]) == 0
    assert a.read_bytes() == b.read_bytes()
    rows = a.read_text().splitlines()
    assert rows[0] == "id,n,m,gamma_p,gamma,zf,vs,witness,construct"
    assert rows[1].startswith("fig,12,18,2,")
    assert rows[1].endswith(",2")


def test_seed_changes_random_families(tmp_path):
    manifest = tmp_path / "m.txt"
    manifest.write_text("t gen:random_cubic_multigraph 10\n")
    outs = []
    for seed in ("0", "1"):
        out = tmp_path / f"{seed}.csv"
        run(["--seed", seed, "corpus", str(manifest), "--csv", str(out)])
        outs.append(out.read_text())
    assert outs[0] != outs[1]
    assert run(["--seed", "0", "corpus", str(manifest), "--csv", str(tmp_path / "again.csv")]) == 0
    assert (tmp_path / "again.csv").read_text() == outs[0]


def test_bounds_corpus(tmp_path):
    manifest = tmp_path / "pairs.txt"
    manifest.write_text("ds gen:double_star,2,2 k2 gen:path,2\nc3 gen:cycle,3 p3 gen:path,3\n")
    out = tmp_path / "b.csv"
    assert run(["bounds-corpus", str(manifest), "--csv", str(out), "--exact",
                "--flaw-dir", str(tmp_path / "flaws")]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("g_id,h_id,lower_factor")
    assert len(lines) == 3


def test_console_script_entry_point(tmp_path):
    out = subprocess.run([sys.executable, "-m", "powerdom.cli", "gen", "figure1", "-o", str(tmp_path / "f.el")],
                         capture_output=True, text=True)
    assert out.returncode == 0 and (tmp_path / "f.el").exists()
