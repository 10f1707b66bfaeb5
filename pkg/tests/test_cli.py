import os
import subprocess
import sys

import pytest

from tind.cli import main
from tind.decomp import parse_decomposition, residual_independence_number, validate
from tind.generators import biclique, cycle, fq, path, random_gnp, wheel
from tind.graph import parse_graph, serialize_graph


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def graph_file(files, name, g):
    return files(name, serialize_graph(g))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_decompose_w4_c6(files, capsys, tmp_path):
    g = graph_file(files, "c6.gr", cycle(6))
    out_path = str(tmp_path / "c6.td")
    code, out, _ = run(capsys, "decompose", g, "--class", "w4", "-o", out_path)
    assert code == 0 and out == "IN_CLASS\n"
    d = parse_decomposition(open(out_path).read())
    assert validate(cycle(6), d) and residual_independence_number(cycle(6), d) <= 1
    code, out, _ = run(capsys, "validate", g, out_path)
    assert code == 0 and out.startswith("VALID ") and "residual 0" in out and "ell 3" in out


def test_decompose_k2q_robust_rejects_k55(files, capsys):
    g = graph_file(files, "k55.gr", biclique(5, 5))
    code, out, _ = run(capsys, "decompose", g, "--class", "k2q", "--q", "3", "--robust")
    assert code == 2 and out.startswith("NOT_IN_CLASS independent set of size 5 in bag ")


def test_decompose_rejection_exit_2(files, capsys):
    g = graph_file(files, "w4.gr", wheel(4))
    code, out, _ = run(capsys, "decompose", g, "--class", "w4")
    assert code == 2 and out.startswith("NOT_IN_CLASS ")
    code, out, _ = run(capsys, "decompose", graph_file(files, "c5.gr", cycle(5)), "--class", "chordal")
    assert code == 2 and out.startswith("NOT_IN_CLASS hole")


def test_validate_corrupted_file(files, capsys):
    g = graph_file(files, "c6.gr", cycle(6))
    td = files("bad.td", "s td 2 3 6\nb 1 1 2 x\n")
    code, _, err = run(capsys, "validate", g, td)
    assert code == 1 and err.startswith("E_FORMAT")
    code, _, err = run(capsys, "validate", files("bad.gr", "p 3\ne 1\n"), td)
    assert code == 1 and err.startswith("E_FORMAT")


def test_validate_invalid_decomposition(files, capsys):
    g = graph_file(files, "c4.gr", cycle(4))
    td = files("c4.td", "s td 1 3 4\nb 1 1 2 3\n")
    code, out, _ = run(capsys, "validate", g, td)
    assert code == 1 and out.startswith("INVALID ")


def test_error_prefixes(files, capsys, tmp_path):
    code, _, err = run(capsys, "validate", str(tmp_path / "missing.gr"), str(tmp_path / "missing.td"))
    assert code == 1 and err.startswith("E_IO")
    g = graph_file(files, "c6.gr", cycle(6))
    code, _, err = run(capsys, "decompose", g, "--class", "k2q")
    assert code == 1 and err.startswith("E_PRECOND")
    code, _, err = run(capsys, "mwis", g, "--td", files("x.td", "s td 1 6 6\nb 1 1 2 3 4 5 6\n"))
    assert code == 1 and err.startswith("E_PRECOND")
    code, _, err = run(capsys, "mwis", g)
    assert code == 1 and err.startswith("E_PRECOND")
    with pytest.raises(SystemExit) as e:
        main(["decompose", g, "--class", "nope"])
    assert e.value.code == 1
    assert "E_PRECOND" in capsys.readouterr().err


def test_mwis_and_pack(files, capsys):
    p3 = graph_file(files, "p3.gr", path(3))
    w = files("w.txt", "1\n5\n1\n")
    for edge_line in ("t 1 2", "1 2"):
        td = files("p3.td", f"s td 2 2 3\nb 1 1 2\nb 2 2 3\n{edge_line}\n")
        code, out, _ = run(capsys, "mwis", p3, "--weights", w, "--td", td, "--k", "1")
        assert code == 0 and out == "WEIGHT 5\nSET 2\n"
    c6 = graph_file(files, "c6.gr", cycle(6))
    code, out, _ = run(capsys, "mwis", c6, "--class", "w4")
    assert code == 0 and out == "WEIGHT 3\nSET 1 3 5\n"
    subs = files("edges.txt", "".join(f"{a} {b}\n" for a, b in cycle(6).edges()))
    code, out, _ = run(capsys, "pack", c6, "--subgraphs", subs, "--class", "k2q", "--q", "3")
    assert code == 0 and out.startswith("WEIGHT 2\n")


def test_oracle_and_structure_commands(files, capsys):
    c6 = graph_file(files, "c6.gr", cycle(6))
    assert run(capsys, "oracle", "alpha", c6)[1] == "3\n"
    assert run(capsys, "oracle", "mms", graph_file(files, "k23.gr", biclique(2, 3)))[1] == "3\n"
    code, out, _ = run(capsys, "oracle", "minor", c6, "--pattern", graph_file(files, "c4.gr", cycle(4)))
    assert code == 0 and len(out.splitlines()) == 4
    code, out, _ = run(capsys, "oracle", "minor", graph_file(files, "f2.gr", fq(2)),
                       "--pattern", graph_file(files, "w4.gr", wheel(4)))
    assert out == "NO_MODEL\n"
    assert run(capsys, "spqr", c6)[0] == 0
    assert run(capsys, "blocks", c6)[0] == 0


def test_oracle_limit_env(files, capsys, monkeypatch):
    g = graph_file(files, "g.gr", random_gnp(12, 0.3, 1))
    monkeypatch.setenv("TIND_ORACLE_LIMIT", "5")
    code, _, err = run(capsys, "oracle", "alpha", g)
    assert code == 1 and err.startswith("E_PRECOND")
    monkeypatch.setenv("TIND_ORACLE_LIMIT", "many")
    code, _, err = run(capsys, "oracle", "alpha", g)
    assert code == 1 and err.startswith("E_PRECOND")
    monkeypatch.setenv("TIND_ORACLE_LIMIT", "40")
    assert run(capsys, "oracle", "alpha", g)[0] == 0


def test_generate_is_seeded(capsys):
    a = run(capsys, "generate", "random_gnp", "9", "0.4", "--seed", "3")[1]
    b = run(capsys, "generate", "random_gnp", "9", "0.4", "--seed", "3")[1]
    c = run(capsys, "generate", "random_gnp", "9", "0.4", "--seed", "4")[1]
    assert a == b and a != c
    assert parse_graph(a).n == 9


@pytest.mark.parametrize("cls,extra", [("w4", []), ("k5m", []), ("chordal", []), ("k2q", ["--q", "3"])])
def test_emit_then_validate_round_trip(files, capsys, tmp_path, cls, extra):
    for seed in range(8):
        g = random_gnp(10, 0.35, seed)
        gp = graph_file(files, f"g{seed}.gr", g)
        td = str(tmp_path / f"g{seed}.{cls}.td")
        code, _, _ = run(capsys, "decompose", gp, "--class", cls, *extra, "-o", td)
        if code == 0:
            code, out, _ = run(capsys, "validate", gp, td)
            assert code == 0 and out.startswith("VALID")
        else:
            assert code == 2


def test_repeated_runs_are_byte_identical(files, tmp_path):
    g = graph_file(files, "g.gr", random_gnp(11, 0.4, 5))
    env = dict(os.environ, PYTHONHASHSEED="random")
    outs = []
    for i in range(2):
        td = str(tmp_path / f"out{i}.td")
        r = subprocess.run([sys.executable, "-m", "tind", "decompose", g, "--class", "k5m", "-o", td],
                           capture_output=True, env=env)
        s = subprocess.run([sys.executable, "-m", "tind", "spqr", g], capture_output=True, env=env)
        outs.append((r.returncode, r.stdout, open(td, "rb").read() if r.returncode == 0 else b"", s.stdout))
    assert outs[0] == outs[1]
