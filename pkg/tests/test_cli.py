from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from cwinv.cli import parse_n_range, run, UsageError
from cwinv.lattice import LatticePointSet


def cli(*argv, stdin=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        old = sys.stdin
        sys.stdin = io.StringIO(stdin)
    try:
        code = run(list(argv), out, err)
    finally:
        if stdin is not None:
            sys.stdin = old
    return code, out.getvalue(), err.getvalue()


def test_triangle_invariants():
    code, out, _ = cli("invariants", "--graph6", "Bw")
    assert code == 0
    assert out == "depth=1 reg=1 dim=1 degh=1\n"


def test_invariants_json_matches_tsv():
    code, out, _ = cli("invariants", "--graph6", "D?{", "--format", "json")
    obj = json.loads(out)
    _, tsv, _ = cli("invariants", "--graph6", "D?{")
    assert tsv.strip() == f"depth={obj['depth']} reg={obj['reg']} dim={obj['dim']} degh={obj['degh']}"


def test_invariants_stdin_and_formula():
    code, out, _ = cli("invariants", "--graph6", "-", stdin="Bw\nA_\n")
    assert code == 0 and out.splitlines() == ["Bw\tdepth=1 reg=1 dim=1 degh=1",
                                              "A_\tdepth=1 reg=1 dim=1 degh=1"]
    shape = "cw m=1 p=1 s=2 t=1 bip=1-1"
    _, a, _ = cli("invariants", "--shape", shape)
    _, b, _ = cli("invariants", "--shape", shape, "--formula")
    assert a == b


def test_invariants_edge_file(tmp_path):
    f = tmp_path / "c5.txt"
    f.write_text("0 1\n1 2\n2 3\n3 4\n4 0\n")
    code, out, _ = cli("invariants", "--edges", str(f), "--field", "gfp:32003")
    assert code == 0 and out == "depth=2 reg=2 dim=2 degh=2\n"


def test_closed_form_tuple4_n8():
    code, out, _ = cli("closed-form", "--kind", "cw-tuple4", "--n", "8", "--format", "tsv")
    assert code == 0
    rows = out.splitlines()
    assert rows[0] == "# closed:cw-tuple4 8 4 -"
    assert rows[1:] == ["2\t2\t5\t5", "2\t2\t6\t6", "3\t3\t3\t3", "3\t3\t4\t4", "3\t3\t5\t5"]


def test_closed_form_json_equals_tsv():
    _, tsv, _ = cli("closed-form", "--kind", "cw-dd", "--n", "11")
    _, js, _ = cli("closed-form", "--kind", "cw-dd", "--n", "11", "--format", "json")
    assert LatticePointSet.from_tsv(tsv) == LatticePointSet.from_json(js)
    _, multi, _ = cli("closed-form", "--kind", "cw-dd", "--n-range", "5..7", "--format", "json")
    assert [o["n"] for o in json.loads(multi)] == [5, 6, 7]


def test_verify_cwdd():
    code, out, _ = cli("verify", "--suite", "cwdd", "--n", "5..12")
    assert code == 0 and out == "PASS cwdd n=5..12\n"


@pytest.mark.parametrize("suite, span", [("main3", "5..8"), ("convexity", "5..8"),
                                         ("suspension", "1..5"), ("depth2-classification", "5..8"),
                                         ("sandwich", "3..6"), ("formulas-vs-oracle", "5..8")])
def test_verify_other_suites(suite, span):
    code, out, _ = cli("verify", "--suite", suite, "--n", span)
    assert code == 0 and out.startswith("PASS")


def test_construct_and_recognize():
    code, out, _ = cli("construct", "G1", "2", "2", "2")
    assert code == 0
    g6 = out.strip()
    code, out, _ = cli("recognize", "--graph6", g6)
    assert code == 0 and out.startswith("cw m=2 p=2 ")
    _, out, _ = cli("recognize", "--graph6", "Bw")
    assert out == "not Cameron-Walker\n"
    code, out, _ = cli("construct", "star", "5", "--format", "json")
    assert json.loads(out)["n"] == 5


def test_enumerate_graphs_and_cw(tmp_path):
    code, out, err = cli("enumerate", "--what", "graphs", "--n", "5", "--witnesses", "--threads", "1")
    assert code == 0
    assert LatticePointSet.from_tsv(out).sorted() == [(1, 1), (1, 2), (1, 3), (1, 4), (2, 2), (2, 3)]
    assert "witness n=5 (2, 3):" in err
    code, out, _ = cli("enumerate", "--what", "cw", "--n", "9", "--arity", "4")
    assert code == 0 and len(LatticePointSet.from_tsv(out)) == 9
    code, _, err = cli("enumerate", "--what", "graphs", "--n", "5", "--arity", "4")
    assert code == 2 and "usage error" in err


def test_enumerate_warm_cache_is_byte_identical(tmp_path, monkeypatch):
    monkeypatch.delenv("CWINV_CACHE", raising=False)
    args = ("enumerate", "--n", "6", "--cache", str(tmp_path), "--threads", "1")
    _, cold, _ = cli(*args)
    assert any(tmp_path.iterdir())
    _, warm, _ = cli(*args)
    _, two, _ = cli("enumerate", "--n", "6", "--threads", "2")
    assert cold == warm == two


def test_cache_env_overrides_flag(tmp_path, monkeypatch):
    monkeypatch.setenv("CWINV_CACHE", str(tmp_path / "env"))
    cli("enumerate", "--n", "4", "--cache", str(tmp_path / "flag"))
    assert (tmp_path / "env").exists() and not (tmp_path / "flag").exists()


def test_witness_command():
    code, out, _ = cli("witness", "--theorem", "cw-tuple4", "--n", "9", "--point", "3,4,4,4")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "# depth=3 reg=4 dim=4 degh=4"
    code, out, _ = cli("witness", "--theorem", "graph-dd", "--n", "9", "--point", "(5,6)", "--format", "json")
    obj = json.loads(out)
    assert obj["invariants"]["depth"] == 5 and obj["invariants"]["dim"] == 6
    code, _, err = cli("witness", "--theorem", "cw-dd", "--n", "9", "--point", "2,5")
    assert code == 2


def test_diff_and_strict(tmp_path):
    a, b = tmp_path / "a.tsv", tmp_path / "b.json"
    cli("closed-form", "--kind", "c-minus", "--n", "9", "--out", str(a))
    s = LatticePointSet.from_tsv(a.read_text())
    b.write_text(LatticePointSet(9, 2, s.points | {(5, 6)}, "enumerated:builtin").to_json())
    code, out, _ = cli("diff", str(a), str(b))
    assert code == 0 and out == "+\t5\t6\n"
    code, _, _ = cli("diff", str(a), str(b), "--strict")
    assert code == 1
    code, out, _ = cli("diff", str(a), str(a), "--strict")
    assert code == 0 and out == ""


def test_plot_command(tmp_path):
    code, out, _ = cli("plot", "--kind", "cw", "--n", "9")
    assert code == 0 and "<svg" in out and out.count("<circle") == 8
    f = tmp_path / "t.tsv"
    cli("closed-form", "--kind", "cw-tuple4", "--n", "9", "--out", str(f))
    code, out, _ = cli("plot", "--input", str(f))
    assert code == 0 and out.count("<circle") == 8


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["invariants"],
        ["invariants", "--graph6", "D?"],
        ["invariants", "--edges", "/nonexistent/file"],
        ["closed-form", "--kind", "cw-dd", "--n", "3"],
        ["closed-form", "--kind", "cw-dd", "--n", "x"],
        ["closed-form", "--kind", "cw-dd", "--n", "5", "--threads", "0"],
        ["invariants", "--graph6", "Bw", "--field", "gfp:4"],
        ["construct", "G1", "1"],
        ["plot", "--kind", "cw", "--n", "5..6"],
    ],
)
def test_usage_errors_exit_2(argv):
    code, out, err = cli(*argv)
    assert code == 2 and err.startswith("cwinv:")


def test_graph6_error_reports_offset():
    code, _, err = cli("invariants", "--graph6", "A`")
    assert code == 2 and "byte offset 1" in err


def test_recognition_conflict_exit_1(monkeypatch):
    import cwinv.cameron_walker as cw

    monkeypatch.setattr(cw, "is_cw_semantic", lambda g: True)
    code, _, err = cli("recognize", "--graph6", "Bw")
    assert code == 1 and "disagree" in err


def test_parse_n_range():
    assert parse_n_range("5..7") == [5, 6, 7]
    assert parse_n_range("8") == [8]
    with pytest.raises(UsageError):
        parse_n_range("7..5")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "cwinv", "invariants", "--graph6", "Bw"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout == "depth=1 reg=1 dim=1 degh=1\n"
