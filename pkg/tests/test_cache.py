from __future__ import annotations

import pytest

from cwinv.cache import ENV_VAR, CacheMismatch, ResultCache, default_cache_dir, source_digest
from cwinv.generate import enumerate_connected_graphs
from cwinv.graph import emit_graph6
from cwinv.lattice import enumerate_graph_report
from cwinv.oracle import GF2, GF32003, InvariantBundle


def test_digest_and_env(tmp_path, monkeypatch):
    assert source_digest("builtin") == source_digest("builtin")
    f = tmp_path / "a.g6"
    f.write_text("A_\n")
    d1 = source_digest(f"graph6:{f}")
    f.write_text("Bw\n")
    assert source_digest(f"graph6:{f}") != d1
    with pytest.raises(ValueError):
        source_digest("http://x")
    monkeypatch.delenv(ENV_VAR, raising=False)
    assert default_cache_dir(None) is None
    assert default_cache_dir(tmp_path) == tmp_path
    monkeypatch.setenv(ENV_VAR, str(tmp_path / "env"))
    assert default_cache_dir(tmp_path) == tmp_path / "env"


def test_append_load_and_torn_line(tmp_path):
    c = ResultCache(tmp_path, 5, "abc", "gf2")
    c.open_writer()
    c.append("D?{", InvariantBundle(5, 1, 1, 4, 4))
    c.append("DFw", InvariantBundle(5, 2, 2, 3, 3))
    c.close()
    with open(c.path, "a") as fh:
        fh.write("DQw\t1\t1\t1")  # interrupted mid-record
    got = ResultCache(tmp_path, 5, "abc", "gf2").load()
    assert set(got) == {"D?{", "DFw"}
    assert got["DFw"].as_tuple() == (2, 2, 3, 3)
    # a row that lost only its newline is still dropped: its last number may be cut short
    c2 = ResultCache(tmp_path, 5, "abc", "gf2")
    with open(c2.path, "a") as fh:
        fh.write("\t1")
    assert "DQw" not in c2.load()
    c2.open_writer()
    c2.append("DQw", InvariantBundle(5, 1, 1, 2, 2))
    c2.close()
    got = c2.load()
    assert got["DQw"].as_tuple() == (1, 1, 2, 2) and len(got) == 3


def test_header_mismatch(tmp_path):
    c = ResultCache(tmp_path, 5, "abc", "gf2")
    c.open_writer()
    c.close()
    other = ResultCache(tmp_path, 5, "abc", "gf2")
    other._header += " extra"
    with pytest.raises(CacheMismatch):
        other.load()


def test_fields_use_separate_files(tmp_path):
    a = ResultCache(tmp_path, 6, "x", GF2.name)
    b = ResultCache(tmp_path, 6, "x", GF32003.name)
    assert a.path != b.path and ":" not in b.path.name


def test_enumeration_resumes_from_cache(tmp_path):
    full = enumerate_graph_report(6, cache_dir=tmp_path)
    assert full.computed == full.graphs == 112
    warm = enumerate_graph_report(6, cache_dir=tmp_path)
    assert warm.computed == 0
    assert warm.pairs == full.pairs and warm.witnesses == full.witnesses
    # simulate a run killed after 40 records
    path = next(tmp_path.iterdir())
    lines = path.read_text().splitlines(keepends=True)
    path.write_text("".join(lines[:41]) + lines[41][:3])
    resumed = enumerate_graph_report(6, cache_dir=tmp_path)
    assert resumed.computed == 112 - 40
    assert resumed.pairs == full.pairs and resumed.tuples == full.tuples


def test_graph6_source_dedups_and_caches(tmp_path):
    gs = enumerate_connected_graphs(5)
    f = tmp_path / "five.g6"
    body = "".join(emit_graph6(g) + "\n" for g in gs)
    # repeat the file and add a relabelled copy; duplicates are dropped
    f.write_text(body + body + emit_graph6(gs[3].relabel([4, 3, 2, 1, 0])) + "\n")
    r = enumerate_graph_report(5, source=f"graph6:{f}", cache_dir=tmp_path / "c")
    assert r.graphs == 21
    assert r.pairs.points == enumerate_graph_report(5).pairs.points
    with pytest.raises(ValueError):
        enumerate_graph_report(6, source=f"graph6:{f}")


def test_threads_give_identical_results():
    one = enumerate_graph_report(6, threads=1, batch=7)
    two = enumerate_graph_report(6, threads=2, batch=7)
    assert one.pairs == two.pairs and one.witnesses == two.witnesses and one.tuples == two.tuples
    with pytest.raises(ValueError):
        enumerate_graph_report(4, threads=0)
