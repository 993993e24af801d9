"""The compiled kernels and the pure-Python fallback must agree exactly."""

from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from cwinv import _pykernels, kernels

from test_graph import graphs

compiled = pytest.importorskip("cwinv._kernels")


@given(graphs(max_n=10), st.sampled_from([2, 3, 32003]))
def test_betti_sweep_backends_agree(g, p):
    assert compiled.betti_sweep(g.n, g.adj, p) == _pykernels.betti_sweep(g.n, g.adj, p)


@given(graphs(max_n=12), st.lists(st.integers(0, 2), min_size=12, max_size=12))
def test_canonical_labeling_backends_agree(g, cols):
    assert compiled.canonical_labeling(g.n, g.adj, None) == _pykernels.canonical_labeling(g.n, g.adj)
    c = cols[: g.n]
    assert compiled.canonical_labeling(g.n, g.adj, c) == _pykernels.canonical_labeling(g.n, g.adj, c)


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


def test_sweep_limit_falls_back():
    assert compiled.MAX_SWEEP_VERTICES == 20
    # 21 vertices goes through the Python path; an edgeless graph is trivial
    assert kernels.betti_sweep(21, (0,) * 21, 2) == {(0, 0): 1}


def test_known_betti_tables():
    edge = (0b10, 0b01)
    assert kernels.betti_sweep(2, edge, 2) == {(0, 0): 1, (1, 2): 1}
    tri = (0b110, 0b101, 0b011)
    assert kernels.betti_sweep(3, tri, 2) == {(0, 0): 1, (1, 2): 3, (2, 3): 2}


def test_pure_python_env_switch(monkeypatch):
    import importlib

    monkeypatch.setenv("CWINV_PURE_PYTHON", "1")
    mod = importlib.reload(kernels)
    try:
        assert mod.BACKEND == "python"
    finally:
        monkeypatch.delenv("CWINV_PURE_PYTHON")
        importlib.reload(kernels)
