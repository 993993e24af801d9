from __future__ import annotations

import itertools

import pytest
from hypothesis import settings

from cwinv.graph import Graph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def all_labeled_graphs(n):
    """Every labelled simple graph on n vertices (2^C(n,2) of them)."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [pairs[k] for k in range(len(pairs)) if mask >> k & 1])


def to_nx(g: Graph):
    import networkx as nx

    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_nx(h) -> Graph:
    nodes = sorted(h.nodes())
    idx = {v: i for i, v in enumerate(nodes)}
    return Graph.from_edges(len(nodes), [(idx[u], idx[v]) for u, v in h.edges()])


@pytest.fixture(scope="session")
def atlas_connected():
    """networkx's graph atlas: all graphs up to 7 vertices, as an external reference."""
    import networkx as nx

    out = {}
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() == 0 or not nx.is_connected(h):
            continue
        out.setdefault(h.number_of_nodes(), []).append(from_nx(h))
    return out


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
