from __future__ import annotations

import itertools

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from cwinv.generate import enumerate_connected_graphs
from cwinv.graph import (
    Graph,
    GraphFormatError,
    bits,
    complete,
    cycle,
    emit_edge_list,
    emit_graph6,
    independence_number,
    matching_numbers,
    maximum_independent_set,
    parse_edge_list,
    parse_graph6,
    path,
    popcount,
    read_graph6_lines,
    s_suspension,
    star,
)

from conftest import all_labeled_graphs, to_nx


@st.composite
def graphs(draw, max_n=9, min_n=1):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph.from_edges(n, chosen)


# -- Graph validation --------------------------------------------------------


def test_graph_rejects_asymmetry_loops_and_range():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0))
    with pytest.raises(ValueError):
        Graph(1, (0b1,))
    with pytest.raises(ValueError):
        Graph(2, (0b100, 0))
    with pytest.raises(ValueError):
        Graph(63, (0,) * 63)


def test_basic_accessors():
    g = path(4)
    assert g.edges() == [(0, 1), (1, 2), (2, 3)]
    assert g.num_edges() == 3
    assert [g.degree(v) for v in range(4)] == [1, 2, 2, 1]
    assert g.is_connected()
    assert not Graph.from_edges(3, [(0, 1)]).is_connected()
    assert g.non_cut_vertices() == 0b1001
    assert g.induced(0b0110).edges() == [(0, 1)]


# -- graph6 -------------------------------------------------------------------


def test_graph6_small_examples():
    g = parse_graph6("@")
    assert g.n == 1 and g.num_edges() == 0
    g = parse_graph6("A_")
    assert g.n == 2 and g.edges() == [(0, 1)]
    g = parse_graph6("D?{")
    assert g.n == 5
    assert emit_graph6(g) == "D?{"


def test_graph6_matches_networkx_decoder_on_corpus():
    corpus = [emit_graph6(g) for n in range(1, 7) for g in enumerate_connected_graphs(n)]
    corpus += ["D?{", "A_", "@", "Bw", "C~", "E?Bw"]
    for code in corpus:
        ours = parse_graph6(code)
        ref = nx.from_graph6_bytes(code.encode())
        assert ours.n == ref.number_of_nodes()
        assert sorted(ours.edges()) == sorted(tuple(sorted(e)) for e in ref.edges())
        assert nx.to_graph6_bytes(ref, header=False).decode().strip() == emit_graph6(ours)


@given(graphs(max_n=20))
def test_graph6_roundtrip(g):
    code = emit_graph6(g)
    assert parse_graph6(code) == g
    assert emit_graph6(parse_graph6(code)) == code
    assert all(63 <= ord(c) <= 126 for c in code)


def test_graph6_header_and_bytes_input():
    assert parse_graph6(b">>graph6<<A_\n").edges() == [(0, 1)]


@pytest.mark.parametrize(
    "code, offset",
    [
        ("", 0),
        ("D?", 2),          # truncated
        ("A_?", 2),         # trailing garbage
        ("A`", 1),          # non-zero padding
        ("~??~", 0),        # n > 62
        (" A", 0),          # bad length byte
        ("B\x7f", 1),       # byte outside the printable range
    ],
)
def test_graph6_errors_name_offset(code, offset):
    with pytest.raises(GraphFormatError) as info:
        parse_graph6(code)
    assert info.value.offset == offset
    assert f"byte offset {offset}" in str(info.value)


def test_read_graph6_lines_skips_blank_and_reports_line():
    gs = list(read_graph6_lines(["A_", "", "# comment", "Bw"]))
    assert [g.n for g in gs] == [2, 3]
    with pytest.raises(GraphFormatError, match="line 2"):
        list(read_graph6_lines(["A_", "A"]))


def test_edge_list_roundtrip():
    g = cycle(5)
    assert parse_edge_list(emit_edge_list(g)) == g
    assert parse_edge_list("# n=4\n0 1\n").n == 4
    with pytest.raises(GraphFormatError):
        parse_edge_list("0 1 2\n")


# -- independence ---------------------------------------------------------------


def test_independence_examples():
    assert independence_number(path(3)) == 2
    assert independence_number(complete(3)) == 1
    assert independence_number(Graph.empty(6)) == 6
    for n in range(2, 9):
        assert independence_number(star(n)) == n - 1


@given(graphs(max_n=11))
def test_independence_matches_networkx_clique_of_complement(g):
    comp = nx.complement(to_nx(g))
    ref = max((len(c) for c in nx.find_cliques(comp)), default=0)
    assert independence_number(g) == ref
    mis = maximum_independent_set(g)
    assert g.is_independent(mis) and popcount(mis) == ref


# -- matchings ------------------------------------------------------------------


def _brute_matchings(g):
    edges = g.edges()
    m = im = 0
    for k in range(1, len(edges) + 1):
        for sub in itertools.combinations(edges, k):
            verts = [v for e in sub for v in e]
            if len(set(verts)) != 2 * k:
                continue
            m = max(m, k)
            mask = sum(1 << v for v in verts)
            if sum(popcount(g.adj[v] & mask) for v in verts) == 2 * k:
                im = max(im, k)
    return m, im


def test_matching_examples():
    assert matching_numbers(star(5)) == (1, 1)
    assert matching_numbers(cycle(5)) == (2, 1)
    from cwinv.cameron_walker import star_triangle

    for k in range(1, 5):
        assert matching_numbers(star_triangle(k)) == (k, k)


@given(graphs(max_n=8))
def test_matchings_match_brute_force_and_networkx(g):
    m, im = matching_numbers(g)
    assert (m, im) == _brute_matchings(g)
    assert m == len(nx.max_weight_matching(to_nx(g), maxcardinality=True))


def test_induced_matching_at_most_matching_n_le_7():
    for n in range(1, 8):
        for g in enumerate_connected_graphs(n):
            m, im = matching_numbers(g)
            assert im <= m


# -- suspension -----------------------------------------------------------------


def test_suspension_examples():
    assert s_suspension(Graph.empty(3), 0) == star(4)
    h = s_suspension(Graph.empty(1), 0b1)
    assert h.n == 2 and h.num_edges() == 0
    with pytest.raises(ValueError):
        s_suspension(path(3), 0b011)


@given(graphs(max_n=8), st.data())
def test_suspension_adjacency(g, data):
    candidates = [s for s in range(1 << g.n) if g.is_independent(s)]
    s = data.draw(st.sampled_from(candidates))
    h = s_suspension(g, s)
    assert h.n == g.n + 1
    assert h.adj[g.n] == g.full_mask & ~s
    assert h.induced(g.full_mask) == g


def test_suspension_keeps_independence_number_n_le_6():
    for n in range(2, 7):
        for g in enumerate_connected_graphs(n):
            alpha = independence_number(g)
            for s in range(1 << n):
                if g.is_independent(s) and popcount(s) <= alpha - 1:
                    assert independence_number(s_suspension(g, s)) == alpha


def test_all_labeled_trees_on_4_vertices_have_two_classes():
    from cwinv.canon import canonical_form

    trees = [g for g in all_labeled_graphs(4) if g.num_edges() == 3 and g.is_connected()]
    assert len(trees) == 16
    assert len({canonical_form(g) for g in trees}) == 2


def test_bits_and_popcount():
    assert list(bits(0b101001)) == [0, 3, 5]
    assert popcount(0b101001) == 3
