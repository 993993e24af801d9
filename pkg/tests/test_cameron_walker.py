from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from cwinv.cameron_walker import (
    CwShape,
    Layout,
    NotCameronWalker,
    RecognitionConflict,
    build_cw,
    construct,
    cw_invariants,
    depth2_template,
    depth_via_fV,
    e1_shape,
    e2_shape,
    e3_shape,
    enumerate_shapes,
    f_value,
    family_shape,
    g1_shape,
    g2_shape,
    g_complete_with_leaves,
    independence_domination,
    is_cw_semantic,
    is_normalized,
    is_star,
    is_star_triangle,
    normalize_shape,
    parse_shape,
    recognize_cw,
    recognize_structural,
    shape_key,
    star_triangle,
)
from cwinv.canon import canonical_form
from cwinv.generate import enumerate_connected_graphs
from cwinv.graph import Graph, complete, cycle, matching_numbers, path, popcount, star
from cwinv.oracle import oracle_invariants

from conftest import to_nx

# shapes on 5..9 vertices, reused by several tests
SMALL_SHAPES = {n: list(enumerate_shapes(n)) for n in range(5, 10)}


def _relabel_random(g: Graph, seed: int) -> Graph:
    perm = list(range(g.n))
    random.Random(seed).shuffle(perm)
    return g.relabel(perm)


def _brute_independence_domination(g: Graph) -> int:
    best = g.n
    for a in range(1 << g.n):
        if popcount(a) < best and g.is_independent(a) and g.closed_neighbourhood(a) == g.full_mask:
            best = popcount(a)
    return best


# -- shapes ---------------------------------------------------------------------


def test_shape_validation():
    ok = CwShape(1, 1, (2,), (1,), ((0, 0),))
    assert ok.n == 6
    bad = [
        dict(m=1, p=1, s=(3,), t=(0,), bip=((0, 0),)),           # a star
        dict(m=2, p=2, s=(1, 1), t=(1, 1), bip=((0, 0), (1, 1))),  # disconnected middle
        dict(m=2, p=1, s=(1, 1), t=(1,), bip=((0, 0),)),          # v_2 has no neighbour
        dict(m=1, p=1, s=(0,), t=(2,), bip=((0, 0),)),            # s_i must be >= 1
        dict(m=1, p=1, s=(1,), t=(1,), bip=((0, 1),)),            # out of range
    ]
    for kw in bad:
        with pytest.raises(ValueError):
            CwShape(**kw)
    assert issubclass(NotCameronWalker, ValueError)


def test_literal_roundtrip():
    text = "cw m=2 p=2 s=1,1 t=1,0 bip=1-1,1-2,2-2"
    shape = parse_shape(text)
    assert shape.literal() == text and str(shape) == text
    assert shape.bip == ((0, 0), (0, 1), (1, 1))
    for bad in ("cw m=1", "cw m=1 p=1 s=1 t=1 bip=1", "xx m=1 p=1 s=2 t=1 bip=1-1"):
        with pytest.raises(ValueError):
            parse_shape(bad)


@pytest.mark.parametrize("n", range(5, 10))
def test_literal_roundtrip_all_small_shapes(n):
    for shape in SMALL_SHAPES[n]:
        assert parse_shape(shape.literal()) == shape


def test_layout_and_build():
    shape = parse_shape("cw m=2 p=2 s=1,2 t=1,0 bip=1-1,1-2,2-2")
    lay = Layout.of(shape)
    assert (lay.v(1), lay.w(0), lay.leaf(1, 1), lay.tri(0, 0, 1), lay.n) == (1, 2, 6, 8, 9)
    g = build_cw(shape)
    assert g.n == shape.n == 9
    assert g.num_edges() == 3 + 3 + 3
    m, im = matching_numbers(g)
    assert m == im == shape.m + sum(shape.t)


def test_normalization_moves_pendant_ws_to_leaves():
    raw = CwShape(2, 3, (1, 1), (1, 0, 0), ((0, 0), (1, 0), (0, 1), (1, 2)))
    assert not is_normalized(raw)
    norm = normalize_shape(raw)
    assert is_normalized(norm)
    assert norm.s == (2, 2) and norm.t == (1,) and norm.p == 1
    assert canonical_form(build_cw(raw)) == canonical_form(build_cw(norm))
    assert normalize_shape(norm) is norm


@given(st.sampled_from([s for n in SMALL_SHAPES for s in SMALL_SHAPES[n]]), st.integers(0, 10**6))
def test_recognition_roundtrip(shape, seed):
    g = _relabel_random(build_cw(shape), seed)
    got = recognize_cw(g)
    assert got is not None and is_normalized(got)
    assert shape_key(got) == shape_key(shape)
    assert canonical_form(build_cw(got)) == canonical_form(g)


def test_non_cw_graphs_rejected():
    # a 4-cycle and K4 have m = 2 > im = 1; stars and star triangles are excluded
    for g in (cycle(4), complete(4), star(6), star_triangle(3), path(4), cycle(6)):
        assert recognize_cw(g) is None
    assert is_star(star(5)) and not is_star(path(4))
    assert is_star_triangle(star_triangle(1)) and is_star_triangle(star_triangle(4))
    assert not is_star_triangle(complete(4))


def test_g_complete_with_leaves_counterexamples():
    # G(2;1,1) is the path on 4 vertices: too small to be Cameron-Walker
    assert recognize_cw(g_complete_with_leaves(2, [1, 1])) is None
    # G(2;2,2) is not either: the v_1 v_2 edge joins any two leaf edges, so im = 1 < 2
    g = g_complete_with_leaves(2, [2, 2])
    assert is_cw_semantic(g) is False
    assert recognize_cw(g) is None
    with pytest.raises(ValueError):
        g_complete_with_leaves(3, [2, 1, 1])


def test_structural_conflict_is_reported(monkeypatch):
    import cwinv.cameron_walker as cw

    monkeypatch.setattr(cw, "is_cw_semantic", lambda g: True)
    with pytest.raises(RecognitionConflict):
        cw.recognize_cw(cycle(5))


def test_recognizers_agree_on_all_graphs_up_to_8():
    count = 0
    for n in range(1, 9):
        for g in enumerate_connected_graphs(n):
            if recognize_cw(g) is not None:
                count += 1
    assert count == sum(len(SMALL_SHAPES.get(n, [])) for n in range(5, 9))


@pytest.mark.parametrize("n", range(5, 8))
def test_shape_count_matches_semantic_count_on_atlas(n, atlas_connected):
    semantic = 0
    for g in atlas_connected[n]:
        h = to_nx(g)
        m = len(nx.max_weight_matching(h, maxcardinality=True))
        if m == matching_numbers(g)[1] and not is_star(g) and not is_star_triangle(g):
            semantic += 1
    assert len(SMALL_SHAPES[n]) == semantic


@pytest.mark.parametrize("n", range(5, 10))
def test_enumerated_shapes_are_distinct_and_normalized(n):
    forms = [canonical_form(build_cw(s)) for s in SMALL_SHAPES[n]]
    assert len(set(forms)) == len(forms)
    assert all(is_normalized(s) and s.n == n for s in SMALL_SHAPES[n])


# -- invariants -----------------------------------------------------------------


def test_f_value_and_witness():
    shape = g1_shape(2, 2, 2)
    dw = depth_via_fV(shape)
    assert dw.depth == 4
    g = build_cw(shape)
    assert g.is_independent(dw.witness)
    assert g.closed_neighbourhood(dw.witness) == g.full_mask
    assert popcount(dw.witness) == 4
    assert f_value(shape, 0) == sum(shape.t) + shape.m


@pytest.mark.parametrize("n", range(5, 10))
def test_formulas_match_oracle_small(n):
    for shape in SMALL_SHAPES[n]:
        g = build_cw(shape)
        f = cw_invariants(shape)
        o = oracle_invariants(g)
        assert f.as_tuple() == o.as_tuple(), shape.literal()
        assert f.depth == independence_domination(g)


@pytest.mark.parametrize("n", range(5, 8))
def test_independence_domination_brute_force(n):
    for g in enumerate_connected_graphs(n):
        assert independence_domination(g) == _brute_independence_domination(g)


# -- families -------------------------------------------------------------------


def test_family_examples():
    b = oracle_invariants(construct("G", [3, 1, 2, 3]))
    assert (b.depth, b.dim) == (4, 6)
    b = oracle_invariants(construct("star", [7]))
    assert (b.depth, b.dim) == (1, 6)
    assert construct("star-triangle", [2]) == star_triangle(2)
    assert family_shape("G1", [1, 1, 2]) == g1_shape(1, 1, 2)
    with pytest.raises(ValueError):
        construct("G1", [1, 1])
    with pytest.raises(ValueError):
        construct("nope", [1])
    for fn, args in ((g1_shape, (0, 1, 1)), (g2_shape, (1, 1, 1)), (e1_shape, (0, 1, 1)),
                     (e2_shape, (0,)), (e3_shape, (1,))):
        with pytest.raises(ValueError):
            fn(*args)


def test_depth2_templates():
    assert depth2_template(e1_shape(1, 2, 3)) == "e1"
    assert depth2_template(e2_shape(4)) == "e2"
    assert depth2_template(e3_shape(3)) == "e3"
    assert depth2_template(g1_shape(2, 2, 2)) is None
    for shape in (e1_shape(1, 2, 3), e2_shape(4), e3_shape(3)):
        assert oracle_invariants(build_cw(shape)).depth == 2


@pytest.mark.parametrize("n", range(5, 10))
def test_depth_two_shapes_match_a_template(n):
    for shape in SMALL_SHAPES[n]:
        tpl = depth2_template(shape)
        assert (cw_invariants(shape).depth == 2) == (tpl is not None), shape.literal()


def test_structural_rejects_disconnected():
    g = Graph.from_edges(6, [(0, 1), (2, 3), (4, 5)])
    assert recognize_structural(g) is None
