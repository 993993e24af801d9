"""Verification suites shared by the CLI.

Each suite takes an iterable of n and returns a list of human-readable
failure lines; an empty list means the suite passed.
"""

from __future__ import annotations

from typing import Callable, Iterable

from .cameron_walker import (
    build_cw,
    cw_invariants,
    depth2_template,
    depth_via_fV,
    enumerate_shapes,
    independence_domination,
)
from .generate import enumerate_connected_graphs
from .graph import Graph, bits, independence_number, popcount, s_suspension
from .lattice import (
    audit_inequalities,
    c_minus,
    c_plus,
    closed_form_set,
    cw2_pairs,
    enumerate_cw_sets,
    enumerate_graph_report,
    floor_inequality_failures,
    is_convex,
)
from .oracle import GF2, Field, oracle_invariants


def suite_cwdd(ns: Iterable[int], **_) -> list[str]:
    out = []
    for n in ns:
        got = enumerate_cw_sets(n).pairs.points
        want = closed_form_set("cw-dd", n).points
        if got != want:
            out.append(f"n={n}: missing {sorted(want - got)} extra {sorted(got - want)}")
    return out


def suite_main3(ns: Iterable[int], **_) -> list[str]:
    out = []
    for n in ns:
        cs = enumerate_cw_sets(n)
        want = closed_form_set("cw-tuple4", n)
        if cs.tuples.points != want.points:
            out.append(f"n={n}: missing {sorted(want.points - cs.tuples.points)} "
                       f"extra {sorted(cs.tuples.points - want.points)}")
        if want.project((0, 2)).points != closed_form_set("cw-dd", n).points:
            out.append(f"n={n}: tuple set does not project onto the pair set")
        if not want.project((1, 2)).points <= closed_form_set("rd", n).points:
            out.append(f"n={n}: (reg, degh) projection leaves the reg/degh set")
    return out


def suite_sandwich(ns: Iterable[int], field: Field = GF2, threads: int = 1, cache_dir=None, **_) -> list[str]:
    out = []
    for n in ns:
        got = enumerate_graph_report(n, field=field, threads=threads, cache_dir=cache_dir).pairs.points
        lo, hi = c_minus(n), c_plus(n)
        if not lo <= got:
            out.append(f"n={n}: lower set points missing {sorted(lo - got)}")
        if not got <= hi:
            out.append(f"n={n}: points above the upper set {sorted(got - hi)}")
    return out


def _cw_corpus(ns: Iterable[int]):
    for n in ns:
        for shape in enumerate_shapes(n):
            yield n, shape


def suite_formulas_vs_oracle(ns: Iterable[int], field: Field = GF2, **_) -> list[str]:
    out = []
    for n, shape in _cw_corpus(ns):
        g = build_cw(shape)
        want = oracle_invariants(g, field).as_tuple()
        got = cw_invariants(shape).as_tuple()
        if got != want:
            out.append(f"{shape}: formulas {got} oracle {want}")
        dw = depth_via_fV(shape)
        idom = independence_domination(g)
        if dw.depth != idom:
            out.append(f"{shape}: f(V) minimum {dw.depth} but i(G) = {idom}")
    return out


def suite_depth2(ns: Iterable[int], **_) -> list[str]:
    out = []
    for n in ns:
        if n <= 11:
            for shape in enumerate_shapes(n):
                if cw_invariants(shape).depth == 2 and depth2_template(shape) is None:
                    out.append(f"{shape}: depth 2 but matches no template")
        got = {b for a, b in enumerate_cw_sets(n).pairs.points if a == 2}
        want = {b for _a, b in cw2_pairs(n)}
        if got != want:
            out.append(f"n={n}: depth-2 dims {sorted(got)} expected {sorted(want)}")
    return out


def suite_convexity(ns: Iterable[int], **_) -> list[str]:
    out = []
    for n in ns:
        conv = is_convex(closed_form_set("cw-dd", n))
        expect = n % 2 == 0 or n in (5, 7)
        if bool(conv) != expect:
            out.append(f"n={n}: convex={bool(conv)} gap={conv.gap} expected {expect}")
    return out


def suite_inequalities(ns: Iterable[int], field: Field = GF2, threads: int = 1, cache_dir=None, **_) -> list[str]:
    out = []
    ns = list(ns)
    for n in ns:
        if 5 <= n <= 14:
            for lit, clause in enumerate_cw_sets(n).violations:
                out.append(f"{lit}: violates {clause}")
        if 2 <= n <= 8:
            rep = enumerate_graph_report(n, field=field, threads=threads, cache_dir=cache_dir)
            for code, clause in rep.violations:
                out.append(f"n={n} {code}: violates {clause}")
    for n, b in floor_inequality_failures(200):
        out.append(f"floor inequality fails at n={n}, b={b}")
    return out


def suspension_failures(g: Graph) -> list[str]:
    """Check the three suspension rules for every independent S of ``g``."""
    out = []
    base = oracle_invariants(g)
    alpha = independence_number(g)
    for s in range(1 << g.n):
        if not g.is_independent(s):
            continue
        k = popcount(s)
        h = s_suspension(g, s)
        if k <= alpha - 1 and g.num_edges() and independence_number(h) != alpha:
            out.append(f"{g!r} S={list(bits(s))}: dim changed")
        if k == base.depth - 1 or s == 0:
            hb = oracle_invariants(h)
            if k == base.depth - 1 and hb.depth != base.depth:
                out.append(f"{g!r} S={list(bits(s))}: depth {hb.depth} != {base.depth}")
            if s == 0 and hb.depth != 1:
                out.append(f"{g!r} S=(): depth {hb.depth} != 1")
    return out


def suite_suspension(ns: Iterable[int], **_) -> list[str]:
    out = []
    for n in ns:
        for g in enumerate_connected_graphs(n):
            out += suspension_failures(g)
    return out


SUITES: dict[str, tuple[Callable[..., list[str]], range]] = {
    "cwdd": (suite_cwdd, range(5, 13)),
    "main3": (suite_main3, range(5, 13)),
    "sandwich": (suite_sandwich, range(3, 9)),
    "formulas-vs-oracle": (suite_formulas_vs_oracle, range(5, 12)),
    "depth2-classification": (suite_depth2, range(5, 13)),
    "convexity": (suite_convexity, range(5, 21)),
    "inequalities": (suite_inequalities, range(2, 12)),
    "suspension": (suite_suspension, range(1, 7)),
}
