"""Canonical forms for isomorphism testing and deduplication."""

from __future__ import annotations

from itertools import permutations
from typing import Hashable, Sequence

from .graph import Graph, emit_graph6
from .kernels import canonical_labeling

BRUTE_FORCE_LIMIT = 16


def _color_ranks(colors: Sequence[Hashable]) -> list[int]:
    order = {c: i for i, c in enumerate(sorted(set(colors)))}
    return [order[c] for c in colors]


def canonical_relabeling(g: Graph, colors: Sequence[Hashable] | None = None) -> list[int]:
    """Permutation ``perm`` (vertex ``v`` -> ``perm[v]``) onto the canonical labelling."""
    ranks = None if colors is None else _color_ranks(colors)
    lab = canonical_labeling(g.n, g.adj, ranks)
    perm = [0] * g.n
    for i, v in enumerate(lab):
        perm[v] = i
    return perm


def canonical_graph(g: Graph, colors: Sequence[Hashable] | None = None) -> Graph:
    return g.relabel(canonical_relabeling(g, colors))


def canonical_form(g: Graph, colors: Sequence[Hashable] | None = None) -> bytes:
    """Byte string equal for two graphs iff they are isomorphic.

    With ``colors``, isomorphisms must preserve vertex colours; the colour
    sequence in canonical order is appended to the key.
    """
    perm = canonical_relabeling(g, colors)
    key = emit_graph6(g.relabel(perm)).encode("ascii")
    if colors is None:
        return key
    ordered = [None] * g.n
    for v, c in enumerate(colors):
        ordered[perm[v]] = c
    return key + b"|" + repr(ordered).encode()


def canonical_form_bruteforce(g: Graph) -> bytes:
    """Lexicographically least graph6 string over all relabellings.

    Exhaustive over ``n!`` permutations; a correctness oracle for small ``n``.
    """
    if g.n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute-force canonical form limited to n <= {BRUTE_FORCE_LIMIT}")
    return min(emit_graph6(g.relabel(p)).encode("ascii") for p in permutations(range(g.n)))


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.num_edges() == h.num_edges() and canonical_form(g) == canonical_form(h)
