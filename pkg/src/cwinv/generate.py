"""Isomorph-free generation of connected graphs by canonical augmentation."""

from __future__ import annotations

from pathlib import Path
from typing import Iterator

from .canon import canonical_form, canonical_relabeling
from .graph import Graph, emit_graph6, read_graph6_lines

MAX_BUILTIN_N = 10


def _children(parent: Graph) -> Iterator[Graph]:
    """Canonical connected one-vertex extensions whose canonical parent is ``parent``.

    Every connected graph has a non-cut vertex, so deleting the non-cut vertex
    of highest canonical position maps each class to exactly one connected
    parent class.  Extensions are accepted only from that parent; duplicates
    within one parent are removed locally.
    """
    k = parent.n + 1
    pkey = emit_graph6(parent)
    full = (1 << k) - 1
    seen: set[str] = set()
    for nbrs in range(1, 1 << parent.n):
        child = parent.add_vertex(nbrs)
        perm = canonical_relabeling(child)
        noncut = child.non_cut_vertices()
        u = max((v for v in range(k) if noncut >> v & 1), key=perm.__getitem__)
        if u != parent.n:
            # parent is stored canonically, so its graph6 is its canonical key
            if canonical_form(child.induced(full & ~(1 << u))).decode() != pkey:
                continue
        cg = child.relabel(perm)
        key = emit_graph6(cg)
        if key not in seen:
            seen.add(key)
            yield cg


def enumerate_connected_graphs(n: int) -> list[Graph]:
    """All connected graphs on ``n`` vertices up to isomorphism.

    Each graph is returned in its canonical labelling; the list is sorted by
    canonical graph6 string.
    """
    if not 1 <= n <= MAX_BUILTIN_N:
        raise ValueError(
            f"built-in generator supports 1 <= n <= {MAX_BUILTIN_N}; "
            "supply a graph6 file instead (--source graph6:PATH)"
        )
    level = [Graph.empty(1)]
    for _ in range(2, n + 1):
        nxt = [c for p in level for c in _children(p)]
        nxt.sort(key=emit_graph6)
        level = nxt
    return level


def iter_graph6_file(path: str | Path) -> Iterator[Graph]:
    with open(path, encoding="ascii") as fh:
        yield from read_graph6_lines(fh)
