"""Cameron-Walker graphs: shapes, construction, recognition and invariants.

A Cameron-Walker graph is described by a shape: a connected bipartite middle
between vertices v_1..v_m and w_1..w_p, with s_i >= 1 leaves hanging off each
v_i and t_j >= 0 pendant triangles hanging off each w_j.

Built graphs use a fixed vertex layout: the v's, then the w's, then the
leaves grouped by their v, then the triangle pairs grouped by their w.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Sequence

from .canon import canonical_form
from .graph import Graph, bits, complete, matching_numbers, popcount, star
from .oracle import InvariantBundle


class NotCameronWalker(ValueError):
    pass


class RecognitionConflict(RuntimeError):
    """The semantic and structural recognisers disagreed."""


@dataclass(frozen=True)
class CwShape:
    m: int
    p: int
    s: tuple[int, ...]
    t: tuple[int, ...]
    bip: tuple[tuple[int, int], ...]  # sorted (i, j) pairs, 0-based v-index and w-index

    def __post_init__(self) -> None:
        object.__setattr__(self, "s", tuple(self.s))
        object.__setattr__(self, "t", tuple(self.t))
        object.__setattr__(self, "bip", tuple(sorted(set(map(tuple, self.bip)))))
        if self.m < 1 or self.p < 1:
            raise ValueError("shape needs m >= 1 and p >= 1")
        if len(self.s) != self.m or any(x < 1 for x in self.s):
            raise ValueError("s must list m leaf counts, each >= 1")
        if len(self.t) != self.p or any(x < 0 for x in self.t):
            raise ValueError("t must list p triangle counts, each >= 0")
        for i, j in self.bip:
            if not (0 <= i < self.m and 0 <= j < self.p):
                raise ValueError(f"bipartite edge {(i + 1, j + 1)} out of range")
        g = self.bip_graph()
        if any(d == 0 for d in map(popcount, g.adj)):
            raise ValueError("every v and w needs a bipartite neighbour")
        if not g.is_connected():
            raise ValueError("bipartite middle must be connected")
        if self.m == 1 and all(x == 0 for x in self.t):
            raise ValueError("shape is a star, not a Cameron-Walker graph")
        if self.n < 5:
            raise ValueError("Cameron-Walker graphs have at least 5 vertices")

    @property
    def n(self) -> int:
        return self.m + self.p + sum(self.s) + 2 * sum(self.t)

    def w_neighbourhoods(self) -> list[int]:
        """Bitmask over v-indices of each w's bipartite neighbours."""
        out = [0] * self.p
        for i, j in self.bip:
            out[j] |= 1 << i
        return out

    def bip_graph(self) -> Graph:
        return Graph.from_edges(self.m + self.p, [(i, self.m + j) for i, j in self.bip])

    def is_complete_bipartite(self) -> bool:
        return len(self.bip) == self.m * self.p

    def literal(self) -> str:
        s = ",".join(map(str, self.s))
        t = ",".join(map(str, self.t))
        b = ",".join(f"{i + 1}-{j + 1}" for i, j in self.bip)
        return f"cw m={self.m} p={self.p} s={s} t={t} bip={b}"

    __str__ = literal


_LITERAL = re.compile(
    r"^\s*cw\s+m=(\d+)\s+p=(\d+)\s+s=([\d,]+)\s+t=([\d,]+)\s+bip=([\d,\-]+)\s*$"
)


def parse_shape(text: str) -> CwShape:
    """Parse ``cw m=2 p=2 s=1,1 t=1,0 bip=1-1,1-2,2-2`` (1-based indices)."""
    mt = _LITERAL.match(text)
    if not mt:
        raise ValueError(f"bad shape literal {text!r}")
    m, p = int(mt.group(1)), int(mt.group(2))
    s = tuple(int(x) for x in mt.group(3).split(","))
    t = tuple(int(x) for x in mt.group(4).split(","))
    bip = []
    for tok in mt.group(5).split(","):
        a, _, b = tok.partition("-")
        if not a or not b:
            raise ValueError(f"bad bipartite edge {tok!r}")
        bip.append((int(a) - 1, int(b) - 1))
    return CwShape(m, p, s, t, tuple(bip))


# -- layout and construction --------------------------------------------------


@dataclass(frozen=True)
class Layout:
    m: int
    p: int
    leaf_start: tuple[int, ...]
    tri_start: tuple[int, ...]
    n: int

    @classmethod
    def of(cls, shape: CwShape) -> Layout:
        pos = shape.m + shape.p
        leaf = []
        for x in shape.s:
            leaf.append(pos)
            pos += x
        tri = []
        for x in shape.t:
            tri.append(pos)
            pos += 2 * x
        return cls(shape.m, shape.p, tuple(leaf), tuple(tri), pos)

    def v(self, i: int) -> int:
        return i

    def w(self, j: int) -> int:
        return self.m + j

    def leaf(self, i: int, k: int) -> int:
        return self.leaf_start[i] + k

    def tri(self, j: int, ell: int, side: int) -> int:
        return self.tri_start[j] + 2 * ell + side


def build_cw(shape: CwShape) -> Graph:
    lay = Layout.of(shape)
    edges = [(lay.v(i), lay.w(j)) for i, j in shape.bip]
    for i, si in enumerate(shape.s):
        edges += [(lay.v(i), lay.leaf(i, k)) for k in range(si)]
    for j, tj in enumerate(shape.t):
        for ell in range(tj):
            a, b = lay.tri(j, ell, 0), lay.tri(j, ell, 1)
            edges += [(lay.w(j), a), (lay.w(j), b), (a, b)]
    return Graph.from_edges(lay.n, edges)


def normalize_shape(shape: CwShape) -> CwShape:
    """Reclassify every triangle-free w with one bipartite neighbour as a leaf.

    Such a w has degree 1 in the built graph, so the normalised shape builds
    the same graph.  Normalised shapes are exactly what recognition returns.
    """
    nb = shape.w_neighbourhoods()
    s = list(shape.s)
    keep = []
    for j in range(shape.p):
        if shape.t[j] == 0 and popcount(nb[j]) == 1:
            s[nb[j].bit_length() - 1] += 1
        else:
            keep.append(j)
    if len(keep) == shape.p:
        return shape
    remap = {j: k for k, j in enumerate(keep)}
    bip = tuple((i, remap[j]) for i, j in shape.bip if j in remap)
    return CwShape(shape.m, len(keep), tuple(s), tuple(shape.t[j] for j in keep), bip)


def is_normalized(shape: CwShape) -> bool:
    nb = shape.w_neighbourhoods()
    return all(shape.t[j] > 0 or popcount(nb[j]) >= 2 for j in range(shape.p))


def shape_key(shape: CwShape) -> bytes:
    """Equal for shapes related by relabelling v's and w's (decorations kept)."""
    colors = [("v", x) for x in shape.s] + [("w", x) for x in shape.t]
    return canonical_form(shape.bip_graph(), colors)


# -- recognition --------------------------------------------------------------


def is_star(g: Graph) -> bool:
    if g.n <= 2:
        return g.is_connected()
    degs = [popcount(a) for a in g.adj]
    return sorted(degs) == [1] * (g.n - 1) + [g.n - 1]


def is_star_triangle(g: Graph) -> bool:
    """Triangles sharing one common vertex (a single triangle included)."""
    if g.n < 3 or g.n % 2 == 0:
        return False
    k = (g.n - 1) // 2
    centres = [v for v in range(g.n) if popcount(g.adj[v]) == g.n - 1]
    if not centres:
        return False
    c = centres[0]
    rest = g.full_mask & ~(1 << c)
    for v in bits(rest):
        if popcount(g.adj[v]) != 2 or popcount(g.adj[v] & rest) != 1:
            return False
    return g.num_edges() == 3 * k


def is_cw_semantic(g: Graph) -> bool:
    """Connected, induced matching number = matching number, not a star or star triangle."""
    if not g.is_connected() or is_star(g) or is_star_triangle(g):
        return False
    m, im = matching_numbers(g)
    return m == im


def recognize_structural(g: Graph) -> CwShape | None:
    """Peel off leaves and pendant triangles; the rest must be the bipartite middle."""
    if g.n < 5 or not g.is_connected():
        return None
    deg = [popcount(a) for a in g.adj]
    leaves = 0
    for v in range(g.n):
        if deg[v] == 1:
            leaves |= 1 << v
    ys = 0
    apex_of: dict[int, int] = {}
    for v in range(g.n):
        if deg[v] != 2:
            continue
        a, b = list(bits(g.adj[v]))
        for w, y in ((a, b), (b, a)):
            if deg[y] == 2 and deg[w] >= 3 and g.adj[y] >> w & 1:
                ys |= 1 << v
                apex_of[v] = w
    middle = g.full_mask & ~leaves & ~ys
    vside = 0
    for x in bits(leaves):
        vside |= g.adj[x]
    if vside & ~middle or not vside:
        return None
    wside = middle & ~vside
    if not wside or not g.is_connected(middle):
        return None
    for v in bits(vside):
        if g.adj[v] & vside:
            return None
    for w in bits(wside):
        if g.adj[w] & wside:
            return None
    if any(not (wside >> w & 1) for w in apex_of.values()):
        return None
    vlist = list(bits(vside))
    wlist = list(bits(wside))
    vidx = {v: i for i, v in enumerate(vlist)}
    widx = {w: j for j, w in enumerate(wlist)}
    s = [popcount(g.adj[v] & leaves) for v in vlist]
    t = [0] * len(wlist)
    for y, w in apex_of.items():
        t[widx[w]] += 1
    t = [x // 2 for x in t]
    bip = [(vidx[v], widx[w]) for v in vlist for w in bits(g.adj[v] & wside)]
    try:
        return CwShape(len(vlist), len(wlist), tuple(s), tuple(t), tuple(bip))
    except ValueError:
        return None


def recognize_cw(g: Graph) -> CwShape | None:
    """Shape of ``g`` if it is Cameron-Walker, else None.

    Both recognisers run; a disagreement raises ``RecognitionConflict``.
    """
    semantic = is_cw_semantic(g)
    shape = recognize_structural(g)
    if semantic != (shape is not None):
        raise RecognitionConflict(
            f"semantic={semantic} structural={shape is not None} on {g!r}"
        )
    return shape


# -- invariants ---------------------------------------------------------------


@dataclass(frozen=True)
class DepthWitness:
    depth: int
    vset: tuple[int, ...]  # minimising subset of v-indices
    witness: int  # independent dominating set in the build_cw layout


def f_value(shape: CwShape, vmask: int, nb: Sequence[int] | None = None) -> int:
    if nb is None:
        nb = shape.w_neighbourhoods()
    val = sum(shape.s[i] for i in bits(vmask)) + shape.m - popcount(vmask)
    for j in range(shape.p):
        if nb[j] & ~vmask:
            val += shape.t[j]
        else:
            val += 1
    return val


def witness_set(shape: CwShape, vmask: int) -> int:
    """Independent dominating set of size f(V) for the v-subset ``vmask``."""
    lay = Layout.of(shape)
    nb = shape.w_neighbourhoods()
    a = 0
    for i in range(shape.m):
        if vmask >> i & 1:
            for k in range(shape.s[i]):
                a |= 1 << lay.leaf(i, k)
        else:
            a |= 1 << lay.v(i)
    for j in range(shape.p):
        if nb[j] & ~vmask:
            for ell in range(shape.t[j]):
                a |= 1 << lay.tri(j, ell, 0)
        else:
            a |= 1 << lay.w(j)
    return a


def depth_via_fV(shape: CwShape, verify: bool = True) -> DepthWitness:
    if shape.m > 30:
        raise ValueError("subset sweep limited to m <= 30")
    nb = shape.w_neighbourhoods()
    best = None
    for vmask in range(1 << shape.m):
        key = (f_value(shape, vmask, nb), tuple(bits(vmask)))
        if best is None or key < best[0]:
            best = (key, vmask)
    (depth, vset), vmask = best
    a = witness_set(shape, vmask)
    if verify:
        g = build_cw(shape)
        if not g.is_independent(a):
            raise ArithmeticError(f"witness not independent for {shape}")
        if g.closed_neighbourhood(a) != g.full_mask:
            raise ArithmeticError(f"witness does not dominate for {shape}")
        if popcount(a) != depth:
            raise ArithmeticError(f"witness size {popcount(a)} != {depth} for {shape}")
    return DepthWitness(depth, vset, a)


def cw_invariants(shape: CwShape) -> InvariantBundle:
    dim = sum(shape.s) + sum(shape.t) + sum(1 for x in shape.t if x == 0)
    reg = shape.m + sum(shape.t)
    depth = depth_via_fV(shape, verify=False).depth
    return InvariantBundle(shape.n, depth, reg, dim, dim, "formula")


def _min_indep_dom(adj: Sequence[int], full: int, chosen: int, dominated: int, size: int, best: int) -> int:
    if dominated == full:
        return size
    if size + 1 >= best:
        return best
    u = (full & ~dominated)
    u = (u & -u).bit_length() - 1
    cand = (adj[u] | (1 << u)) & ~dominated
    for x in bits(cand):
        best = _min_indep_dom(adj, full, chosen | 1 << x, dominated | adj[x] | 1 << x, size + 1, best)
    return best


def independence_domination(g: Graph) -> int:
    """Minimum size of an independent set A with A and its neighbours covering V(G)."""
    if g.n > 26:
        raise ValueError("independence domination limited to n <= 26")
    if g.n == 0:
        return 0
    return _min_indep_dom(g.adj, g.full_mask, 0, 0, 0, g.n + 1)


# -- named families -----------------------------------------------------------


def g1_shape(m: int, p: int, t: int) -> CwShape:
    if m < 1 or p < 1 or t < 1:
        raise ValueError("G1 needs m, p, t >= 1")
    bip = tuple((i, j) for i in range(m) for j in range(p))
    return CwShape(m, p, (1,) * m, (1,) * (p - 1) + (t,), bip)


def g2_shape(m: int, s: int, t: int) -> CwShape:
    if m < 2 or s < 1 or t < 1:
        raise ValueError("G2 needs m >= 2, s >= 1, t >= 1")
    bip = ((0, 0),) + tuple((i, 1) for i in range(m))
    return CwShape(m, 2, (1,) * (m - 1) + (s,), (t, 0), bip)


def e1_shape(s1: int, s2: int, p: int) -> CwShape:
    if s1 < 1 or s2 < 1 or p < 1:
        raise ValueError("e1 needs s1, s2, p >= 1")
    return CwShape(2, p, (s1, s2), (0,) * p, tuple((i, j) for i in range(2) for j in range(p)))


def e2_shape(s1: int) -> CwShape:
    if s1 < 1:
        raise ValueError("e2 needs s1 >= 1")
    return CwShape(1, 1, (s1,), (1,), ((0, 0),))


def e3_shape(t1: int) -> CwShape:
    if t1 < 2:
        raise ValueError("e3 needs t1 >= 2")
    return CwShape(1, 1, (1,), (t1,), ((0, 0),))


def g_complete_with_leaves(m: int, s: Sequence[int]) -> Graph:
    """Complete graph on v_1..v_m with s_i leaves on v_i (s non-decreasing)."""
    if m < 1 or len(s) != m:
        raise ValueError("G(m; s) needs m >= 1 and m leaf counts")
    if any(x < 1 for x in s) or any(a > b for a, b in zip(s, s[1:])):
        raise ValueError("G(m; s) needs 1 <= s_1 <= ... <= s_m")
    edges = list(complete(m).edges())
    pos = m
    for i, x in enumerate(s):
        edges += [(i, pos + k) for k in range(x)]
        pos += x
    return Graph.from_edges(pos, edges)


def star_triangle(k: int) -> Graph:
    if k < 1:
        raise ValueError("star triangle needs k >= 1")
    edges = []
    for ell in range(k):
        a, b = 1 + 2 * ell, 2 + 2 * ell
        edges += [(0, a), (0, b), (a, b)]
    return Graph.from_edges(2 * k + 1, edges)


def depth2_template(shape: CwShape) -> str | None:
    """Which depth-2 family (e1, e2, e3) a normalised shape belongs to."""
    if shape.m == 2 and all(x == 0 for x in shape.t):
        return "e1"
    if shape.m == 1 and shape.p == 1:
        if shape.t[0] == 1:
            return "e2"
        if shape.t[0] >= 2 and shape.s[0] == 1:
            return "e3"
    return None


_SHAPE_FAMILIES = {
    "g1": (g1_shape, 3),
    "g2": (g2_shape, 3),
    "e1": (e1_shape, 3),
    "e2": (e2_shape, 1),
    "e3": (e3_shape, 1),
}

FAMILIES = ("star", "star-triangle", "G", "G1", "G2", "e1", "e2", "e3")


def family_shape(family: str, params: Sequence[int]) -> CwShape:
    key = family.lower().replace("_", "").replace("-", "")
    if key not in _SHAPE_FAMILIES:
        raise ValueError(f"{family!r} is not a Cameron-Walker family")
    fn, arity = _SHAPE_FAMILIES[key]
    if len(params) != arity:
        raise ValueError(f"{family} takes {arity} parameters, got {len(params)}")
    return fn(*params)


def construct(family: str, params: Sequence[int]) -> Graph:
    """Build a named graph.  ``G`` takes ``(m, s_1, ..., s_m)``."""
    key = family.lower().replace("_", "").replace("-", "")
    params = [int(x) for x in params]
    if key == "star":
        if len(params) != 1 or params[0] < 1:
            raise ValueError("star takes one parameter n >= 1")
        return star(params[0])
    if key == "startriangle":
        if len(params) != 1:
            raise ValueError("star-triangle takes one parameter k")
        return star_triangle(params[0])
    if family in ("G", "g") or key == "gm":
        if not params:
            raise ValueError("G takes m followed by m leaf counts")
        return g_complete_with_leaves(params[0], params[1:])
    return build_cw(family_shape(family, params))


# -- shape enumeration --------------------------------------------------------


def _bip_classes(m: int, p: int) -> list[tuple[int, ...]]:
    """Connected bipartite middles as sorted tuples of w-neighbourhood masks,
    one per isomorphism class (v's and w's relabelled independently)."""
    full = (1 << m) - 1
    out = []
    seen = set()

    def rec(prefix: list[int], lo: int) -> Iterator[tuple[int, ...]]:
        if len(prefix) == p:
            yield tuple(prefix)
            return
        for mask in range(lo, full + 1):
            prefix.append(mask)
            yield from rec(prefix, mask)
            prefix.pop()

    for nbs in rec([], 1):
        union = 0
        for x in nbs:
            union |= x
        if union != full:
            continue
        g = Graph.from_edges(m + p, [(i, m + j) for j, x in enumerate(nbs) for i in bits(x)])
        if not g.is_connected():
            continue
        key = canonical_form(g, [0] * m + [1] * p)
        if key in seen:
            continue
        seen.add(key)
        out.append(nbs)
    return out


def _twin_classes(items: Sequence[int]) -> list[int]:
    """Index of the previous equal item, or -1."""
    prev = []
    for k, x in enumerate(items):
        prev.append(max((q for q in range(k) if items[q] == x), default=-1))
    return prev


def enumerate_shapes(n: int) -> Iterator[CwShape]:
    """Every normalised Cameron-Walker shape on ``n`` vertices, once per
    isomorphism class of the built graph, in a deterministic order."""
    if n < 5:
        return
    for m in range(1, n):
        for p in range(1, n - 2 * m + 1):
            budget = n - m - p
            for nbs in _bip_classes(m, p):
                # v-neighbourhoods, to detect twins on the v side
                vnb = [sum(1 << j for j, x in enumerate(nbs) if x >> i & 1) for i in range(m)]
                vprev = _twin_classes(vnb)
                wprev = _twin_classes(nbs)
                tmin = [0 if popcount(x) >= 2 else 1 for x in nbs]
                bip = tuple((i, j) for j, x in enumerate(nbs) for i in bits(x))
                seen: set[bytes] = set()
                for s in _compositions(m, vprev, [1] * m, budget):
                    rest = budget - sum(s)
                    if rest % 2:
                        continue
                    for t in _compositions(p, wprev, tmin, rest // 2, exact=True):
                        shape = CwShape(m, p, tuple(s), tuple(t), bip)
                        key = shape_key(shape)
                        if key not in seen:
                            seen.add(key)
                            yield shape


def _compositions(k: int, prev: Sequence[int], lows: Sequence[int], total: int,
                  exact: bool = False) -> Iterator[list[int]]:
    """Sequences x of length k with x[i] >= lows[i], sum <= total (== total if
    ``exact``), and x non-increasing across twins (x[i] <= x[prev[i]])."""
    out = [0] * k
    need = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        need[i] = need[i + 1] + lows[i]

    def rec(i: int, left: int) -> Iterator[list[int]]:
        if i == k:
            if not exact or left == 0:
                yield list(out)
            return
        hi = left - need[i + 1]
        if prev[i] >= 0:
            hi = min(hi, out[prev[i]])
        for x in range(lows[i], hi + 1):
            out[i] = x
            yield from rec(i + 1, left - x)

    if need[0] <= total:
        yield from rec(0, total)
