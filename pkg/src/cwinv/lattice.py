"""Lattice-point sets of invariant tuples: closed forms, enumeration, witnesses."""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from itertools import islice
from typing import Callable, Iterable, Iterator, Sequence

from .cache import ResultCache, source_digest
from .cameron_walker import (
    CwShape,
    build_cw,
    cw_invariants,
    e1_shape,
    e2_shape,
    e3_shape,
    enumerate_shapes,
    g1_shape,
    g2_shape,
    g_complete_with_leaves,
)
from .canon import canonical_form
from .generate import enumerate_connected_graphs, iter_graph6_file
from .graph import Graph, bits, emit_graph6, maximum_independent_set, s_suspension, star
from .oracle import GF2, Field, InvariantBundle, oracle_invariants

Point = tuple


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class LatticePointSet:
    n: int
    arity: int
    points: frozenset
    provenance: str
    field: str = "-"

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", frozenset(tuple(p) for p in self.points))
        if self.arity not in (2, 4):
            raise ValueError("arity must be 2 or 4")
        for pt in self.points:
            if len(pt) != self.arity:
                raise ValueError(f"point {pt} does not have arity {self.arity}")
            if self.arity == 2:
                a, b = pt
                if not 1 <= a <= b <= self.n:
                    raise ValueError(f"point {pt} violates 1 <= a <= b <= n")
            else:
                a, r, d, d2 = pt
                if d != d2 or not 2 <= a <= r <= d:
                    raise ValueError(f"point {pt} violates 2 <= a <= r <= d = d'")

    def sorted(self) -> list[tuple[int, ...]]:
        return sorted(self.points)

    def __contains__(self, pt) -> bool:
        return tuple(pt) in self.points

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.sorted())

    def project(self, coords: Sequence[int], provenance: str | None = None) -> LatticePointSet:
        pts = frozenset(tuple(pt[c] for c in coords) for pt in self.points)
        return LatticePointSet(self.n, len(coords), pts,
                               provenance or f"{self.provenance}/proj{''.join(map(str, coords))}",
                               self.field)

    # -- serialisation --

    def to_tsv(self) -> str:
        lines = [f"# {self.provenance} {self.n} {self.arity} {self.field}"]
        lines += ["\t".join(map(str, pt)) for pt in self.sorted()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_tsv(cls, text: str) -> LatticePointSet:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("#"):
            raise ValueError("missing '# kind n arity field' header")
        head = lines[0][1:].split()
        if len(head) != 4:
            raise ValueError(f"bad header {lines[0]!r}")
        kind, n, arity, fld = head[0], int(head[1]), int(head[2]), head[3]
        pts = [tuple(int(x) for x in ln.split("\t")) for ln in lines[1:]]
        return cls(n, arity, frozenset(pts), kind, fld)

    def to_json(self) -> str:
        return json.dumps(
            {"kind": self.provenance, "n": self.n, "arity": self.arity,
             "field": self.field, "points": [list(p) for p in self.sorted()]},
            indent=None, separators=(", ", ": "),
        ) + "\n"

    @classmethod
    def from_json(cls, text: str) -> LatticePointSet:
        obj = json.loads(text)
        return cls(obj["n"], obj["arity"], frozenset(map(tuple, obj["points"])),
                   obj["kind"], obj.get("field", "-"))


# -- closed forms -------------------------------------------------------------


def c_minus(n: int) -> set[Point]:
    pts = {(1, n - 1)}
    pts |= {(a, b) for a in range(1, n // 2 + 1) for b in range(a, n - 1)}
    return pts


def c_plus(n: int) -> set[Point]:
    return {(a, b) for a in range(1, n) for b in range(a, n)}


def cw2_pairs(n: int) -> set[Point]:
    pts = {(2, n - 2), (2, n - 3)}
    if n % 2:
        pts.add((2, (n - 1) // 2))
    return pts


def cw_pairs(n: int) -> set[Point]:
    pts = cw2_pairs(n)
    # (b, b) with n/3 < b < n/2
    pts |= {(b, b) for b in range(1, n) if n < 3 * b and 2 * b < n}
    # 3 <= a <= floor((n-1)/2), max(a, (n-a)/2) < b <= n-a
    for a in range(3, (n - 1) // 2 + 1):
        for b in range(a + 1, n - a + 1):
            if 2 * b > n - a:
                pts.add((a, b))
    return pts


def cw2_tuples(n: int) -> set[Point]:
    pts = {(2, 2, n - 2, n - 2), (2, 2, n - 3, n - 3)}
    if n % 2:
        h = (n - 1) // 2
        pts.add((2, h, h, h))
    return pts


def cw_tuples(n: int) -> set[Point]:
    pts = cw2_tuples(n)
    half = (n - 1) // 2
    for a in range(3, half + 1):
        for d in range(a, half + 1):
            if n < a + 2 * d:
                pts.add((a, d, d, d))
    for a in range(3, n):
        for d in range(a + 1, n - a + 1):
            if n <= 2 * a + d - 1:
                pts.add((a, a, d, d))
    for a in range(3, n):
        for r in range(a + 1, n):
            for d in range(r + 1, n - r):
                if n + 2 <= a + r + d:
                    pts.add((a, r, d, d))
    return pts


def reg_degh_pairs(n: int) -> set[Point]:
    pts = set()
    for r in range(2, (n - 1) // 2 + 1):
        for d in range(max(r, n + 1 - 2 * r), n - r + 1):
            pts.add((r, d))
    return pts


_CLOSED = {
    "c-minus": (c_minus, 2, 3),
    "c-plus": (c_plus, 2, 3),
    "cw-dd": (cw_pairs, 2, 5),
    "cw2-dd": (cw2_pairs, 2, 5),
    "cw-tuple4": (cw_tuples, 4, 5),
    "cw2-tuple4": (cw2_tuples, 4, 5),
    "rd": (reg_degh_pairs, 2, 5),
}

CLOSED_FORM_KINDS = tuple(_CLOSED)


def closed_form_set(kind: str, n: int) -> LatticePointSet:
    key = kind.lower().replace("_", "-")
    if key not in _CLOSED:
        raise ValueError(f"unknown kind {kind!r}; choose from {', '.join(_CLOSED)}")
    fn, arity, nmin = _CLOSED[key]
    if n < nmin:
        raise ValueError(f"{key} is defined for n >= {nmin}")
    return LatticePointSet(n, arity, frozenset(fn(n)), f"closed:{key}")


def graph_pair_condition(n: int, a: int, b: int) -> bool:
    """Sufficient condition for (a, b) to be a (depth, dim) pair of a connected graph on n vertices."""
    return 1 <= a <= b <= n - 1 and a <= b + 1 - _ceil_div(b, n - b)


def floor_inequality_failures(n_max: int = 200) -> list[tuple[int, int]]:
    """(n, b) with 6 <= n <= n_max, ceil(n/2)+1 <= b <= n-2 violating
    b + 1 - ceil(b/(n-b)) >= floor(n/2)."""
    bad = []
    for n in range(6, n_max + 1):
        for b in range(_ceil_div(n, 2) + 1, n - 1):
            if b + 1 - _ceil_div(b, n - b) < n // 2:
                bad.append((n, b))
    return bad


# -- convexity, diff, audit ---------------------------------------------------


@dataclass(frozen=True)
class Convexity:
    convex: bool
    gap: tuple[Point, Point, Point] | None = None  # (lower, upper, missing)

    def __bool__(self) -> bool:
        return self.convex


def is_convex(s: LatticePointSet | Iterable[Point]) -> Convexity:
    """Columns (fixed first coordinate) are checked before rows."""
    if isinstance(s, LatticePointSet):
        if s.arity != 2:
            raise ValueError("convexity is defined for pairs; project first")
        pts = s.points
    else:
        pts = frozenset(map(tuple, s))
    for axis in (0, 1):
        lines: dict[int, list[int]] = {}
        for pt in pts:
            lines.setdefault(pt[axis], []).append(pt[1 - axis])
        for fixed in sorted(lines):
            vals = sorted(lines[fixed])
            for lo, hi in zip(vals, vals[1:]):
                if hi > lo + 1:
                    def mk(x, fixed=fixed):
                        return (fixed, x) if axis == 0 else (x, fixed)
                    return Convexity(False, (mk(lo), mk(hi), mk(lo + 1)))
    return Convexity(True)


def diff_sets(old: LatticePointSet, new: LatticePointSet) -> list[str]:
    """Rows ``+<TAB>coords`` for points only in ``new``, ``-<TAB>coords`` for points only in ``old``."""
    rows = [(pt, "-") for pt in old.points - new.points]
    rows += [(pt, "+") for pt in new.points - old.points]
    rows.sort()
    return [sign + "\t" + "\t".join(map(str, pt)) for pt, sign in rows]


def audit_inequalities(b: InvariantBundle, cw: bool) -> list[str]:
    """Names of the inequality clauses that ``b`` violates."""
    bad = []
    n, depth, reg, dim, degh = b.n, b.depth, b.reg, b.dim, b.degh
    if not 1 <= depth <= dim <= n:
        bad.append("1<=depth<=dim<=n")
    if dim < n and reg < 1:
        bad.append("reg>=1 when edges exist")
    if degh - reg > dim - depth:
        bad.append("degh-reg<=dim-depth")
    if reg + degh > n:
        bad.append("reg+degh<=n")
    if cw:
        if not depth <= reg <= dim == degh:
            bad.append("cw:depth<=reg<=dim=degh")
        if not 2 <= depth <= (n - 1) // 2:
            bad.append("cw:2<=depth<=floor((n-1)/2)")
        if depth + dim > n:
            bad.append("cw:depth+dim<=n")
        if not n < depth + 2 * dim:
            bad.append("cw:n<depth+2*dim")
        if n + 1 > depth + reg + dim:
            bad.append("cw:n+1<=depth+reg+dim")
        if n + 1 == depth + reg + dim and depth < reg and reg != dim:
            bad.append("cw:tight sum with depth<reg forces reg=dim")
    return bad


# -- enumeration --------------------------------------------------------------


@dataclass
class GraphEnumeration:
    n: int
    field: str
    source: str
    pairs: LatticePointSet
    graphs: int
    computed: int
    witnesses: dict[Point, str]  # least canonical graph6 per (depth, dim)
    violations: list[tuple[str, str]] = dc_field(default_factory=list)
    tuples: dict[tuple[int, int, int, int], str] = dc_field(default_factory=dict)


def _graph_stream(n: int, source: str) -> Iterator[tuple[str, Graph]]:
    if source == "builtin":
        for g in enumerate_connected_graphs(n):
            yield emit_graph6(g), g
        return
    if not source.startswith("graph6:"):
        raise ValueError(f"unknown source {source!r}; use builtin or graph6:PATH")
    seen = set()
    for g in iter_graph6_file(source[len("graph6:"):]):
        if g.n != n:
            raise ValueError(f"graph on {g.n} vertices in a source for n={n}")
        if not g.is_connected():
            continue
        code = canonical_form(g).decode()
        if code in seen:
            continue
        seen.add(code)
        yield code, g


def _batched(it, size):
    it = iter(it)
    while True:
        chunk = list(islice(it, size))
        if not chunk:
            return
        yield chunk


def enumerate_graph_report(
    n: int,
    source: str = "builtin",
    field: Field = GF2,
    cache_dir=None,
    threads: int = 1,
    audit: bool = True,
    batch: int = 512,
    progress: Callable[[int], None] | None = None,
) -> GraphEnumeration:
    """Run the oracle over every connected graph on ``n`` vertices."""
    if threads < 1:
        raise ValueError("threads must be >= 1")
    cache = None
    cached: dict[str, InvariantBundle] = {}
    if cache_dir is not None:
        cache = ResultCache(cache_dir, n, source_digest(source), field.name)
        cached = cache.load()
        cache.open_writer()
    bundles: dict[str, InvariantBundle] = {}
    todo: list[tuple[str, Graph]] = []
    count = 0
    for code, g in _graph_stream(n, source):
        count += 1
        if code in cached:
            bundles[code] = cached[code]
        else:
            todo.append((code, g))

    def work(chunk):
        return [(code, oracle_invariants(g, field)) for code, g in chunk]

    done = 0
    try:
        chunks = _batched(todo, batch)
        if threads == 1:
            results = map(work, chunks)
            pool = None
        else:
            pool = ThreadPoolExecutor(max_workers=threads)
            results = pool.map(work, chunks)
        try:
            # the main thread is the single cache writer
            for res in results:
                for code, b in res:
                    bundles[code] = b
                    if cache:
                        cache.append(code, b)
                done += len(res)
                if cache:
                    cache.flush()
                if progress:
                    progress(done)
        finally:
            if pool:
                pool.shutdown()
    finally:
        if cache:
            cache.close()

    witnesses: dict[Point, str] = {}
    tuples: dict[tuple[int, int, int, int], str] = {}
    violations = []
    for code in sorted(bundles):
        b = bundles[code]
        witnesses.setdefault((b.depth, b.dim), code)
        tuples.setdefault(b.as_tuple(), code)
        if audit and n >= 2:
            violations += [(code, clause) for clause in audit_inequalities(b, cw=False)]
    pairs = LatticePointSet(n, 2, frozenset(witnesses), f"enumerated:{source.split(':')[0]}", field.name)
    return GraphEnumeration(n, field.name, source, pairs, count, done, witnesses, violations, tuples)


def enumerate_graph_pair_set(n: int, source: str = "builtin", field: Field = GF2,
                             cache_dir=None, threads: int = 1) -> LatticePointSet:
    return enumerate_graph_report(n, source, field, cache_dir, threads).pairs


@dataclass
class CwSets:
    pairs: LatticePointSet
    tuples: LatticePointSet
    shapes: int
    violations: list[tuple[str, str]] = dc_field(default_factory=list)


def enumerate_cw_sets(n: int, audit: bool = True) -> CwSets:
    if n < 5:
        raise ValueError("Cameron-Walker graphs have at least 5 vertices")
    if n > 14:
        raise ValueError("shape enumeration is budgeted for n <= 14")
    pairs, tuples, violations = set(), set(), []
    count = 0
    for shape in enumerate_shapes(n):
        count += 1
        b = cw_invariants(shape)
        pairs.add((b.depth, b.dim))
        tuples.add(b.as_tuple())
        if audit:
            violations += [(shape.literal(), c) for c in audit_inequalities(b, cw=True)]
    return CwSets(
        LatticePointSet(n, 2, frozenset(pairs), "enumerated:cw-shapes", "formula"),
        LatticePointSet(n, 4, frozenset(tuples), "enumerated:cw-shapes", "formula"),
        count,
        violations,
    )


# -- witnesses ----------------------------------------------------------------


MAX_GRAPH_WITNESS_N = 20


class WitnessError(RuntimeError):
    """A construction did not produce the promised invariants."""


@dataclass(frozen=True)
class Witness:
    theorem: str
    n: int
    point: Point
    graph: Graph
    construction: str
    shape: CwShape | None = None
    bundle: InvariantBundle | None = None


def _graph_witness(n: int, a: int, b: int) -> tuple[Graph, str]:
    if (a, b) == (1, n - 1):
        return star(n), f"star({n})"
    if a + b <= n:
        s = [1] * (a - 1) + [b - a + 1]
        g = g_complete_with_leaves(a, s)
        desc = f"G({a}; {', '.join(map(str, s))})"
        k = 0
        while g.n < n:
            mis = list(bits(maximum_independent_set(g)))
            g = s_suspension(g, sum(1 << v for v in mis[: a - 1]))
            k += 1
        if k:
            desc += f" + {k} suspension(s) with |S|={a - 1}"
        return g, desc
    m = n - b
    q, t = divmod(a - 1, m - 1)
    s = [q] * (m - 1 - t) + [q + 1] * t + [b - a + 1]
    return g_complete_with_leaves(m, s), f"G({m}; {', '.join(map(str, s))})"


def _cw_pair_shape(n: int, a: int, b: int) -> tuple[CwShape, str]:
    if a == 2:
        return _depth2_shape(n, b)
    if a == b:
        return g1_shape(3 * b - n, n - 2 * b, 1), f"G1({3 * b - n}, {n - 2 * b}, 1)"
    if 2 * b < n:
        return (g1_shape(a + 2 * b - n, n - 2 * b, b - a + 1),
                f"G1({a + 2 * b - n}, {n - 2 * b}, {b - a + 1})")
    if b < n - a:
        return (g2_shape(a - 1, 2 * b - n + 1, n - a - b),
                f"G2({a - 1}, {2 * b - n + 1}, {n - a - b})")
    s = (1,) * (a - 1) + (b - a,)
    shape = CwShape(a, 1, s, (0,), tuple((i, 0) for i in range(a)))
    return shape, f"m={a}, p=1 star-like middle"


def _depth2_shape(n: int, d: int) -> tuple[CwShape, str]:
    if d == n - 2:
        return e1_shape(1, 1, n - 4), f"e1(1, 1, {n - 4})"
    if d == n - 3:
        return e2_shape(n - 4), f"e2({n - 4})"
    if n % 2 and 2 * d == n - 1:
        if n == 5:
            return e2_shape(1), "e2(1)"
        return e3_shape(d - 1), f"e3({d - 1})"
    raise ValueError(f"no depth-2 construction for dim {d} at n={n}")


def _cw_tuple_shape(n: int, a: int, r: int, d: int) -> tuple[CwShape, str]:
    if a == 2:
        return _depth2_shape(n, d)
    if r == d:
        return (g1_shape(a + 2 * d - n, n - 2 * d, d - a + 1),
                f"G1({a + 2 * d - n}, {n - 2 * d}, {d - a + 1})")
    if a == r:
        if d < n - a:
            m, p = 2 * a + d - n, n - a - d
            shape = CwShape(m, p, (1,) * (m - 1) + (d - a + 1,), (1,) * p,
                            tuple((i, j) for i in range(m) for j in range(p)))
            return shape, f"K_{{{m},{p}}} middle, t=1"
        m, p = a, d - a
        shape = CwShape(m, p, (1,) * m, (0,) * p, tuple((i, j) for i in range(m) for j in range(p)))
        return shape, f"K_{{{m},{p}}} middle, t=0"
    p = n - d - r + 1
    if n >= a + 2 * r:
        bip = tuple((0, j) for j in range(p)) + ((1, p - 1),)
        s = (a + r + d - n - 1, n - a - 2 * r + 2)
        t = (2 * r + d - n - 1,) + (1,) * (p - 2) + (0,)
        return CwShape(2, p, s, t, bip), f"m=2, p={p} two-hub middle"
    m = a + 2 * r + 1 - n
    bip = tuple((0, j) for j in range(p)) + tuple((i, p - 1) for i in range(1, m))
    s = (d - r,) + (1,) * (m - 1)
    t = (d - a,) + (1,) * (p - 2) + (0,)
    return CwShape(m, p, s, t, bip), f"m={m}, p={p} hub middle"


THEOREMS = ("graph-dd", "cw-dd", "cw-tuple4")


def construct_witness(theorem: str, n: int, point: Sequence[int]) -> Witness:
    """Build and verify a graph on ``n`` vertices realising ``point``."""
    point = tuple(int(x) for x in point)
    if theorem == "graph-dd":
        if len(point) != 2:
            raise ValueError("graph-dd points are (depth, dim)")
        a, b = point
        if n < 2 or n > MAX_GRAPH_WITNESS_N:
            raise ValueError(f"graph witnesses need 2 <= n <= {MAX_GRAPH_WITNESS_N}")
        ok = point == (1, n - 1) or graph_pair_condition(n, a, b) or (n >= 3 and point in c_minus(n))
        if not ok:
            raise ValueError(f"{point} is not covered by a construction at n={n}")
        g, desc = _graph_witness(n, a, b)
        bundle = oracle_invariants(g)
        if g.n != n or not g.is_connected() or (bundle.depth, bundle.dim) != point:
            raise WitnessError(
                f"{desc} gave n={g.n}, (depth, dim)=({bundle.depth}, {bundle.dim}), expected {point}"
            )
        return Witness(theorem, n, point, g, desc, None, bundle)
    if theorem in ("cw-dd", "cw-tuple4"):
        if n < 5:
            raise ValueError("Cameron-Walker witnesses need n >= 5")
        if theorem == "cw-dd":
            if len(point) != 2 or point not in cw_pairs(n):
                raise ValueError(f"{point} is not in the closed-form depth/dim set at n={n}")
            shape, desc = _cw_pair_shape(n, *point)
            got_of = lambda bb: (bb.depth, bb.dim)  # noqa: E731
        else:
            if len(point) != 4 or point not in cw_tuples(n):
                raise ValueError(f"{point} is not in the closed-form tuple set at n={n}")
            shape, desc = _cw_tuple_shape(n, point[0], point[1], point[2])
            got_of = InvariantBundle.as_tuple
        bundle = cw_invariants(shape)
        if shape.n != n or got_of(bundle) != point:
            raise WitnessError(f"{desc} [{shape}] gave n={shape.n}, {got_of(bundle)}, expected {point}")
        return Witness(theorem, n, point, build_cw(shape), desc, shape, bundle)
    raise ValueError(f"unknown theorem {theorem!r}; choose from {', '.join(THEOREMS)}")


def witness_for_point(theorem: str, n: int, point: Sequence[int]) -> Graph:
    return construct_witness(theorem, n, point).graph
