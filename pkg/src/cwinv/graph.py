"""Simple graphs stored as per-vertex neighbour bitmasks, plus graph6 and edge-list I/O."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

MAX_VERTICES = 62


class GraphFormatError(ValueError):
    """Raised for malformed graph6 / edge-list input."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    ``adj[v]`` is the bitmask of neighbours of ``v``.  Instances are immutable
    and validated on construction (symmetric, loop-free, in range).
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise ValueError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if nb >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            for u in bits(nb):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric edge {v}-{u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} outside 0..{n - 1}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for v in range(self.n) for u in bits(self.adj[v] & ((1 << v) - 1))]

    def num_edges(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def closed_neighbourhood(self, mask: int) -> int:
        """Union of ``mask`` and all neighbours of vertices in ``mask``."""
        out = mask
        for v in bits(mask):
            out |= self.adj[v]
        return out

    def is_independent(self, mask: int) -> bool:
        return all(not (self.adj[v] & mask) for v in bits(mask))

    def induced(self, mask: int) -> Graph:
        """Induced subgraph on ``mask``, vertices renumbered in increasing order."""
        verts = list(bits(mask))
        pos = {v: i for i, v in enumerate(verts)}
        adj = []
        for v in verts:
            adj.append(sum(1 << pos[u] for u in bits(self.adj[v] & mask)))
        return Graph(len(verts), tuple(adj))

    def relabel(self, perm: list[int] | tuple[int, ...]) -> Graph:
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        adj = [0] * self.n
        for v in range(self.n):
            adj[perm[v]] = sum(1 << perm[u] for u in bits(self.adj[v]))
        return Graph(self.n, tuple(adj))

    def component_of(self, v: int, within: int | None = None) -> int:
        within = self.full_mask if within is None else within
        seen = frontier = 1 << v
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= self.adj[u]
            frontier = nxt & within & ~seen
            seen |= frontier
        return seen

    def is_connected(self, within: int | None = None) -> bool:
        within = self.full_mask if within is None else within
        if within == 0:
            return True
        start = (within & -within).bit_length() - 1
        return self.component_of(start, within) == within

    def non_cut_vertices(self) -> int:
        """Mask of vertices whose removal leaves the graph connected."""
        out = 0
        for v in range(self.n):
            if self.is_connected(self.full_mask & ~(1 << v)):
                out |= 1 << v
        return out

    def add_vertex(self, neighbours: int) -> Graph:
        """New graph with an extra vertex ``n`` joined to ``neighbours``."""
        v = self.n
        adj = [a | ((neighbours >> u & 1) << v) for u, a in enumerate(self.adj)]
        adj.append(neighbours)
        return Graph(self.n + 1, tuple(adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


# -- basic combinatorial quantities ------------------------------------------


def _max_independent(adj: tuple[int, ...], avail: int, memo: dict[int, int]) -> int:
    if avail == 0:
        return 0
    hit = memo.get(avail)
    if hit is not None:
        return hit
    best_v, best_deg = -1, -1
    for v in bits(avail):
        d = popcount(adj[v] & avail)
        if d <= 1:
            # a vertex of degree <= 1 is always in some maximum independent set
            res = 1 + _max_independent(adj, avail & ~(1 << v) & ~adj[v], memo)
            memo[avail] = res
            return res
        if d > best_deg:
            best_v, best_deg = v, d
    v = best_v
    res = max(
        _max_independent(adj, avail & ~(1 << v), memo),
        1 + _max_independent(adj, avail & ~(1 << v) & ~adj[v], memo),
    )
    memo[avail] = res
    return res


def independence_number(g: Graph) -> int:
    """Size of a largest independent set (``n`` for an edgeless graph)."""
    return _max_independent(g.adj, g.full_mask, {})


def maximum_independent_set(g: Graph) -> int:
    """Lexicographically smallest maximum independent set, as a mask."""
    target = independence_number(g)
    chosen, avail = 0, g.full_mask
    memo: dict[int, int] = {}
    for v in range(g.n):
        if not avail >> v & 1:
            continue
        rest = avail & ~(1 << v) & ~g.adj[v]
        if popcount(chosen) + 1 + _max_independent(g.adj, rest, memo) == target:
            chosen |= 1 << v
            avail = rest
        else:
            avail &= ~(1 << v)
    return chosen


def _matching(adj: tuple[int, ...], avail: int, induced: bool, memo: dict[int, int]) -> int:
    # branch on the lowest available vertex: leave it unmatched, or match it
    while avail and not (adj[(avail & -avail).bit_length() - 1] & avail):
        avail &= avail - 1
    if not avail:
        return 0
    hit = memo.get(avail)
    if hit is not None:
        return hit
    v = (avail & -avail).bit_length() - 1
    rest = avail & ~(1 << v)
    best = _matching(adj, rest, induced, memo)
    for u in bits(adj[v] & rest):
        if induced:
            nxt = rest & ~(1 << u) & ~adj[v] & ~adj[u]
        else:
            nxt = rest & ~(1 << u)
        best = max(best, 1 + _matching(adj, nxt, induced, memo))
        if best * 2 >= popcount(avail):
            break
    memo[avail] = best
    return best


def matching_numbers(g: Graph) -> tuple[int, int]:
    """Return ``(m(G), im(G))``: maximum matching and maximum induced matching sizes."""
    m = _matching(g.adj, g.full_mask, False, {})
    im = _matching(g.adj, g.full_mask, True, {})
    return m, im


def s_suspension(g: Graph, s: int) -> Graph:
    """Add vertex ``n`` joined to every vertex outside the independent set ``s``."""
    if s & ~g.full_mask:
        raise ValueError("S mentions vertices outside the graph")
    if not g.is_independent(s):
        raise ValueError("S is not an independent set")
    return g.add_vertex(g.full_mask & ~s)


def star(n: int) -> Graph:
    """Star on ``n`` vertices; vertex ``n-1`` is the centre."""
    if n < 1:
        raise ValueError("a star needs at least one vertex")
    return Graph.from_edges(n, [(i, n - 1) for i in range(n - 1)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for v in range(n) for u in range(v)])


# -- graph6 ------------------------------------------------------------------


def emit_graph6(g: Graph) -> str:
    n = g.n
    out = [chr(63 + n)]
    acc = nbits = 0
    for j in range(1, n):
        col = g.adj[j]
        for i in range(j):
            acc = acc << 1 | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(63 + acc))
                acc = nbits = 0
    if nbits:
        out.append(chr(63 + (acc << (6 - nbits))))
    return "".join(out)


def parse_graph6(text: str | bytes) -> Graph:
    """Decode one graph6 line (an optional ``>>graph6<<`` header is accepted)."""
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    text = text.rstrip("\r\n")
    start = 0
    if text.startswith(">>graph6<<"):
        start = len(">>graph6<<")
    if len(text) <= start:
        raise GraphFormatError("empty graph6 string", start)
    head = ord(text[start])
    if head == 126:
        raise GraphFormatError("graphs with more than 62 vertices are not supported", start)
    if not 63 <= head <= 125:
        raise GraphFormatError(f"invalid length byte {text[start]!r}", start)
    n = head - 63
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = text[start + 1:]
    if len(body) < nbytes:
        raise GraphFormatError(
            f"truncated edge data: expected {nbytes} bytes, got {len(body)}",
            start + 1 + len(body),
        )
    if len(body) > nbytes:
        raise GraphFormatError("trailing garbage after edge data", start + 1 + nbytes)
    values = []
    for k, ch in enumerate(body):
        c = ord(ch)
        if not 63 <= c <= 126:
            raise GraphFormatError(f"byte {ch!r} outside printable range 63..126", start + 1 + k)
        values.append(c - 63)
    if nbytes and nbits % 6:
        pad = 6 - nbits % 6
        if values[-1] & ((1 << pad) - 1):
            raise GraphFormatError("non-zero padding bits", start + nbytes)
    adj = [0] * n
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if values[pos // 6] >> (5 - pos % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            pos += 1
    return Graph(n, tuple(adj))


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            yield parse_graph6(line)
        except GraphFormatError as exc:
            raise GraphFormatError(f"line {lineno}: {exc}") from exc


# -- edge lists --------------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse ``u v`` lines (0-based).  ``# n=N`` sets the vertex count explicitly."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("n="):
                n = int(body[2:])
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer vertex in {raw!r}") from None
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    return Graph.from_edges(n, edges)


def emit_edge_list(g: Graph) -> str:
    lines = [f"# n={g.n}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"
