"""Brute-force algebraic invariants of edge ideals.

Betti numbers come from Hochster's formula: for every vertex subset W the
reduced homology of the independence complex of G[W] is computed from ranks
of boundary matrices over a prime field.  Depth follows from the projective
dimension (Auslander-Buchsbaum), regularity from the Betti table, dim from
the independence number and degh from the f-vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Mapping

from .graph import Graph, bits
from .kernels import betti_sweep

MAX_ORACLE_VERTICES = 26
MAX_PRIME = (1 << 31) - 1


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """A prime field GF(p)."""

    p: int = 2

    def __post_init__(self) -> None:
        if not _is_prime(self.p):
            raise ValueError(f"GF({self.p}): characteristic must be prime")
        if self.p > MAX_PRIME:
            raise ValueError(f"GF({self.p}): characteristic must be below 2^31")

    @property
    def name(self) -> str:
        return "gf2" if self.p == 2 else f"gfp:{self.p}"

    def __str__(self) -> str:
        return self.name


GF2 = Field(2)
GF32003 = Field(32003)


def parse_field(text: str) -> Field:
    """Parse ``gf2`` or ``gfp:P``."""
    t = text.strip().lower()
    if t == "gf2":
        return GF2
    if t.startswith("gfp:"):
        try:
            p = int(t[4:])
        except ValueError:
            raise ValueError(f"bad field {text!r}: expected gfp:P with P an integer") from None
        return Field(p)
    raise ValueError(f"bad field {text!r}: expected gf2 or gfp:P")


@dataclass(frozen=True)
class FVector:
    """Face numbers ``f[k]`` = number of faces with ``k`` vertices (``f[0] = 1``)."""

    f: tuple[int, ...]
    d: int

    def __post_init__(self) -> None:
        if not self.f or self.f[0] != 1:
            raise ValueError("f-vector must start with the empty face")
        if self.d != len(self.f) - 1 or self.f[-1] < 1:
            raise ValueError("top face count must be positive and match d")


@dataclass(frozen=True)
class HPolynomial:
    d: int
    h: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.h) - 1

    def __call__(self, t: int) -> int:
        return sum(c * t**i for i, c in enumerate(self.h))


@dataclass(frozen=True)
class BettiTable:
    entries: Mapping[tuple[int, int], int]
    field: Field = GF2

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    @property
    def projective_dimension(self) -> int:
        return max(i for (i, _j), b in self.entries.items() if b)

    @property
    def regularity(self) -> int:
        return max(j - i for (i, j), b in self.entries.items() if b)


@dataclass(frozen=True)
class InvariantBundle:
    n: int
    depth: int
    reg: int
    dim: int
    degh: int
    field: str = "gf2"

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.depth, self.reg, self.dim, self.degh)

    def __str__(self) -> str:
        return f"depth={self.depth} reg={self.reg} dim={self.dim} degh={self.degh}"


def independence_fvector(g: Graph) -> FVector:
    counts = [1]
    stack = [(0, g.full_mask)]
    while stack:
        size, cand = stack.pop()
        for v in bits(cand):
            if len(counts) <= size + 1:
                counts.append(0)
            counts[size + 1] += 1
            rest = cand & ~((2 << v) - 1) & ~g.adj[v]
            if rest:
                stack.append((size + 1, rest))
    return FVector(tuple(counts), len(counts) - 1)


def h_polynomial(fv: FVector) -> HPolynomial:
    """Numerator of the Hilbert series over ``(1 - t)^d``."""
    d = fv.d
    h = [0] * (d + 1)
    for i, fi in enumerate(fv.f):
        # f_{i-1} t^i (1-t)^{d-i}
        binom = 1
        for k in range(d - i + 1):
            h[i + k] += fi * binom * (-1) ** k
            binom = binom * (d - i - k) // (k + 1)
    while len(h) > 1 and h[-1] == 0:
        h.pop()
    hp = HPolynomial(d, tuple(h))
    # h(1) is the number of facets of maximal size; no cancellation with (1-t)^d
    if not hp(1) == fv.f[-1] > 0:
        raise ArithmeticError("h(1) must equal the top face count")
    return hp


def betti_table(g: Graph, field: Field = GF2) -> BettiTable:
    if g.n > MAX_ORACLE_VERTICES:
        raise ValueError(f"Betti oracle limited to n <= {MAX_ORACLE_VERTICES}")
    return BettiTable(betti_sweep(g.n, g.adj, field.p), field)


def oracle_invariants(g: Graph, field: Field = GF2) -> InvariantBundle:
    fv = independence_fvector(g)
    if g.num_edges() == 0:
        # I(G) = 0: R/I(G) is the polynomial ring itself
        return InvariantBundle(g.n, g.n, 0, g.n, 0, field.name)
    table = betti_table(g, field)
    hp = h_polynomial(fv)
    return InvariantBundle(
        n=g.n,
        depth=g.n - table.projective_dimension,
        reg=table.regularity,
        dim=fv.d,
        degh=hp.degree,
        field=field.name,
    )


def hilbert_series_coefficients(fv: FVector, terms: int) -> list[int]:
    """First ``terms`` values of the Hilbert function of the Stanley-Reisner ring."""
    out = []
    for k in range(terms):
        if k == 0:
            out.append(1)
            continue
        # monomials of degree k supported on a face with i vertices: C(k-1, i-1)
        total = 0
        for i in range(1, len(fv.f)):
            total += fv.f[i] * comb(k - 1, i - 1)
        out.append(total)
    return out

