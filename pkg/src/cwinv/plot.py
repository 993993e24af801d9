"""Byte-deterministic SVG scatter plots of (depth, dim) point sets."""

from __future__ import annotations

from .lattice import LatticePointSet

CELL = 32
MARGIN = 48


def emit_scatter_svg(s: LatticePointSet, title: str | None = None) -> str:
    if s.arity != 2:
        raise ValueError("scatter plots need pairs; project the set first")
    top = max([s.n] + [max(p) for p in s.points])
    width = height = 2 * MARGIN + top * CELL

    def x(v: int) -> int:
        return MARGIN + v * CELL

    def y(v: int) -> int:
        return height - MARGIN - v * CELL

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        '<g stroke="#cccccc" stroke-width="1">',
    ]
    for k in range(top + 1):
        out.append(f'<line x1="{x(k)}" y1="{y(0)}" x2="{x(k)}" y2="{y(top)}"/>')
        out.append(f'<line x1="{x(0)}" y1="{y(k)}" x2="{x(top)}" y2="{y(k)}"/>')
    out.append("</g>")
    out.append('<g stroke="black" stroke-width="2">')
    out.append(f'<line x1="{x(0)}" y1="{y(0)}" x2="{x(top)}" y2="{y(0)}"/>')
    out.append(f'<line x1="{x(0)}" y1="{y(0)}" x2="{x(0)}" y2="{y(top)}"/>')
    out.append("</g>")
    out.append('<g font-family="sans-serif" font-size="12" fill="black">')
    for k in range(top + 1):
        out.append(f'<text x="{x(k)}" y="{y(0) + 16}" text-anchor="middle">{k}</text>')
        out.append(f'<text x="{x(0) - 8}" y="{y(k) + 4}" text-anchor="end">{k}</text>')
    out.append(f'<text x="{x(top) // 2 + MARGIN // 2}" y="{height - 10}" text-anchor="middle">depth</text>')
    out.append(
        f'<text x="14" y="{height // 2}" text-anchor="middle" '
        f'transform="rotate(-90 14 {height // 2})">dim</text>'
    )
    label = title if title is not None else f"{s.provenance} n={s.n}"
    out.append(f'<text x="{width // 2}" y="20" text-anchor="middle">{_escape(label)}</text>')
    out.append("</g>")
    out.append('<g fill="black">')
    for a, b in s.sorted():
        out.append(f'<circle cx="{x(a)}" cy="{y(b)}" r="5"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
