"""Command-line interface: ``cwinv <command> [options]``.

Exit codes: 0 success, 1 verification mismatch, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence, TextIO

from .cache import CacheMismatch, default_cache_dir
from .cameron_walker import construct, cw_invariants, parse_shape, recognize_cw, build_cw, RecognitionConflict
from .graph import Graph, GraphFormatError, emit_graph6, parse_edge_list, parse_graph6
from .lattice import (
    CLOSED_FORM_KINDS,
    THEOREMS,
    LatticePointSet,
    WitnessError,
    closed_form_set,
    construct_witness,
    diff_sets,
    enumerate_cw_sets,
    enumerate_graph_report,
)
from .oracle import InvariantBundle, oracle_invariants, parse_field
from .plot import emit_scatter_svg
from .verify import SUITES

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits with 2 as well; keep stderr format
        raise UsageError(message)


def parse_n_range(text: str) -> list[int]:
    """``8`` or ``5..12`` (inclusive)."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
            if lo > hi:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError:
        raise UsageError(f"bad n or range {text!r}; expected N or A..B") from None


def _ns(args, default: Sequence[int] | None = None) -> list[int]:
    if getattr(args, "n_range", None):
        return parse_n_range(args.n_range)
    if getattr(args, "n", None):
        return parse_n_range(args.n)
    if default is not None:
        return list(default)
    raise UsageError("--n is required")


def _read_graphs(args) -> list[tuple[str, Graph]]:
    out = []
    if args.graph6:
        if args.graph6 == "-":
            for line in sys.stdin:
                line = line.strip()
                if line:
                    out.append((line, parse_graph6(line)))
        else:
            out.append((args.graph6, parse_graph6(args.graph6)))
    if args.edges:
        g = parse_edge_list(Path(args.edges).read_text())
        out.append((emit_graph6(g), g))
    if args.shape:
        g = build_cw(parse_shape(args.shape))
        out.append((emit_graph6(g), g))
    if not out:
        raise UsageError("give a graph with --graph6, --edges or --shape")
    return out


def _emit(text: str, args, out: TextIO) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        out.write(text)


def _bundle_json(code: str, b: InvariantBundle) -> dict:
    return {"graph6": code, "n": b.n, "depth": b.depth, "reg": b.reg, "dim": b.dim,
            "degh": b.degh, "field": b.field}


def _format_set(s: LatticePointSet, fmt: str) -> str:
    if fmt == "json":
        return s.to_json()
    if fmt == "svg":
        return emit_scatter_svg(s)
    return s.to_tsv()


def _format_sets(sets: list[LatticePointSet], fmt: str) -> str:
    if fmt == "svg":
        if len(sets) != 1:
            raise UsageError("svg output takes a single n")
        return emit_scatter_svg(sets[0])
    if fmt == "json" and len(sets) > 1:
        return "[" + ",\n".join(s.to_json().rstrip("\n") for s in sets) + "]\n"
    return "".join(_format_set(s, fmt) for s in sets)


# -- commands -----------------------------------------------------------------


def cmd_invariants(args, out, err) -> int:
    field = parse_field(args.field)
    graphs = _read_graphs(args)
    rows, objs = [], []
    for code, g in graphs:
        if args.formula:
            if not args.shape:
                raise UsageError("--formula needs --shape")
            b = cw_invariants(parse_shape(args.shape))
        else:
            b = oracle_invariants(g, field)
        rows.append(str(b) if len(graphs) == 1 else f"{code}\t{b}")
        objs.append(_bundle_json(code, b))
    if args.format == "json":
        _emit(json.dumps(objs if len(objs) > 1 else objs[0]) + "\n", args, out)
    else:
        _emit("\n".join(rows) + "\n", args, out)
    return EXIT_OK


def cmd_construct(args, out, err) -> int:
    g = construct(args.family, args.params)
    code = emit_graph6(g)
    if args.format == "json":
        _emit(json.dumps({"family": args.family, "params": args.params, "n": g.n,
                          "graph6": code, "edges": g.edges()}) + "\n", args, out)
    else:
        _emit(code + "\n", args, out)
    return EXIT_OK


def cmd_recognize(args, out, err) -> int:
    rows = []
    for code, g in _read_graphs(args):
        shape = recognize_cw(g)
        text = shape.literal() if shape else "not Cameron-Walker"
        rows.append(text if args.graph6 != "-" else f"{code}\t{text}")
    _emit("\n".join(rows) + "\n", args, out)
    return EXIT_OK


def cmd_closed_form(args, out, err) -> int:
    sets = [closed_form_set(args.kind, n) for n in _ns(args)]
    _emit(_format_sets(sets, args.format), args, out)
    return EXIT_OK


def cmd_enumerate(args, out, err) -> int:
    sets = []
    status = EXIT_OK
    for n in _ns(args):
        if args.what == "cw":
            cs = enumerate_cw_sets(n)
            sets.append(cs.tuples if args.arity == 4 else cs.pairs)
            for lit, clause in cs.violations:
                err.write(f"violation: {lit}: {clause}\n")
                status = EXIT_MISMATCH
        else:
            if args.arity == 4:
                raise UsageError("graph enumeration produces (depth, dim) pairs only")
            rep = enumerate_graph_report(
                n, args.source, parse_field(args.field), default_cache_dir(args.cache), args.threads
            )
            sets.append(rep.pairs)
            for code, clause in rep.violations:
                err.write(f"violation: {code}: {clause}\n")
                status = EXIT_MISMATCH
            if args.witnesses:
                for pt in sorted(rep.witnesses):
                    err.write(f"witness n={n} {pt}: {rep.witnesses[pt]}\n")
    _emit(_format_sets(sets, args.format), args, out)
    return status


def _parse_point(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace("(", "").replace(")", "").split(","))
    except ValueError:
        raise UsageError(f"bad point {text!r}; expected comma-separated integers") from None


def cmd_witness(args, out, err) -> int:
    ns = _ns(args)
    if len(ns) != 1:
        raise UsageError("witness takes a single --n")
    try:
        w = construct_witness(args.theorem, ns[0], _parse_point(args.point))
    except WitnessError as exc:
        err.write(f"theorem contradiction: {exc}\n")
        return EXIT_MISMATCH
    code = emit_graph6(w.graph)
    if args.format == "json":
        obj = {"theorem": w.theorem, "n": w.n, "point": list(w.point), "graph6": code,
               "construction": w.construction, "shape": w.shape.literal() if w.shape else None,
               "invariants": _bundle_json(code, w.bundle)}
        _emit(json.dumps(obj) + "\n", args, out)
    else:
        lines = [code, f"# {w.construction}"]
        if w.shape:
            lines.append(f"# {w.shape.literal()}")
        lines.append(f"# {w.bundle}")
        _emit("\n".join(lines) + "\n", args, out)
    return EXIT_OK


def cmd_verify(args, out, err) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    status = EXIT_OK
    for name in names:
        fn, default = SUITES[name]
        ns = _ns(args, default)
        failures = fn(ns, field=parse_field(args.field), threads=args.threads,
                      cache_dir=default_cache_dir(args.cache))
        span = f"{ns[0]}..{ns[-1]}" if ns else "-"
        if failures:
            status = EXIT_MISMATCH
            out.write(f"FAIL {name} n={span} ({len(failures)} mismatches)\n")
            for line in failures[:50]:
                out.write(f"  {line}\n")
        else:
            out.write(f"PASS {name} n={span}\n")
    return status


def _load_set(path: str) -> LatticePointSet:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return LatticePointSet.from_json(text)
    return LatticePointSet.from_tsv(text)


def cmd_diff(args, out, err) -> int:
    a, b = _load_set(args.old), _load_set(args.new)
    rows = diff_sets(a, b)
    _emit("".join(r + "\n" for r in rows), args, out)
    return EXIT_MISMATCH if rows and args.strict else EXIT_OK


def cmd_plot(args, out, err) -> int:
    if args.input:
        s = _load_set(args.input)
    else:
        ns = _ns(args)
        if len(ns) != 1:
            raise UsageError("plot takes a single --n")
        n = ns[0]
        if args.kind == "graph":
            s = enumerate_graph_report(n, args.source, parse_field(args.field),
                                       default_cache_dir(args.cache), args.threads).pairs
        elif args.kind == "cw":
            s = enumerate_cw_sets(n).pairs
        else:
            s = closed_form_set(args.kind, n)
    if s.arity == 4:
        s = s.project((0, 2))
    _emit(emit_scatter_svg(s), args, out)
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", help="vertex count N or inclusive range A..B")
    p.add_argument("--n-range", dest="n_range", metavar="A..B", help="inclusive vertex-count range")
    p.add_argument("--field", default="gf2", help="gf2 (default) or gfp:P")
    p.add_argument("--source", default="builtin", help="builtin or graph6:PATH")
    p.add_argument("--cache", metavar="DIR", help="result cache directory (env CWINV_CACHE wins)")
    p.add_argument("--format", default="tsv", choices=("tsv", "json", "svg"))
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1, metavar="K")
    p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")


def _graph_inputs(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph6", metavar="CODE", help="graph6 code, or - to read codes from stdin")
    p.add_argument("--edges", metavar="FILE", help="edge-list file, one 'u v' pair per line")
    p.add_argument("--shape", metavar="LITERAL", help='shape literal, e.g. "cw m=1 p=1 s=1 t=1 bip=1-1"')


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cwinv", description="Edge-ideal invariants and lattice-point sets.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("invariants", help="depth, reg, dim, degh of a graph")
    _common(p)
    _graph_inputs(p)
    p.add_argument("--formula", action="store_true", help="use closed formulas for --shape")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("construct", help="build a named graph")
    _common(p)
    p.add_argument("family", help="star, star-triangle, G, G1, G2, e1, e2, e3")
    p.add_argument("params", nargs="*", type=int)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("recognize", help="Cameron-Walker shape of a graph")
    _common(p)
    _graph_inputs(p)
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("closed-form", help="materialise a closed-form set")
    _common(p)
    p.add_argument("--kind", required=True, choices=CLOSED_FORM_KINDS)
    p.set_defaults(func=cmd_closed_form)

    p = sub.add_parser("enumerate", help="enumerate a set from graphs or shapes")
    _common(p)
    p.add_argument("--what", choices=("graphs", "cw"), default="graphs")
    p.add_argument("--arity", type=int, choices=(2, 4), default=2)
    p.add_argument("--witnesses", action="store_true", help="report one graph6 witness per point on stderr")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("witness", help="construct a verified witness graph for a point")
    _common(p)
    p.add_argument("--theorem", required=True, choices=THEOREMS)
    p.add_argument("--point", required=True, help="comma-separated coordinates, e.g. 3,4")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", help="run a verification suite")
    _common(p)
    p.add_argument("--suite", required=True, choices=tuple(SUITES) + ("all",))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("diff", help="compare two set files")
    _common(p)
    p.add_argument("old")
    p.add_argument("new")
    p.add_argument("--strict", action="store_true", help="exit 1 when the sets differ")
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("plot", help="SVG scatter plot of a pair set")
    _common(p)
    p.add_argument("--kind", default="graph", choices=("graph", "cw") + CLOSED_FORM_KINDS)
    p.add_argument("--input", metavar="FILE", help="plot a TSV/JSON set file instead")
    p.set_defaults(func=cmd_plot)
    return parser


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "threads", 1) < 1:
            raise UsageError("--threads must be >= 1")
        return args.func(args, out, err)
    except UsageError as exc:
        err.write(f"cwinv: usage error: {exc}\n")
        return EXIT_USAGE
    except RecognitionConflict as exc:
        err.write(f"cwinv: recognisers disagree: {exc}\n")
        return EXIT_MISMATCH
    except (GraphFormatError, CacheMismatch, ValueError, OSError) as exc:
        err.write(f"cwinv: error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
