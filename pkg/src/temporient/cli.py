"""Command-line front end.

The first output line is machine readable: `YES`, or `NO reason=<code>`.
Exit status is 0 for YES, 1 for NO and 2 for usage, parse or budget errors.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, TextIO

from .complete import solve_ttc_fpt, solve_ttc_oriented
from .core import (DirectedTimeEdge, Instance, MultiLabelTemporalGraph, Orientation,
                   ParseError, TemporalGraph, Variant, format_multilayer_orientation,
                   format_orientation, parse_instance, parse_orientation, serialize_instance)
from .oracle import BudgetExceeded, oracle_complete_witness, oracle_multilayer, oracle_recognize
from .recognize import recognize, solve_multilayer
from .reductions import CnfKind, gen_mto, gen_strict_tto, gen_ttc, parse_dimacs
from .verify import ImproperOrientation, verify_multilayer, verify_orientation

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2

_REDUCTIONS = {"strict-tto": CnfKind.SAT34, "ttc": CnfKind.IMPL2, "mto": CnfKind.MONO_NAE3}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _variant(text: str) -> Variant:
    try:
        return Variant(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"unknown variant {text!r} (choose from {', '.join(v.value for v in Variant)})")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _load(path: str) -> Instance:
    return parse_instance(_read(path))


def _plain_graph(inst: Instance, cmd: str) -> TemporalGraph:
    if inst.kind == "multi":
        raise UsageError(f"{cmd} needs single-label edges; use 'multilayer' for 'em' edges")
    if inst.oriented is not None:
        raise UsageError(f"{cmd} takes an unoriented instance; 'o' lines belong to 'complete'")
    return inst.graph


def _multi_graph(inst: Instance) -> MultiLabelTemporalGraph:
    if inst.kind != "multi":
        raise UsageError("multilayer needs 'em' edges")
    return inst.graph


def _add_common(p, variant=True):
    if variant:
        p.add_argument("--variant", type=_variant, required=True,
                       help="tto, strict, strong or strong-strict")
    p.add_argument("instance", help="instance file, or - for standard input")
    p.add_argument("--print-orientation", action="store_true",
                   help="print the witness orientation as '-> U V LABEL' lines")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="temporient", description="Temporal transitive orientation toolkit.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    _add_common(sub.add_parser("recognize", help="decide whether a transitive orientation exists"))
    p = sub.add_parser("complete", help="add at most BUDGET time-edges to make the instance transitive")
    _add_common(p)
    p.add_argument("--budget", type=int, required=True)
    _add_common(sub.add_parser("multilayer", help="one orientation making every label layer transitive"),
                variant=False)

    p = sub.add_parser("verify", help="check an orientation file against an instance")
    p.add_argument("--variant", type=_variant, default=None,
                   help="required for single-label instances")
    p.add_argument("instance")
    p.add_argument("orientation", help="'-> U V L' lines, optionally '+ U V L' additions")

    p = sub.add_parser("gen", help="build an instance from a DIMACS formula")
    p.add_argument("--reduction", choices=sorted(_REDUCTIONS), required=True)
    p.add_argument("--k", type=int, default=None, help="clauses to satisfy (ttc only)")
    p.add_argument("cnf", nargs="?", default="-", help="DIMACS file (default standard input)")

    p = sub.add_parser("oracle", help="brute-force answers with the same flags and output")
    osub = p.add_subparsers(dest="mode", required=True, parser_class=_Parser)
    _add_common(osub.add_parser("recognize"))
    q = osub.add_parser("complete")
    _add_common(q)
    q.add_argument("--budget", type=int, required=True)
    _add_common(osub.add_parser("multilayer"), variant=False)
    return ap


def _no(out: TextIO, reason: str, detail: Optional[str] = None) -> int:
    out.write(f"NO reason={reason}\n")
    if detail:
        out.write(detail.rstrip("\n") + "\n")
    return EXIT_NO


def _cmd_recognize(args, out: TextIO, use_oracle: bool) -> int:
    g = _plain_graph(_load(args.instance), "recognize")
    if use_oracle:
        f = oracle_recognize(g, args.variant)
        if f is None:
            return _no(out, "oracle")
    else:
        res = recognize(g, args.variant)
        if not res.yes:
            return _no(out, res.reason)
        f = res.orientation
    out.write("YES\n")
    if args.print_orientation:
        out.write(format_orientation(g, f))
    return EXIT_YES


def _cmd_complete(args, out: TextIO, use_oracle: bool) -> int:
    inst = _load(args.instance)
    if inst.kind == "multi":
        raise UsageError("complete needs single-label edges")
    if args.budget < 0:
        raise UsageError("--budget must be non-negative")
    g = inst.graph
    f = inst.oriented or Orientation(frozenset())
    if use_oracle:
        size, orient, added = oracle_complete_witness(g, f, args.budget, args.variant)
        if size is None:
            return _no(out, "oracle")
        added = [DirectedTimeEdge(*e) for e in added]
    else:
        if f.is_proper(g):
            res = solve_ttc_oriented(g, f, args.budget, args.variant)
        else:
            res = solve_ttc_fpt(g, f, args.budget, args.variant, jobs=args.jobs)
        if not res.yes:
            return _no(out, res.reason)
        orient, added = res.orientation, res.added
    out.write("YES\n")
    text = format_orientation(g, orient, added)
    if not args.print_orientation:
        text = "".join(line + "\n" for line in text.splitlines() if line.startswith("+ "))
    out.write(text)
    return EXIT_YES


def _cmd_multilayer(args, out: TextIO, use_oracle: bool) -> int:
    g = _multi_graph(_load(args.instance))
    if use_oracle:
        f = oracle_multilayer(g)
        if f is None:
            return _no(out, "oracle")
    else:
        res = solve_multilayer(g)
        if not res.yes:
            return _no(out, res.reason)
        f = res.orientation
    out.write("YES\n")
    if args.print_orientation:
        out.write(format_multilayer_orientation(g, f))
    return EXIT_YES


def _cmd_verify(args, out: TextIO) -> int:
    inst = _load(args.instance)
    g = inst.graph
    f, added = parse_orientation(_read(args.orientation), g)
    try:
        if isinstance(g, MultiLabelTemporalGraph):
            bad = verify_multilayer(g, f)
            if bad is not None:
                layer, v = bad
                return _no(out, v.reason.value, f"layer {layer}: {v.describe(g)}")
        else:
            if args.variant is None:
                raise UsageError("verify needs --variant for single-label instances")
            if inst.oriented is not None and not inst.oriented.arcs <= f.arcs:
                return _no(out, "contradicts-instance")
            if added:
                g2 = g.with_edges(added)
                f = f.union((e.tail, e.head) for e in added)
                g = g2
            v = verify_orientation(g, f, args.variant)
            if v is not None:
                return _no(out, v.reason.value, v.describe(g))
    except ImproperOrientation as exc:
        return _no(out, "improper", str(exc))
    out.write("YES\n")
    return EXIT_YES


def _cmd_gen(args, out: TextIO) -> int:
    kind = _REDUCTIONS[args.reduction]
    f = parse_dimacs(_read(args.cnf), kind)
    if kind is CnfKind.SAT34:
        g = gen_strict_tto(f)
        header = "# strict TTO instance: YES iff the formula is satisfiable\n"
    elif kind is CnfKind.IMPL2:
        k = args.k if args.k is not None else f.m
        g, _, budget = gen_ttc(f, k)
        header = f"# completion instance: budget {budget} (k={k})\n"
    else:
        g = gen_mto(f)
        header = "# multilayer instance: YES iff the formula is NAE-satisfiable\n"
    out.write(header + serialize_instance(g))
    return EXIT_YES


def run(argv=None, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command == "gen" and args.k is not None and args.reduction != "ttc":
            raise UsageError("--k only applies to --reduction ttc")
        if args.command in ("verify", "gen"):
            return (_cmd_verify if args.command == "verify" else _cmd_gen)(args, out)
        use_oracle = args.command == "oracle"
        mode = args.mode if use_oracle else args.command
        if args.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        handler = {"recognize": _cmd_recognize, "complete": _cmd_complete,
                   "multilayer": _cmd_multilayer}[mode]
        return handler(args, out, use_oracle)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
    except BudgetExceeded as exc:
        err.write(f"oracle budget exceeded: {exc}\n")
    except (OSError, ValueError) as exc:
        err.write(f"error: {exc}\n")
    return EXIT_ERROR


def main(argv=None) -> int:
    sys.exit(run(argv))
