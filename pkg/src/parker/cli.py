"""Command-line interface.

All data goes to stdout (machine-readable with --json); diagnostics and
progress stay on stderr.  Exit codes: 0 success (including empty search
results), 1 usage or input error, 2 verification failure, 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import survey
from .algebra import make_carrier
from .core import validate_square
from .gaussian import GaussianInt, chi, congruum_triple, search_hourglass
from .search import (ASSIGNMENT_POLICIES, DEFAULT_POLICY, msos_field,
                     msos_ring)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY_FAILED = 2
EXIT_INTERNAL = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the CLI contract wants 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _default_jobs() -> int:
    env = os.environ.get("PARKER_JOBS", "")
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="parker",
                     description="Magic squares of squares over finite fields "
                                 "and rings, and magic-hourglass search over "
                                 "the Gaussian integers.")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="more progress chatter on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (("field", "search one finite field F_q"),
                            ("ring", "search one ring Z/nZ")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("order", type=int)
        p.add_argument("--list", action="store_true",
                       help="include the tuples themselves")
        p.add_argument("--policy", choices=ASSIGNMENT_POLICIES,
                       default=DEFAULT_POLICY)
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("scan-fields", help="classify a range of field orders")
    p.add_argument("--from", dest="lo", type=int, required=True)
    p.add_argument("--to", dest="hi", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--primes", action="store_true",
                   help="prime orders only")
    g.add_argument("--prime-powers", action="store_true",
                   help="strict prime powers only")
    _add_scan_common(p)

    p = sub.add_parser("scan-rings", help="classify a range of ring moduli")
    p.add_argument("--from", dest="lo", type=int, required=True)
    p.add_argument("--to", dest="hi", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--odd", action="store_true", help="odd moduli only")
    g.add_argument("--mod", type=int, help="restrict to n = RES (mod MOD)")
    p.add_argument("--res", type=int, default=0,
                   help="residue for --mod (default 0)")
    _add_scan_common(p)

    p = sub.add_parser("hourglass", help="search for magic hourglass triples")
    p.add_argument("--mode", choices=("exhaustive", "product-first"),
                   required=True)
    p.add_argument("--max-norm", type=int, required=True)
    p.add_argument("--report-every", type=int, default=None,
                   help="progress line on stderr every K units")

    p = sub.add_parser("verify", help="validate a square file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("congruum", help="three-square progression parameters")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)

    p = sub.add_parser("chi", help="square progression of a Gaussian integer")
    p.add_argument("re", type=int)
    p.add_argument("im", type=int)
    return parser


def _add_scan_common(p):
    p.add_argument("--policy", choices=ASSIGNMENT_POLICIES,
                   default=DEFAULT_POLICY)
    p.add_argument("--jobs", type=int, default=None,
                   help="worker processes (default $PARKER_JOBS or 1)")
    p.add_argument("--checkpoint", default=None,
                   help="JSONL checkpoint file for resume")
    p.add_argument("--out", default=None, help="report file")
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv")


# ---------------------------------------------------------------------------
# Subcommands.


def _tuple_json(carrier, t):
    return [carrier.element_to_json(x) for x in t]


def _cmd_single(args, kind):
    result = msos_field(args.order, args.policy) if kind == "field" \
        else msos_ring(args.order, args.policy)
    carrier = result.carrier
    payload = {
        "kind": kind,
        "order": args.order,
        "policy": result.policy,
        "square_count": len(carrier.square_set()),
        "tuple_count": result.tuple_count,
        "dihedral_class_count": result.dihedral_class_count,
        "parker": result.parker,
    }
    if carrier.kind == "extension-field":
        payload["modulus_poly"] = list(carrier.modulus_poly)
    if args.list:
        payload["tuples"] = [_tuple_json(carrier, t) for t in result.tuples]
    if args.json:
        print(json.dumps(payload, sort_keys=True))
        return EXIT_OK
    print(f"{carrier}: {result.tuple_count} magic squares of squares "
          f"({result.dihedral_class_count} dihedral classes), "
          f"{'Parker' if result.parker else 'not Parker'} "
          f"[policy {result.policy}]")
    if args.list:
        for t in result.tuples:
            rows = [" ".join(carrier.element_repr(x) for x in t[i:i + 3])
                    for i in (0, 3, 6)]
            print("  [" + " | ".join(rows) + "]")
    return EXIT_OK


def _cmd_scan(args, kind):
    jobs = args.jobs if args.jobs is not None else _default_jobs()
    if kind == "field":
        order_filter = ("primes-only" if args.primes
                        else "prime-powers-only" if args.prime_powers
                        else "all")
        records, table = survey.scan_fields(
            args.lo, args.hi, order_filter, jobs=jobs,
            checkpoint=args.checkpoint, policy=args.policy)
    else:
        order_filter = ("odd" if args.odd
                        else (args.mod, args.res) if args.mod
                        else "all")
        records, table = survey.scan_rings(
            args.lo, args.hi, order_filter, jobs=jobs,
            checkpoint=args.checkpoint, policy=args.policy)
    if args.out:
        survey.write_report(records, args.format, args.out)
        print(f"wrote {len(records)} records to {args.out}", file=sys.stderr)
    # stdout stays timing-free so identical invocations print identical bytes
    for rec in records:
        reason = f" ({rec.prefilter_reason})" if rec.prefilter_reason else ""
        status = "Parker" if rec.parker else f"{rec.msos_count} squares"
        print(f"{rec.kind} {rec.order}: {status}{reason}")
    print("record breakers: "
          + ", ".join(f"{o}:{c}" for o, c in table.rows))
    return EXIT_OK


def _cmd_hourglass(args):
    progress = (lambda msg: print(msg, file=sys.stderr)) if args.report_every \
        else None
    result = search_hourglass(args.mode, args.max_norm,
                              report_every=args.report_every,
                              progress=progress)
    for hit in result.hits:
        print(json.dumps({"x": [hit.x.re, hit.x.im],
                          "y": [hit.y.re, hit.y.im],
                          "z": [hit.z.re, hit.z.im],
                          "cells": list(hit.cells)}, sort_keys=True))
    print(f"{result.mode}: {len(result.hits)} hits, "
          f"{result.triples_tested} triples tested, "
          f"{result.candidates_enumerated} candidates enumerated "
          f"(max norm {result.bound})", file=sys.stderr)
    return EXIT_OK


def _load_square_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    try:
        info = doc["carrier"]
        kind = info["kind"]
        order = info.get("order")
        modulus = info.get("modulus_poly")
        cells = doc["cells"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed square file {path}: {exc}") from None
    carrier = make_carrier(kind, order, modulus)
    if not isinstance(cells, list) or len(cells) != 9:
        raise ValueError("square file needs exactly 9 cells")
    return carrier, [carrier.element_from_json(c) for c in cells]


def _cmd_verify(args):
    carrier, cells = _load_square_file(args.file)
    report = validate_square(cells, carrier)
    payload = {
        "carrier": str(carrier),
        "line_sums": {lbl: carrier.element_to_json(s) for lbl, s
                      in zip(report.line_labels, report.line_sums)},
        "sums_equal_count": report.sums_equal_count,
        "distinct_entries": report.distinct_entries,
        "all_entries_square": report.all_entries_square,
        "is_magic_square_of_squares": report.is_magic,
    }
    if report.common_total is not None:
        payload["common_total"] = carrier.element_to_json(report.common_total)
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"carrier: {payload['carrier']}")
        for lbl, s in zip(report.line_labels, report.line_sums):
            print(f"  {lbl:5s} sum = {carrier.element_repr(s)}")
        print(f"sums agreeing: {report.sums_equal_count}/8, "
              f"distinct entries: {report.distinct_entries}/9, "
              f"all squares: {report.all_entries_square}")
        if report.mismatched_lines():
            mism = ", ".join(f"{lbl}={carrier.element_repr(s)}"
                             for lbl, s in report.mismatched_lines())
            print(f"disagreeing lines: {mism}")
        print("verdict: " + ("magic square of squares"
                             if report.is_magic else "NOT magic"))
    return EXIT_OK if report.is_magic else EXIT_VERIFY_FAILED


def _cmd_congruum(args):
    t = congruum_triple(args.m, args.n, args.k)
    print(f"r={t.r} s={t.s} t={t.t} congruum={t.congruum}")
    return EXIT_OK


def _cmd_chi(args):
    r, s, t = chi(GaussianInt(args.re, args.im))
    print(f"r={r} s={s} t={t}")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "field":
            code = _cmd_single(args, "field")
        elif args.command == "ring":
            code = _cmd_single(args, "ring")
        elif args.command == "scan-fields":
            code = _cmd_scan(args, "field")
        elif args.command == "scan-rings":
            code = _cmd_scan(args, "ring")
        elif args.command == "hourglass":
            code = _cmd_hourglass(args)
        elif args.command == "verify":
            code = _cmd_verify(args)
        elif args.command == "congruum":
            code = _cmd_congruum(args)
        elif args.command == "chi":
            code = _cmd_chi(args)
        else:  # pragma: no cover
            raise ValueError(f"unknown command {args.command!r}")
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"parker: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:  # pragma: no cover
        print(f"parker: internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return code


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
