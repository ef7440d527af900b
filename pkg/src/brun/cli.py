"""Command line front end.

Subcommands: ``census`` (exact pair count and certified partial sum),
``extend`` (chain census tables onto a certified base), ``scan-c``
(divisor-error supremum), ``h-bound`` (certified product bound),
``certify`` (end-to-end enclosure of the full reciprocal sum), and
``project`` (heuristic, clearly flagged non-rigorous).

Machine-readable artifacts are JSON with interval endpoints serialized
as outward-rounded decimal strings alongside exact hex doubles, plus the
tool version and sha256 hashes of any file inputs.  No timestamps, no
environment capture: reruns with the same inputs are byte-identical,
whatever the thread count.  Exit codes: 0 success, 1 usage error, 2
computation error.
"""

from __future__ import annotations

import argparse
import decimal
import hashlib
import json
import os
import sys
from decimal import Decimal
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import __version__
from .divisor_error import scan_c
from .euler_product import h_bound
from .interval import Interval
from .projection import DEFAULT_B_ASSUMED, project_table
from .rv_bound import brun_upper, derive_params
from .sieve import DEFAULT_SEGMENT_SIZE, census
from .tables import (
    DEFAULT_BASE_ENCLOSURE,
    DEFAULT_BASE_THRESHOLD,
    CensusTableEntry,
    emit_table,
    extend_partial_sum,
    load_table_dir,
)

__all__ = ["main"]

TABLE_DIR_ENV = "BRUN_TABLE_DIR"

_DOWN = decimal.Context(prec=20, rounding=decimal.ROUND_FLOOR)
_UP = decimal.Context(prec=20, rounding=decimal.ROUND_CEILING)


class UsageError(Exception):
    """Bad argument combination that argparse alone cannot express."""


def _dec_down(x: float) -> str:
    return str(_DOWN.plus(Decimal(x)))


def _dec_up(x: float) -> str:
    return str(_UP.plus(Decimal(x)))


def _interval_json(iv: Interval) -> dict:
    return {
        "lo": _dec_down(iv.lo),
        "hi": _dec_up(iv.hi),
        "lo_hex": iv.lo.hex(),
        "hi_hex": iv.hi.hex(),
    }


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _table_hashes(table_dir: str) -> dict:
    # hash exactly the files the loader reads: sorted *.txt
    return {f.name: _sha256(f) for f in sorted(Path(table_dir).glob("*.txt"))}


def _emit(payload: dict, path: Optional[str]) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------
# argparse glue


def _exact_int(text: str) -> int:
    """Integer accepting scientific notation, rejecting anything inexact."""
    try:
        d = Decimal(text)
    except decimal.InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if d != d.to_integral_value():
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(d)


def _positive_int(text: str) -> int:
    value = _exact_int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a fraction: {text!r}")


def _existing_dir(text: str) -> str:
    if not Path(text).is_dir():
        raise argparse.ArgumentTypeError(f"directory not found: {text}")
    return text


def _exponent_list(text: str) -> list:
    try:
        ks = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list: {text!r}")
    if not ks:
        raise argparse.ArgumentTypeError("empty exponent list")
    return ks


def _outward_from_decimals(lo_text: str, hi_text: str) -> Interval:
    """Endpoint strings to doubles, rounded away from the interior."""
    try:
        lo = Interval.from_decimal(Decimal(lo_text)).lo
        hi = Interval.from_decimal(Decimal(hi_text)).hi
    except decimal.InvalidOperation:
        raise UsageError(f"endpoints must be decimal numbers: {lo_text!r}, {hi_text!r}")
    return Interval(lo, hi)


# ---------------------------------------------------------------------
# subcommands


def _cmd_census(args: argparse.Namespace) -> int:
    result = census(args.limit, segment_size=args.segment_size, threads=args.threads)
    print(f"pi2 = {result.pi2}")
    print(
        f"brun_partial in [{_dec_down(result.brun_partial.lo)}, "
        f"{_dec_up(result.brun_partial.hi)}]"
    )
    if args.emit_table:
        mantissa, exponent = args.limit, 0
        while mantissa >= 10 and mantissa % 10 == 0:
            mantissa //= 10
            exponent += 1
        entry = CensusTableEntry(mantissa, exponent, result.pi2)
        Path(args.emit_table).write_text(emit_table([entry]))
    if args.json:
        _emit(
            {
                "command": "census",
                "version": __version__,
                # segment size and thread count are scheduling knobs with
                # no effect on results, so they stay out of the artifact
                "inputs": {"limit": args.limit},
                "pi2": result.pi2,
                "brun_partial": _interval_json(result.brun_partial),
            },
            args.json,
        )
    return 0


def _cmd_extend(args: argparse.Namespace) -> int:
    if args.tables is None:
        raise UsageError(
            f"no table directory: pass --tables or set {TABLE_DIR_ENV}"
        )
    entries = load_table_dir(args.tables)
    base = _outward_from_decimals(args.base_lo, args.base_hi)
    result = extend_partial_sum(args.base_x, base, entries)
    print(f"extended to {result.limit}")
    print(f"pi2 = {result.pi2}")
    print(
        f"brun_partial in [{_dec_down(result.brun_partial.lo)}, "
        f"{_dec_up(result.brun_partial.hi)}]"
    )
    if args.json:
        _emit(
            {
                "command": "extend",
                "version": __version__,
                "inputs": {
                    "base_x": args.base_x,
                    "base": {"lo": args.base_lo, "hi": args.base_hi},
                    "tables": str(args.tables),
                    "input_files": _table_hashes(args.tables),
                },
                "limit": result.limit,
                "pi2": result.pi2,
                "brun_partial": _interval_json(result.brun_partial),
            },
            args.json,
        )
    return 0


def _cmd_scan_c(args: argparse.Namespace) -> int:
    result = scan_c(args.alpha, args.xmax)
    print(f"c({args.alpha}) <= {_dec_up(result.bound.hi)}")
    print(f"supremum attained near x = {result.argmax:.6g}")
    if args.json:
        _emit(
            {
                "command": "scan-c",
                "version": __version__,
                "inputs": {"alpha": str(args.alpha), "xmax": args.xmax},
                "bound": _interval_json(result.bound),
                "head": _interval_json(result.head),
                "scanned": _interval_json(result.scanned),
                "argmax": result.argmax,
            },
            args.json,
        )
    return 0


def _cmd_h_bound(args: argparse.Namespace) -> int:
    report = h_bound(args.cutoff, args.alpha, threads=args.threads)
    print(f"H <= {_dec_up(report.h.hi)}")
    print(f"log bound in [{_dec_down(report.log_bound.lo)}, {_dec_up(report.log_bound.hi)}]")
    if args.json:
        _emit(
            {
                "command": "h-bound",
                "version": __version__,
                "inputs": {"cutoff": args.cutoff, "alpha": str(args.alpha)},
                "pi_cutoff": report.pi_cutoff,
                "partial_log_sum": _interval_json(report.partial_log_sum),
                "tail_first_term": _interval_json(report.tail_first_term),
                "tail_integral_term": _interval_json(report.tail_integral_term),
                "log_bound": _interval_json(report.log_bound),
                "h": _interval_json(report.h),
            },
            args.json,
        )
    return 0


def _cmd_certify(args: argparse.Namespace) -> int:
    numeric = args.pi2 is not None or args.brun_lo is not None or args.brun_hi is not None
    input_files = {}
    if args.tables is not None and numeric:
        raise UsageError("pass either --tables or the --pi2/--brun-lo/--brun-hi triple")
    if args.tables is not None:
        entries = load_table_dir(args.tables)
        base = _outward_from_decimals(args.base_lo, args.base_hi)
        spliced = extend_partial_sum(args.base_x, base, entries)
        if spliced.limit != args.x0:
            raise ValueError(
                f"census tables end at {spliced.limit}, not at x0 = {args.x0}"
            )
        pi2_x0, partial = spliced.pi2, spliced.brun_partial
        input_files = _table_hashes(args.tables)
    elif numeric:
        if args.pi2 is None or args.brun_lo is None or args.brun_hi is None:
            raise UsageError("--pi2, --brun-lo and --brun-hi must be given together")
        pi2_x0 = args.pi2
        partial = _outward_from_decimals(args.brun_lo, args.brun_hi)
    else:
        raise UsageError(
            "certify needs a censused partial sum: --tables DIR "
            f"(or {TABLE_DIR_ENV}) or --pi2/--brun-lo/--brun-hi"
        )

    params = derive_params(improved=True, x0=float(args.x0)) if args.improved \
        else derive_params()
    cert = brun_upper(
        args.x0,
        pi2_x0,
        partial,
        params=params,
        cutoff_u=args.cutoff_u,
        width_target=args.width_target,
    )
    print(f"certified: {_dec_down(cert.lower)} <= B <= {_dec_up(cert.upper)}")
    print(f"quadrature pieces: {cert.quad_pieces}")
    payload = {
        "command": "certify",
        "version": __version__,
        "rigorous": True,
        "inputs": {
            "x0": cert.x0,
            "pi2_x0": cert.pi2_x0,
            "brun_partial_x0": _interval_json(cert.brun_partial_x0),
            "cutoff_u": cert.cutoff_u,
            "width_target": cert.width_target,
            "improved": args.improved,
            "tables": None if args.tables is None else str(args.tables),
            "input_files": input_files,
        },
        "params": {
            "alpha": str(params.alpha),
            "rho": _interval_json(params.rho),
            "twin_c": _interval_json(params.twin_c),
            "h": _interval_json(params.h),
            "scan_bound": _interval_json(params.scan_bound),
            "a6": _interval_json(params.a6),
            "a7": _interval_json(params.a7),
            "a8": _interval_json(params.a8),
            "a9": _interval_json(params.a9),
            "sqrt_coefficient": _interval_json(params.sqrt_coefficient),
        },
        "result": {
            "lower": _dec_down(cert.lower),
            "lower_hex": cert.lower.hex(),
            "upper": _dec_up(cert.upper),
            "upper_hex": cert.upper.hex(),
            "pair_term": _interval_json(cert.pair_term),
            "integral": _interval_json(cert.integral),
            "tail_bound": _interval_json(cert.tail_bound),
            "sqrt_tail": _interval_json(cert.sqrt_tail),
            "quad_pieces": cert.quad_pieces,
        },
    }
    if args.out:
        _emit(payload, args.out)
    return 0


def _cmd_project(args: argparse.Namespace) -> int:
    rows = project_table(args.ks, b_assumed=args.b_assumed)
    print(f"{'k':>4}  {'pi2_pred':>12}  {'B_pred':>10}  {'upper_pred':>10}")
    for row in rows:
        print(
            f"{row.k:>4}  {row.pi2_pred:>12.5e}  {row.b_pred:>10.6f}  "
            f"{row.upper_pred:>10.7f}"
        )
    print("all rows non-rigorous: heuristic inputs, not a certificate")
    if args.json:
        _emit(
            {
                "command": "project",
                "version": __version__,
                "rigorous": False,
                "non_rigorous": True,
                "inputs": {"ks": list(args.ks), "b_assumed": args.b_assumed},
                "rows": [
                    {
                        "k": row.k,
                        "pi2_pred": row.pi2_pred,
                        "b_pred": row.b_pred,
                        "upper_pred": row.upper_pred,
                        "non_rigorous": True,
                    }
                    for row in rows
                ],
            },
            args.json,
        )
    return 0


# ---------------------------------------------------------------------
# parser


def _add_table_base_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--tables",
        type=_existing_dir,
        default=os.environ.get(TABLE_DIR_ENV),
        help=f"census table directory (default: ${TABLE_DIR_ENV})",
    )
    sub.add_argument(
        "--base-x",
        type=_positive_int,
        default=DEFAULT_BASE_THRESHOLD,
        help="threshold the base enclosure certifies",
    )
    sub.add_argument(
        "--base-lo",
        default=str(DEFAULT_BASE_ENCLOSURE.lo),
        help="lower end of the base partial sum enclosure",
    )
    sub.add_argument(
        "--base-hi",
        default=str(DEFAULT_BASE_ENCLOSURE.hi),
        help="upper end of the base partial sum enclosure",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brun",
        description="Certified bounds on the twin prime reciprocal sum.",
    )
    parser.add_argument("--version", action="version", version=f"brun {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("census", help="sieve an exact census up to a limit")
    p.add_argument("--limit", type=_positive_int, required=True)
    p.add_argument("--segment-size", type=_positive_int, default=DEFAULT_SEGMENT_SIZE)
    p.add_argument("--threads", type=_positive_int, default=1)
    p.add_argument("--emit-table", metavar="PATH", help="write the count as a table row")
    p.add_argument("--json", metavar="PATH", help="write a JSON artifact")
    p.set_defaults(handler=_cmd_census)

    p = subs.add_parser("extend", help="chain census tables onto a certified base")
    _add_table_base_options(p)
    p.add_argument("--json", metavar="PATH", help="write a JSON artifact")
    p.set_defaults(handler=_cmd_extend)

    p = subs.add_parser("scan-c", help="divisor-error supremum scan")
    p.add_argument("--alpha", type=_fraction, default=Fraction(2, 5))
    p.add_argument("--xmax", type=_positive_int, default=10**5)
    p.add_argument("--json", metavar="PATH", help="write a JSON artifact")
    p.set_defaults(handler=_cmd_scan_c)

    p = subs.add_parser("h-bound", help="certified product bound from a prime cutoff")
    p.add_argument("--cutoff", type=_positive_int, required=True)
    p.add_argument("--alpha", type=_fraction, default=Fraction(2, 5))
    p.add_argument("--threads", type=_positive_int, default=1)
    p.add_argument("--json", metavar="PATH", help="write a JSON artifact")
    p.set_defaults(handler=_cmd_h_bound)

    p = subs.add_parser(
        "certify",
        help="certified enclosure of the full reciprocal sum",
        description=(
            "Certify lower and upper bounds from a censused point: either "
            "census tables chained from a certified base, or an explicit "
            "count and partial sum enclosure.  Projection artifacts are "
            "not valid input: certification consumes censused integers "
            "only."
        ),
    )
    p.add_argument("--x0", type=_positive_int, required=True)
    _add_table_base_options(p)
    p.add_argument("--pi2", type=_positive_int, default=None)
    p.add_argument("--brun-lo", default=None)
    p.add_argument("--brun-hi", default=None)
    p.add_argument("--cutoff-u", type=_positive_float, default=20000.0)
    p.add_argument("--width-target", type=_positive_float, default=1e-6)
    p.add_argument(
        "--improved",
        action="store_true",
        help="sharper sqrt coefficient anchored at x0",
    )
    p.add_argument("--out", metavar="PATH", help="write the certificate JSON")
    p.set_defaults(handler=_cmd_certify)

    p = subs.add_parser("project", help="heuristic projections (non-rigorous)")
    p.add_argument("--ks", type=_exponent_list, required=True)
    p.add_argument("--b-assumed", type=_positive_float, default=DEFAULT_B_ASSUMED)
    p.add_argument("--json", metavar="PATH", help="write a JSON artifact")
    p.set_defaults(handler=_cmd_project)

    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 1
        return 0 if code == 0 else 1
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"brun: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError, RuntimeError, OSError) as exc:
        print(f"brun: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
