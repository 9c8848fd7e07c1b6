"""Command-line interface.

Exit codes: 0 success, 1 domain refusal (not a square), 2 usage error,
3 internal integrity failure.  Results go to stdout; timings go to stderr.
"""

from __future__ import annotations

import argparse
import sys
import time

from f2squares import asymptotics, canonical, classcount, f2linalg, f2poly
from f2squares.partitions import FAMILIES
from f2squares.qseries import IntegrityError

EXIT_OK = 0
EXIT_REFUSED = 1
EXIT_USAGE = 2
EXIT_INTEGRITY = 3


def _bounded_int(lo: int, hi: int | None = None):
    def conv(text: str) -> int:
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
        if v < lo or (hi is not None and v > hi):
            rng = f">= {lo}" if hi is None else f"in [{lo}, {hi}]"
            raise argparse.ArgumentTypeError(f"must be {rng}, got {v}")
        return v

    return conv


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="f2squares", description="Count and construct squares of matrices over GF(2).")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="number of matrices in a class union, n = 1..N")
    c.add_argument("--ring", choices=classcount.RINGS, required=True)
    c.add_argument("--family", choices=sorted(FAMILIES), default="squares")
    c.add_argument("--max-n", type=_bounded_int(1, 100), required=True)
    c.add_argument("--backend", choices=classcount.BACKENDS, default="rational")
    c.add_argument("--format", choices=("csv", "json"), default="csv")

    k = sub.add_parser("classes", help="number of conjugacy classes of squares, n = 1..N")
    k.add_argument("--ring", choices=classcount.RINGS, required=True)
    k.add_argument("--max-n", type=_bounded_int(1, 1000), required=True)
    k.add_argument("--method", choices=("direct", "euler"), default="direct")

    o = sub.add_parser("oracle", help="exhaustive Gray-code census of squares")
    o.add_argument("--n", type=_bounded_int(1), required=True)
    o.add_argument("--invertible", action="store_true")
    o.add_argument("--i-know-this-is-slow", dest="long_run", action="store_true")

    s = sub.add_parser("sqrt", help="square root of a matrix read from a file ('-' for stdin)")
    s.add_argument("--matrix-file", required=True)

    r = sub.add_parser("ratios", help="|c_j - c_J|^(-1/j) for squares, as CSV")
    r.add_argument("--ring", choices=classcount.RINGS, required=True)
    r.add_argument("--terms", type=_bounded_int(2), default=asymptotics.DEFAULT_TERMS)
    r.add_argument("--precision-bits", type=_bounded_int(256), default=asymptotics.DEFAULT_PRECISION)
    return p


def _cmd_count(args, out) -> int:
    reports = classcount.count_elements(args.family, args.ring, args.max_n, backend=args.backend)
    if args.format == "csv":
        out.write(",".join(classcount.CountReport.FIELDS) + "\n")
        for rep in reports:
            out.write(rep.csv_row() + "\n")
    else:
        for rep in reports:
            out.write(rep.json_line() + "\n")
    return EXIT_OK


def _cmd_classes(args, out) -> int:
    if args.method == "direct":
        counts = classcount.count_classes("squares", args.ring, args.max_n)
    else:
        counts = classcount.euler_product_class_counts(args.ring, args.max_n)
    out.write("n,class_count\n")
    for n, c in enumerate(counts, 1):
        out.write(f"{n},{c}\n")
    return EXIT_OK


def _cmd_oracle(args, out, err) -> int:
    if args.n > f2linalg.LONG_RUN_N:
        err.write(f"error: a census for n = {args.n} is out of reach\n")
        return EXIT_USAGE
    if args.n == f2linalg.LONG_RUN_N and not args.long_run:
        err.write("error: n = 6 takes 2^36 steps and 8 GiB; add --i-know-this-is-slow\n")
        return EXIT_USAGE
    t0 = time.perf_counter()
    count = f2linalg.gray_code_census(args.n, invertible_only=args.invertible, allow_long_run=args.long_run)
    err.write(f"elapsed {time.perf_counter() - t0:.3f} s\n")
    out.write(f"{count}\n")
    return EXIT_OK


def _cmd_sqrt(args, out, err) -> int:
    try:
        if args.matrix_file == "-":
            text = sys.stdin.read()
        else:
            with open(args.matrix_file) as fh:
                text = fh.read()
        a = f2linalg.BitMatrix.parse(text)
    except (OSError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    try:
        b = canonical.sqrt(a)
    except canonical.NotASquareError as exc:
        out.write(f"not a square: phi={f2poly.to_human(exc.phi)} partition=({','.join(map(str, exc.partition))})\n")
        return EXIT_REFUSED
    if f2linalg.square(b) != a:
        raise IntegrityError("computed root does not square to the input")
    out.write(b.to_text())
    return EXIT_OK


def _cmd_ratios(args, out) -> int:
    series = asymptotics.ratio_series(args.ring, args.terms, args.precision_bits)
    out.write(series.to_csv())
    return EXIT_OK


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "count":
            return _cmd_count(args, out)
        if args.command == "classes":
            return _cmd_classes(args, out)
        if args.command == "oracle":
            return _cmd_oracle(args, out, err)
        if args.command == "sqrt":
            return _cmd_sqrt(args, out, err)
        if args.command == "ratios":
            return _cmd_ratios(args, out)
    except IntegrityError as exc:
        err.write(f"integrity failure: {exc}\n")
        return EXIT_INTEGRITY
    parser.error(f"unknown command {args.command}")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
