"""Command-line interface.

Exit codes: 0 success or certified, 1 suite failure or uncertified witness,
2 usage or domain error, 3 term limit exceeded. CSV goes to stdout,
diagnostics to stderr. The term limit can be raised or lowered with the
``EXPREAL_TERM_LIMIT`` environment variable.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys
from typing import Optional, Sequence

from . import analysis
from .cauchy import make_dithered_oracle, make_rational_oracle
from .construction import DEFAULT_TERM_LIMIT, EvalReport, eval_f_oracle, eval_f_rational
from .errors import DomainError, ResourceLimitError
from .exact import check_unit_interval, dyadic_to_decimal, format_rational, parse_rational

TERM_LIMIT_ENV = "EXPREAL_TERM_LIMIT"

BENCH_FIELDS = ("n", "x", "mode", "wall_time_ns", "terms_summed", "max_oracle_precision", "result")
WITNESS_FIELDS = ("x", "delta", "q", "jump_lower_bound", "measured_jump", "certified")
MODULUS_FIELDS = (
    "m",
    "omega_upper",
    "omega_lower",
    "witness_n",
    "jump_achieved",
    "jump_paper_form",
    "jump_guaranteed",
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


def term_limit_from_env() -> int:
    raw = os.environ.get(TERM_LIMIT_ENV)
    if not raw:
        return DEFAULT_TERM_LIMIT
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"{TERM_LIMIT_ENV} must be an integer, got {raw!r}") from None


def decimal_digits(n: int) -> int:
    return math.ceil(n * math.log10(2)) + 1


def _evaluate(x, n, mode, seed, workers) -> EvalReport:
    limit = term_limit_from_env()
    if mode == "rational":
        return eval_f_rational(x, n, term_limit=limit, workers=workers)
    phi = make_rational_oracle(x) if seed is None else make_dithered_oracle(x, seed)
    return eval_f_oracle(phi, n, term_limit=limit, workers=workers)


def _parse_x(text: str):
    x = parse_rational(text)
    check_unit_interval(x)
    return x


def cmd_eval(args) -> int:
    x = _parse_x(args.x)
    rep = _evaluate(x, args.n, args.mode, args.seed, args.workers)
    tag = f"(±2^-{args.n})"
    print(f"result: {rep.result} {tag}")
    print(f"decimal: {dyadic_to_decimal(rep.result, decimal_digits(args.n))} {tag}")
    print(f"x: {format_rational(x)}")
    print(f"mode: {args.mode}")
    print(f"precision_n: {rep.precision_n}")
    print(f"terms_summed: {rep.terms_summed}")
    print(f"max_oracle_precision: {rep.max_oracle_precision}")
    print(f"wall_time_ns: {rep.wall_time_ns}")
    return EXIT_OK


def cmd_witness(args) -> int:
    if args.x is None:
        w = analysis.make_witness(args.n)
    else:
        w = analysis.make_witness_at(parse_rational(args.x), args.n)
    cert = analysis.certify_witness(w, term_limit_from_env())
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(WITNESS_FIELDS)
    out.writerow(
        [
            format_rational(w.x),
            format_rational(w.delta),
            w.q,
            format_rational(w.jump_lower_bound),
            str(cert.measured_jump),
            str(cert.certified).lower(),
        ]
    )
    return EXIT_OK if cert.certified else EXIT_FAIL


def cmd_bench(args) -> int:
    if args.n_min > args.n_max:
        raise DomainError("--n-min must not exceed --n-max")
    x = _parse_x(args.x)
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(BENCH_FIELDS)
    best = {}
    for n in range(args.n_min, args.n_max + 1):
        for _ in range(args.repeats):
            rep = _evaluate(x, n, args.mode, args.seed, args.workers)
            row = [n, format_rational(x), args.mode, rep.wall_time_ns, rep.terms_summed,
                   rep.max_oracle_precision, str(rep.result)]
            out.writerow(row)
            if n not in best or rep.wall_time_ns < best[n][3]:
                best[n] = row
        sys.stdout.flush()
    err = csv.writer(sys.stderr, lineterminator="\n")
    sys.stderr.write("# minimum over repeats\n")
    err.writerow(BENCH_FIELDS)
    for n in sorted(best):
        err.writerow(best[n])
    for n in sorted(best):
        if n - 1 in best:
            ratio = best[n][3] / max(best[n - 1][3], 1)
            sys.stderr.write(f"# time({n})/time({n - 1}) = {ratio:.2f}\n")
    return EXIT_OK


def cmd_check(args) -> int:
    report = analysis.run_suite(args.suite, args.seed)
    print(report.summary())
    for note in report.notes:
        print(f"  {note}")
    for failure in report.failures[:20]:
        print(f"  failure: {failure}")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_modulus(args) -> int:
    rows = analysis.modulus_lower_table(args.n_max, term_limit_from_env())
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(MODULUS_FIELDS)
    for r in rows:
        out.writerow([r.m, r.omega_upper, r.omega_lower, r.witness_n,
                      format_rational(r.jump_achieved), format_rational(r.jump_paper_form),
                      format_rational(r.jump_guaranteed)])
    return EXIT_OK


def _natural(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="expreal",
        description="Exact evaluation and modulus certification for an exponential-time real function.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_eval_options(p):
        p.add_argument("--mode", choices=("rational", "oracle"), default="rational")
        p.add_argument("--seed", type=int, default=None,
                       help="oracle mode: use a dithered oracle with this seed")
        p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("eval", help="evaluate F(x) to within 2^-n")
    p.add_argument("--x", required=True, help="exact fraction p/q in [0, 1]")
    p.add_argument("--n", type=_natural, required=True)
    add_eval_options(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("witness", help="certify a modulus lower-bound witness")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", default=None, help="place the witness at this rational point")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("bench", help="time evaluations over a range of precisions")
    p.add_argument("--x", required=True)
    p.add_argument("--n-min", type=_natural, required=True)
    p.add_argument("--n-max", type=_natural, required=True)
    p.add_argument("--repeats", type=int, default=3)
    add_eval_options(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("check", help="run an invariant suite")
    p.add_argument("--suite", required=True, choices=analysis.SUITES)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("modulus", help="print the modulus lower/upper bound table")
    p.add_argument("--n-max", type=int, default=10)
    p.set_defaults(func=cmd_modulus)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
