"""Command-line front end: ``pelldilog {pell,cf,dilog,verify,suite}``.

Exit codes are 0 (pass), 1 (identity failure), 2 (usage or domain error)
and 3 (tail bound or precision budget exhausted).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .contfrac import convergents, expand_rational, expand_surd
from .dilog import li2, rogers
from .errors import DomainError
from .numerics import PrecisionContext, parse_surd
from .pell import fundamental_solution, unit_powers
from .verify import (
    EXHAUSTED,
    IDENTITY_IDS,
    INVALID,
    PASS,
    ConfigError,
    IdentityJob,
    VerificationReport,
    default_suite,
    load_suite,
    reports_to_csv,
    reports_to_json,
    run_job,
    run_suite,
)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_EXHAUSTED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--prec-bits", type=int, default=256, metavar="N", help="target precision in bits (>= 64)")
    p.add_argument("--tol", default="1e-30", metavar="DEC", help="verification tolerance")
    p.add_argument("--max-terms", type=int, default=100_000, metavar="N")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--output", metavar="PATH", help="write here instead of standard output")
    p.add_argument("--timings", action="store_true", help="include elapsed_ms in reports")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pelldilog", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pell", help="fundamental solution of a^2 - n b^2 = +-1")
    p.add_argument("n", type=int)
    p.add_argument("--positive-only", action="store_true")
    p.add_argument("--powers", type=int, default=0, metavar="K", help="also list u^1 .. u^K")
    _common(p)

    p = sub.add_parser("cf", help="continued fraction of a surd '(p + q*sqrt(d))/r' or a rational")
    p.add_argument("value")
    p.add_argument("--count", type=int, default=8, metavar="N", help="number of convergents")
    _common(p)

    p = sub.add_parser("dilog", help="Li2 or Rogers L at a real point in [-1, 1]")
    p.add_argument("z")
    p.add_argument("--kind", choices=("li2", "rogers"), default="rogers")
    _common(p)

    p = sub.add_parser("verify", help="verify one identity")
    p.add_argument("identity_id", choices=IDENTITY_IDS)
    for flag in ("--n", "--L", "--unit", "--x", "--a", "--b", "--sides"):
        p.add_argument(flag, dest=flag.lstrip("-"), default=None)
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    _common(p)

    p = sub.add_parser("suite", help="run a suite file (TOML or JSON); the shipped suite by default")
    p.add_argument("config", nargs="?")
    p.add_argument("--workers", type=int, default=1)
    _common(p)
    return parser


def _context(args) -> PrecisionContext:
    try:
        return PrecisionContext(args.prec_bits)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc


def _emit(text: str, args) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_pell(args) -> int:
    sol = fundamental_solution(args.n, allow_negative=not args.positive_only)
    powers = []
    if args.powers:
        for p in unit_powers(sol):
            if p.k > args.powers:
                break
            powers.append(p)
    rows = [(p.k, str(p.a_k), str(p.b_k)) for p in powers]
    if args.format == "json":
        out = json.dumps(
            {"n": sol.n, "a": str(sol.a), "b": str(sol.b), "sign": sol.sign, "unit": str(sol),
             "powers": [dict(zip(("k", "a_k", "b_k"), r)) for r in rows]},
            indent=2,
        ) + "\n"
    elif args.format == "csv":
        out = _csv(("k", "a_k", "b_k"), [(1, str(sol.a), str(sol.b))] if not rows else rows)
    else:
        lines = [str(sol), f"a = {sol.a}", f"b = {sol.b}", f"sign = {sol.sign:+d}"]
        lines += [f"u^{k} = {a} + {b}√{sol.n}" for k, a, b in rows]
        out = "\n".join(lines) + "\n"
    _emit(out, args)
    return EXIT_PASS


def cmd_cf(args) -> int:
    if args.count < 1:
        raise UsageError("--count must be >= 1")
    text = args.value
    if "sqrt" in text:
        cf = expand_surd(parse_surd(text))
    else:
        try:
            cf = expand_rational(Fraction(text))
        except ValueError as exc:
            raise UsageError(f"cannot parse {text!r}") from exc
    count = args.count if cf.is_periodic else min(args.count, len(cf.head))
    convs = convergents(cf, count)
    rows = [(c.index, c.h, c.k) for c in convs]
    if args.format == "json":
        out = json.dumps({"head": list(cf.head), "period": list(cf.period), "expansion": str(cf),
                          "convergents": [{"index": i, "h": str(h), "k": str(k)} for i, h, k in rows]},
                         indent=2) + "\n"
    elif args.format == "csv":
        out = _csv(("index", "h", "k"), rows)
    else:
        out = "\n".join([str(cf)] + [f"r_{i} = {h}/{k}" for i, h, k in rows]) + "\n"
    _emit(out, args)
    return EXIT_PASS


def cmd_dilog(args) -> int:
    ctx = _context(args)
    d = (li2 if args.kind == "li2" else rogers)(args.z, ctx)
    value, bound = ctx.to_decimal(d.value), ctx.mp.nstr(d.abs_error_bound, 6)
    if args.format == "json":
        out = json.dumps({"kind": args.kind, "z": args.z, "prec_bits": args.prec_bits,
                          "value": value, "abs_error_bound": bound}, indent=2) + "\n"
    elif args.format == "csv":
        out = _csv(("kind", "z", "prec_bits", "value", "abs_error_bound"),
                   [(args.kind, args.z, args.prec_bits, value, bound)])
    else:
        out = f"{args.kind}({args.z}) = {value}\nabs_error_bound = {bound}\n"
    _emit(out, args)
    return EXIT_PASS


def _render_reports(reports: Sequence[VerificationReport], args) -> str:
    if args.format == "json":
        return reports_to_json(reports, args.timings)
    if args.format == "csv":
        return reports_to_csv(reports, args.timings)
    lines = []
    for report in reports:
        for leaf in report.leaves():
            ctx = leaf.job.context
            head = f"{leaf.status.upper():9s} {leaf.job.identity_id}"
            if leaf.label != leaf.job.identity_id:
                head += f"/{leaf.label}"
            if leaf.residual is not None:
                head += (f"  residual={ctx.mp.nstr(leaf.residual, 6)}"
                         f"  gap={ctx.mp.nstr(leaf.certified_gap, 6)}  terms={leaf.terms_used}")
            if leaf.error:
                head += f"  error: {leaf.error}"
            if args.timings:
                head += f"  {leaf.elapsed * 1000:.1f} ms"
            lines.append(head)
    return "\n".join(lines) + "\n"


def _job(args, identity_id: str, params: dict) -> IdentityJob:
    try:
        return IdentityJob(identity_id, params, args.prec_bits, args.tol, args.max_terms)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_verify(args) -> int:
    _context(args)
    params = {}
    for key in ("n", "L", "unit", "x", "a", "b", "sides"):
        v = getattr(args, key)
        if v is not None:
            params[key] = v
    for item in args.param:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise UsageError(f"--param expects KEY=VALUE, got {item!r}")
        params[key.strip()] = value.strip()
    report = run_job(_job(args, args.identity_id, params))
    _emit(_render_reports([report], args), args)
    return {PASS: EXIT_PASS, EXHAUSTED: EXIT_EXHAUSTED, INVALID: EXIT_USAGE}.get(report.status, EXIT_FAIL)


def cmd_suite(args) -> int:
    try:
        jobs = load_suite(args.config) if args.config else default_suite()
    except ConfigError as exc:
        raise UsageError(str(exc)) from exc
    reports = run_suite(jobs, max_workers=args.workers)
    _emit(_render_reports(reports, args), args)
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL


COMMANDS = {"pell": cmd_pell, "cf": cmd_cf, "dilog": cmd_dilog, "verify": cmd_verify, "suite": cmd_suite}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        return COMMANDS[args.command](args)
    except (UsageError, DomainError, ValueError) as exc:
        print(f"pelldilog {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"pelldilog {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
