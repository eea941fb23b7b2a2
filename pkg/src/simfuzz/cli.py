"""Command-line interface.

Exit codes: 0 success (audit pass, all claims match); 1 parse or validation
error; 2 usage error; 3 audit failure, claim mismatch or failed cross-check.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import audit as audit_mod
from .engine import ModificationType, fmp_infer, fmt_infer
from .errors import SimFuzzError
from .fuzzy import similarity
from .numeric import format_rational
from .oracle import (cross_check, fmp_expression, fmt_expressions, oracle_pointwise,
                     oracle_similarity)
from .textio import Document, emit_csv, format_pwl, parse_claims, parse_document, parse_observations

EXIT_OK, EXIT_ERROR, EXIT_USAGE, EXIT_FAIL = 0, 1, 2, 3
CHECK_SAMPLES = 10001
SM_TOL = 1e-3  # trapezoidal error budget at CHECK_SAMPLES


def resolve(path: str) -> Path:
    """A path on disk, or else a bundled data file of that name."""
    p = Path(path)
    if p.exists():
        return p
    bundled = resources.files("simfuzz") / "data" / p.name
    if bundled.is_file():
        return Path(str(bundled))
    raise FileNotFoundError(f"no such file: {path}")


def _read(path: str) -> tuple[str, str]:
    p = resolve(path)
    return p.read_text(encoding="utf-8"), str(path)


def _load(path: str) -> Document:
    text, name = _read(path)
    return parse_document(text, name)


def _print_trace(trace, names: list[str], out) -> None:
    for rt in trace.rules:
        if trace.kind == "fmp":
            sims = ", ".join(format_rational(s) for s in rt.similarities)
            print(f"rule {rt.rule}: similarities {sims}", file=out)
            for k, term in enumerate(rt.terms, start=1):
                print(f"  term {k}: {format_pwl(term, names[0])}", file=out)
            print(f"  result: {format_pwl(rt.result, names[0])}", file=out)
        else:
            print(f"rule {rt.rule}: similarity {format_rational(rt.similarity)}", file=out)
            for var, term in zip(names, rt.terms):
                print(f"  {var}: {format_pwl(term, var)}", file=out)


def cmd_sm(args, out) -> int:
    doc = _load(args.rules)
    try:
        a, b = doc.sets[args.set1], doc.sets[args.set2]
    except KeyError as exc:
        raise SimFuzzError(f"unknown set {exc.args[0]!r}") from None
    print(format_rational(similarity(a, b)), file=out)
    return EXIT_OK


def cmd_fmp(args, out) -> int:
    doc = _load(args.rules)
    rb = doc.rulebase
    text, name = _read(args.obs)
    obs = parse_observations(text, rb, name)
    if not isinstance(obs, tuple):
        raise SimFuzzError("fmp needs one observation per input variable")
    aggregate, trace = fmp_infer(rb, obs, args.type)
    if args.trace:
        _print_trace(trace, [rb.output.name], out)
    print(format_pwl(aggregate, rb.output.name), file=out)
    if args.csv is not None:
        out.write(emit_csv(aggregate, args.csv, args.precision))
    if args.check is not None:
        ok = True
        for rt, rule in zip(trace.rules, rb.rules):
            for k, (s, a, o) in enumerate(zip(rt.similarities, rule.antecedents, obs), start=1):
                res = cross_check(s, oracle_similarity(a, o, CHECK_SAMPLES), args.sm_tol)
                ok &= res.passed
                print(f"check similarity {rule.name}[{k}]: {res}", file=out)
        sampled = oracle_pointwise(fmp_expression(rb, obs, args.type), CHECK_SAMPLES)
        res = cross_check(aggregate, sampled, args.check)
        ok &= res.passed
        print(f"check aggregate: {res}", file=out)
        if not ok:
            return EXIT_FAIL
    return EXIT_OK


def cmd_fmt(args, out) -> int:
    doc = _load(args.rules)
    rb = doc.rulebase
    text, name = _read(args.bstar)
    bstar = parse_observations(text, rb, name)
    if isinstance(bstar, tuple):
        raise SimFuzzError("fmt needs exactly one set on the output variable")
    results, trace = fmt_infer(rb, bstar, args.type)
    names = [u.name for u in rb.inputs]
    if args.trace:
        _print_trace(trace, names, out)
    for var, f in zip(names, results):
        print(format_pwl(f, var), file=out)
        if args.csv is not None:
            out.write(emit_csv(f, args.csv, args.precision))
    if args.check is not None:
        ok = True
        for var, f, expr in zip(names, results, fmt_expressions(rb, bstar, args.type)):
            res = cross_check(f, oracle_pointwise(expr, CHECK_SAMPLES), args.check)
            ok &= res.passed
            print(f"check {var}: {res}", file=out)
        if not ok:
            return EXIT_FAIL
    return EXIT_OK


def cmd_audit(args, out) -> int:
    rb = _load(args.rules).rulebase
    run = audit_mod.audit_fmp if args.mode == "fmp" else audit_mod.audit_fmt
    report = run(rb, args.type)
    out.write(audit_mod.render_report(report, color=audit_mod._use_color(out)))
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_verify(args, out) -> int:
    doc = _load(args.rules)
    text, name = _read(args.claims)
    scope = parse_claims(text, doc, name)
    claims = [*doc.claims, *scope.claims]
    report = audit_mod.verify_claims(claims, doc.rulebase, scope.observations, scope.bstar_set)
    out.write(audit_mod.render_report(report, color=audit_mod._use_color(out)))
    return EXIT_OK if report.ok else EXIT_FAIL


def _type(value: str) -> ModificationType:
    try:
        return ModificationType.parse(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rows(value: str) -> int:
    n = int(value)
    if n < 2:
        raise argparse.ArgumentTypeError("CSV needs at least 2 rows")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simfuzz", description="Exact similarity-based fuzzy inference and auditing.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sm", help="similarity of two sets")
    p.add_argument("rules")
    p.add_argument("set1")
    p.add_argument("set2")
    p.set_defaults(func=cmd_sm)

    for name, arg, func in (("fmp", "obs", cmd_fmp), ("fmt", "bstar", cmd_fmt)):
        p = sub.add_parser(name, help=f"run {name.upper()} inference")
        p.add_argument("rules")
        p.add_argument(arg)
        p.add_argument("--type", type=_type, required=True, help="modification type, 1 or 2")
        p.add_argument("--trace", action="store_true", help="print per-rule intermediates")
        p.add_argument("--csv", type=_rows, metavar="N", help="also emit N CSV rows per result")
        p.add_argument("--precision", type=int, default=6, help="CSV decimal digits")
        p.add_argument("--check", type=float, metavar="TOL",
                       help="cross-check results pointwise against the sampled float oracle")
        if name == "fmp":
            p.add_argument("--sm-tol", type=float, default=SM_TOL,
                           help="tolerance for similarity cross-checks (default %(default)g)")
        p.set_defaults(func=func)

    p = sub.add_parser("audit", help="check the reductive property")
    p.add_argument("rules")
    p.add_argument("--mode", choices=("fmp", "fmt"), required=True)
    p.add_argument("--type", type=_type, required=True)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("verify", help="compare claimed results with the engine")
    p.add_argument("rules")
    p.add_argument("claims")
    p.set_defaults(func=cmd_verify)
    return parser


def run_command(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (SimFuzzError, OSError) as exc:
        print(f"simfuzz: error: {exc}", file=err)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run_command())
