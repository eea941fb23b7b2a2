"""Reductivity audits and verification of published piecewise results.

The reductive property asks that feeding a rule's own antecedents into FMP
returns exactly that rule's consequent, and that feeding the complement of
a consequent into FMT returns exactly the complements of the rule's
antecedents.  Claims are piecewise-linear functions asserted for some
engine output; they are compared with what the engine computes and checked
against bounds that follow from the modification type alone.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import reduce
from typing import Callable, NamedTuple, Sequence

from .engine import (ModificationType, RuleBase, check_observations, fmp_infer,
                     fmt_infer, sub_result_fmp, sub_result_fmt)
from .errors import ValidationError
from .fuzzy import FuzzySet
from .numeric import Rational, format_rational as fr
from .pwl import (PiecewiseLinear, constant, difference_grid, pwl_complement,
                  pwl_max)

PASS, FAIL = "PASS", "FAIL"
MATCH, MISMATCH, VIOLATION = "MATCH", "MISMATCH", "VIOLATION"


class Witness(NamedTuple):
    x: Rational
    engine: Rational
    expected: Rational


class Interval(NamedTuple):
    """A maximal interval of disagreement; ends carry both functions' values."""

    lo: Rational
    hi: Rational
    lo_closed: bool
    hi_closed: bool
    engine_lo: Rational
    engine_hi: Rational
    expected_lo: Rational
    expected_hi: Rational

    def __str__(self) -> str:
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{fr(self.lo)}, {fr(self.hi)}{right}"


def _regions(f: PiecewiseLinear, g: PiecewiseLinear,
             bad: Callable[[Rational], bool]) -> list[Interval]:
    """Maximal intervals on which ``bad(f - g)`` holds.

    On each cell of the difference grid f - g is linear with constant sign,
    so a cell is bad in its interior iff either end is bad, for the sign
    predicates used here.  Adjacent bad cells merge only across bad points.
    """
    grid = difference_grid(f, g)
    d = [f(x) - g(x) for x in grid]
    out: list[Interval] = []
    start = None
    for i in range(len(grid) - 1):
        cell_bad = bad(d[i]) or bad(d[i + 1])
        if cell_bad and start is None:
            start = i
        if start is not None and (not bad(d[i + 1]) or i == len(grid) - 2):
            end = i + 1
            lo, hi = grid[start], grid[end]
            out.append(Interval(lo, hi, bad(d[start]), bad(d[end]),
                                f(lo), f(hi), g(lo), g(hi)))
            start = None
    return out


def mismatch_intervals(engine: PiecewiseLinear, expected: PiecewiseLinear) -> list[Interval]:
    return _regions(engine, expected, lambda v: v != 0)


def first_witness(engine: PiecewiseLinear, expected: PiecewiseLinear) -> Witness | None:
    """Smallest point of the merged breakpoint/crossing grid where the two differ."""
    for x in difference_grid(engine, expected):
        e, x_val = engine(x), expected(x)
        if e != x_val:
            return Witness(x, e, x_val)
    return None


@dataclass(frozen=True)
class RuleVerdict:
    rule: str
    var: str | None
    verdict: str
    engine: PiecewiseLinear
    expected: PiecewiseLinear
    witness: Witness | None

    @property
    def label(self) -> str:
        return self.rule if self.var is None else f"{self.rule}:{self.var}"


@dataclass(frozen=True)
class Target:
    kind: str  # fmp-aggregate | fmp-sub | fmt-aggregate | fmt-sub
    rule: str | None = None
    var: str | None = None

    KINDS = ("fmp-aggregate", "fmp-sub", "fmt-aggregate", "fmt-sub")

    def __post_init__(self) -> None:
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown claim target {self.kind!r}")
        needs_rule = self.kind.endswith("-sub")
        needs_var = self.kind.startswith("fmt")
        if needs_rule != (self.rule is not None) or needs_var != (self.var is not None):
            raise ValueError(f"malformed claim target {self}")

    @property
    def mode(self) -> str:
        return self.kind.split("-")[0]

    def __str__(self) -> str:
        args = [a for a in (self.rule, self.var) if a is not None]
        return self.kind + (f"({','.join(args)})" if args else "")


@dataclass(frozen=True)
class Claim:
    label: str
    target: Target
    modification: ModificationType
    claimed: PiecewiseLinear
    expect: str | None = None  # documented expected verdict, informational


class BoundFinding(NamedTuple):
    bound: str  # human-readable description of the violated bound
    intervals: tuple[Interval, ...]


@dataclass(frozen=True)
class ClaimVerdict:
    claim: Claim
    verdict: str
    engine: PiecewiseLinear
    intervals: tuple[Interval, ...]
    findings: tuple[BoundFinding, ...]
    witness: Witness | None

    @property
    def label(self) -> str:
        return self.claim.label


@dataclass(frozen=True)
class AuditReport:
    title: str
    rules: tuple[RuleVerdict, ...] = ()
    claims: tuple[ClaimVerdict, ...] = ()
    rule_summary: tuple[tuple[str, str], ...] = field(default=())
    output_var: str = "y"

    @property
    def ok(self) -> bool:
        return (all(v.verdict == PASS for v in self.rules)
                and all(c.verdict == MATCH for c in self.claims))


def audit_fmp(rb: RuleBase, t: ModificationType | str | int) -> AuditReport:
    """Feed each rule's antecedents as observations; expect its consequent back."""
    t = ModificationType.parse(t)
    verdicts = []
    for rule in rb.rules:
        aggregate, _ = fmp_infer(rb, rule.antecedents, t)
        expected = rule.consequent.membership
        w = first_witness(aggregate, expected)
        verdicts.append(RuleVerdict(rule.name, None, PASS if w is None else FAIL,
                                    aggregate, expected, w))
    summary = tuple((v.rule, v.verdict) for v in verdicts)
    return AuditReport(f"audit fmp {t}", tuple(verdicts), rule_summary=summary,
                       output_var=rb.output.name)


def audit_fmt(rb: RuleBase, t: ModificationType | str | int) -> AuditReport:
    """Feed the complement of each consequent; expect complemented antecedents back."""
    t = ModificationType.parse(t)
    verdicts = []
    summary = []
    for rule in rb.rules:
        bstar = FuzzySet(f"not-{rule.consequent.name}", rb.output,
                         pwl_complement(rule.consequent.membership))
        results, _ = fmt_infer(rb, bstar, t)
        rule_ok = True
        for k, u in enumerate(rb.inputs):
            expected = pwl_complement(rule.antecedents[k].membership)
            w = first_witness(results[k], expected)
            rule_ok &= w is None
            verdicts.append(RuleVerdict(rule.name, u.name, PASS if w is None else FAIL,
                                        results[k], expected, w))
        summary.append((rule.name, PASS if rule_ok else FAIL))
    return AuditReport(f"audit fmt {t}", tuple(verdicts), rule_summary=tuple(summary),
                       output_var=rb.output.name)


def _claim_universe_bounds(c: Claim, rb: RuleBase) -> list[tuple[str, PiecewiseLinear, str]]:
    """(description, reference function, direction) triples implied by the claim's target.

    ``direction`` is ``"le"`` when the claim must stay at or below the
    reference and ``"ge"`` when it must stay at or above it.
    """
    tgt, t = c.target, c.modification
    if tgt.kind == "fmp-sub":
        ref = rb.rule(tgt.rule).consequent
        refs = [(ref.name, ref.membership)]
    elif tgt.kind == "fmt-sub":
        ref = rb.rule(tgt.rule).antecedents[rb.input_index(tgt.var)]
        refs = [(ref.name, ref.membership)]
    elif tgt.kind == "fmp-aggregate":
        refs = [("max of consequents",
                 reduce(pwl_max, (r.consequent.membership for r in rb.rules)))]
    else:
        k = rb.input_index(tgt.var)
        refs = [(f"max of antecedents on {tgt.var}",
                 reduce(pwl_max, (r.antecedents[k].membership for r in rb.rules)))]
    name, fn = refs[0]
    what = "sub-result" if tgt.kind.endswith("sub") else "aggregate"
    if t is ModificationType.TYPE1:
        return [(f"{t} {what} <= {name}", fn, "le")]
    return [(f"{t} {what} >= {name}", fn, "ge"),
            (f"{t} {what} <= 1", constant(fn.domain, 1), "le")]


def bound_check_claim(c: Claim, rb: RuleBase) -> list[BoundFinding]:
    """Bound violations provable from the modification type, without inference.

    Type 1 only scales down, so its results never exceed the set being
    modified; type 2 only stretches and clips, so its results lie between
    that set and 1.  Aggregates inherit the bounds through the union.
    """
    findings = []
    for desc, ref, direction in _claim_universe_bounds(c, rb):
        if direction == "le":
            bad = _regions(c.claimed, ref, lambda v: v > 0)
        else:
            bad = _regions(c.claimed, ref, lambda v: v < 0)
        if bad:
            findings.append(BoundFinding(desc, tuple(bad)))
    return findings


def engine_value(target: Target, t: ModificationType, rb: RuleBase,
                 obs: Sequence[FuzzySet] | None = None,
                 bstar: FuzzySet | None = None) -> PiecewiseLinear:
    """Compute the engine's function for a claim target."""
    if target.mode == "fmp":
        if obs is None:
            raise ValidationError(f"FMP claim target {target} needs observations")
        obs = check_observations(rb, obs)
        if target.kind == "fmp-sub":
            return sub_result_fmp(rb.rule(target.rule), obs, t)
        return fmp_infer(rb, obs, t)[0]
    if bstar is None:
        raise ValidationError(f"FMT claim target {target} needs an observed output set")
    k = rb.input_index(target.var)
    if target.kind == "fmt-sub":
        return sub_result_fmt(rb.rule(target.rule), bstar, k, t)
    return fmt_infer(rb, bstar, t)[0][k]


def compare_claim(c: Claim, rb: RuleBase, obs: Sequence[FuzzySet] | None = None,
                  bstar: FuzzySet | None = None) -> ClaimVerdict:
    engine = engine_value(c.target, c.modification, rb, obs, bstar)
    intervals = tuple(mismatch_intervals(engine, c.claimed))
    findings = tuple(bound_check_claim(c, rb))
    if findings:
        verdict = VIOLATION
    elif intervals:
        verdict = MISMATCH
    else:
        verdict = MATCH
    return ClaimVerdict(c, verdict, engine, intervals, findings,
                        first_witness(engine, c.claimed))


def verify_claims(claims: Sequence[Claim], rb: RuleBase,
                  obs: Sequence[FuzzySet] | None = None,
                  bstar: FuzzySet | None = None) -> AuditReport:
    return AuditReport("verify", claims=tuple(compare_claim(c, rb, obs, bstar) for c in claims),
                       output_var=rb.output.name)


# Rendering ------------------------------------------------------------------

def _use_color(stream) -> bool:
    return "NO_COLOR" not in os.environ and hasattr(stream, "isatty") and stream.isatty()


_COLORS = {PASS: "32", MATCH: "32", FAIL: "31", MISMATCH: "31", VIOLATION: "33"}


def _paint(word: str, color: bool) -> str:
    return f"\x1b[{_COLORS[word]}m{word}\x1b[0m" if color and word in _COLORS else word


def summary_line(label: str, verdict: str, witness: Witness | None) -> str:
    line = f"verdict {label} {verdict}"
    if witness is not None and verdict not in (PASS, MATCH):
        line += (f" witness x={fr(witness.x)} engine={fr(witness.engine)}"
                 f" expected={fr(witness.expected)}")
    return line


def render_report(report: AuditReport, color: bool = False) -> str:
    """Structured blocks followed by one machine-readable verdict line each."""
    from .textio import format_pwl

    lines = [f"== {report.title} =="]
    summaries = []
    for v in report.rules:
        var = v.var or report.output_var
        lines.append(f"rule {v.label}: {_paint(v.verdict, color)}")
        lines.append(f"  engine:   {format_pwl(v.engine, var)}")
        lines.append(f"  expected: {format_pwl(v.expected, var)}")
        if v.witness:
            w = v.witness
            lines.append(f"  witness:  {var} = {fr(w.x)}: engine {fr(w.engine)}, "
                         f"expected {fr(w.expected)}")
        summaries.append(summary_line(v.label, v.verdict, v.witness))
    if report.rule_summary and any(v.var for v in report.rules):
        for name, verdict in report.rule_summary:
            first = next((v.witness for v in report.rules
                          if v.rule == name and v.witness is not None), None)
            summaries.append(summary_line(name, verdict, first))
    for cv in report.claims:
        c = cv.claim
        var = c.target.var or report.output_var
        lines.append(f"claim {c.label} [{c.target} {c.modification}]: {_paint(cv.verdict, color)}")
        lines.append(f"  claimed:  {format_pwl(c.claimed, var)}")
        lines.append(f"  engine:   {format_pwl(cv.engine, var)}")
        for iv in cv.intervals:
            lines.append(
                f"  differs on {var} in {iv}: at {fr(iv.lo)} engine {fr(iv.engine_lo)} "
                f"vs claimed {fr(iv.expected_lo)}; at {fr(iv.hi)} engine {fr(iv.engine_hi)} "
                f"vs claimed {fr(iv.expected_hi)}")
        for finding in cv.findings:
            spans = ", ".join(str(iv) for iv in finding.intervals)
            lines.append(f"  violates {finding.bound} on {spans}")
        if c.expect is not None and c.expect != cv.verdict:
            lines.append(f"  note: fixture documents {c.expect}")
        summaries.append(summary_line(c.label, cv.verdict, cv.witness))
    return "\n".join(lines + [""] + summaries) + "\n"
