"""Line-oriented text format for rule bases, observations and claims.

A rule-base document looks like::

    # comment
    universe x1 = 0 .. 3
    universe y = 0 .. 1
    output y
    set A11 on x1 : (0, 1) (3, 0)
    set B1 on y : (0, 1) (1, 0)
    rule R1 : A11 -> B1
    observe A1star            # FMP input used by claims
    bstar Bstar               # FMT input used by claims
    claim t1-sub-R1 target=fmp-sub(R1) type=1 expect=MATCH : (0, 3/4) (1, 0)

Input universes are the declared universes other than the output, in
declaration order.  Numbers are integers, ``p/q`` or finite decimals and are
always read exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .audit import MATCH, MISMATCH, VIOLATION, Claim, Target
from .engine import ModificationType, Rule, RuleBase
from .errors import (ArithmeticDomainError, ParseError, PiecewiseError, RationalSyntaxError,
                     ValidationError)
from .fuzzy import FuzzySet, Universe, validate_set
from .numeric import Rational, format_rational, parse_rational
from .pwl import PiecewiseLinear, pwl_make

_NAME = r"[A-Za-z_][A-Za-z0-9_*']*"
_NAME_RE = re.compile(rf"{_NAME}$")
_NUM = r"[+-]?(?:\d+(?:\s*/\s*\d+)?(?:\.\d*)?|\.\d+)"
_POINT_RE = re.compile(rf"\(\s*(?P<x>{_NUM})\s*,\s*(?P<v>{_NUM})\s*\)")
_UNIVERSE_RE = re.compile(
    rf"universe\s+(?P<name>\S+)\s*=\s*(?P<lo>{_NUM})\s*\.\.\s*(?P<hi>{_NUM})\s*$")
_SET_RE = re.compile(r"set\s+(?P<name>\S+)\s+on\s+(?P<var>\S+)\s*:(?P<points>.*)$")
_RULE_RE = re.compile(r"rule\s+(?P<name>\S+)\s*:(?P<lhs>.*?)->(?P<rhs>.*)$")
_CLAIM_RE = re.compile(r"claim\s+(?P<label>\S+)(?P<attrs>(?:\s+\w+=\S+)*)\s*:(?P<points>.*)$")
_TARGET_RE = re.compile(r"(?P<kind>[a-z-]+)(?:\((?P<args>[^)]*)\))?$")
_PWL_RE = re.compile(
    rf"\s*pwl\s+on\s+(?P<var>{_NAME})\s*"
    rf"\[\s*(?P<lo>{_NUM})\s*,\s*(?P<hi>{_NUM})\s*\]\s*:(?P<points>.*)$")

KEYWORDS = ("universe", "output", "set", "rule", "observe", "bstar", "claim")


@dataclass
class Document:
    """Everything a rule-base (or claims) file defines, in declaration order."""

    universes: dict[str, Universe] = field(default_factory=dict)
    output: str | None = None
    sets: dict[str, FuzzySet] = field(default_factory=dict)
    rule_defs: list[tuple[str, list[str], str, int]] = field(default_factory=list)
    observe: list[str] | None = None
    bstar: str | None = None
    claims: list[Claim] = field(default_factory=list)
    rulebase: RuleBase | None = None

    @property
    def observations(self) -> tuple[FuzzySet, ...] | None:
        return None if self.observe is None else tuple(self.sets[n] for n in self.observe)

    @property
    def bstar_set(self) -> FuzzySet | None:
        return None if self.bstar is None else self.sets[self.bstar]


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


class _Parser:
    def __init__(self, doc: Document, source: str | None, allowed: Sequence[str]):
        self.doc = doc
        self.source = source
        self.allowed = allowed
        self.lineno = 0
        self.line = ""

    def error(self, message: str, column: int = 1, kind: str = "syntax",
              expected: str | None = None) -> ParseError:
        return ParseError(message, self.lineno, column, kind, expected, self.source)

    def col(self, fragment: str) -> int:
        i = self.line.find(fragment)
        return i + 1 if i >= 0 else 1

    def name(self, text: str, what: str) -> str:
        text = text.strip()
        if not _NAME_RE.match(text):
            raise self.error(f"invalid {what} name {text!r}", self.col(text), expected="identifier")
        return text

    def points(self, text: str) -> list[tuple[Rational, Rational]]:
        out = []
        pos = 0
        base = self.line.find(text) if text else 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                break
            m = _POINT_RE.match(text, pos)
            if m is None:
                raise self.error(f"bad breakpoint near {text[pos:pos + 12]!r}",
                                 base + pos + 1, expected="(x, v)")
            try:
                out.append((self.number(m.group("x")), self.number(m.group("v"))))
            except (RationalSyntaxError, ArithmeticDomainError) as exc:
                raise self.error(str(exc), base + pos + 1, expected="rational") from None
            pos = m.end()
        if not out:
            raise self.error("no breakpoints given", len(self.line) + 1, expected="(x, v)")
        return out

    @staticmethod
    def number(text: str) -> Rational:
        return parse_rational(re.sub(r"\s+", "", text))

    def universe_of(self, var: str) -> Universe:
        try:
            return self.doc.universes[var]
        except KeyError:
            raise self.error(f"unknown universe {var!r}", self.col(var), "semantic") from None

    def set_ref(self, name: str) -> FuzzySet:
        name = name.strip()
        try:
            return self.doc.sets[name]
        except KeyError:
            raise self.error(f"unknown set {name!r}", self.col(name), "semantic") from None

    def function(self, universe: Universe, text: str) -> PiecewiseLinear:
        pts = self.points(text)
        try:
            return pwl_make(universe.interval, pts)
        except PiecewiseError as exc:
            raise self.error(f"{exc} on universe {universe.name}", self.col(text.strip()),
                             "semantic") from None

    # line handlers -------------------------------------------------------

    def do_universe(self, body: str) -> None:
        m = _UNIVERSE_RE.match(body)
        if m is None:
            raise self.error("malformed universe declaration", expected="universe NAME = A .. B")
        name = self.name(m.group("name"), "universe")
        if name in self.doc.universes:
            raise self.error(f"duplicate universe {name!r}", self.col(name), "semantic")
        try:
            u = Universe(name, self.number(m.group("lo")), self.number(m.group("hi")))
        except ArithmeticDomainError as exc:
            raise self.error(str(exc), self.col(m.group("lo")), expected="rational") from None
        except ValidationError as exc:
            raise self.error(str(exc), self.col(m.group("lo")), "semantic") from None
        self.doc.universes[name] = u

    def do_output(self, body: str) -> None:
        parts = body.split()
        if len(parts) != 2:
            raise self.error("malformed output declaration", expected="output NAME")
        if self.doc.output is not None:
            raise self.error("duplicate output declaration", kind="semantic")
        self.universe_of(parts[1])
        self.doc.output = parts[1]

    def do_set(self, body: str) -> None:
        m = _SET_RE.match(body)
        if m is None:
            raise self.error("malformed set definition", expected="set NAME on VAR : (x, v) ...")
        name = self.name(m.group("name"), "set")
        if name in self.doc.sets:
            raise self.error(f"duplicate set {name!r}", self.col(name), "semantic")
        u = self.universe_of(m.group("var"))
        s = FuzzySet(name, u, self.function(u, m.group("points")))
        problems = validate_set(s)
        if problems:
            raise self.error(f"{problems[0].kind}: {problems[0].message}",
                             self.col(m.group("points").strip()), "semantic")
        self.doc.sets[name] = s

    def do_rule(self, body: str) -> None:
        m = _RULE_RE.match(body)
        if m is None:
            raise self.error("malformed rule", expected="rule NAME : S1, S2 -> S")
        name = self.name(m.group("name"), "rule")
        if any(r[0] == name for r in self.doc.rule_defs):
            raise self.error(f"duplicate rule {name!r}", self.col(name), "semantic")
        lhs = [p.strip() for p in m.group("lhs").split(",")]
        for p in lhs:
            self.set_ref(p)
        self.set_ref(m.group("rhs"))
        self.doc.rule_defs.append((name, lhs, m.group("rhs").strip(), self.lineno))

    def do_observe(self, body: str) -> None:
        names = [p.strip() for p in body[len("observe"):].split(",")]
        if not all(names):
            raise self.error("malformed observe line", expected="observe S1, S2, ...")
        for n in names:
            self.set_ref(n)
        self.doc.observe = names

    def do_bstar(self, body: str) -> None:
        parts = body.split()
        if len(parts) != 2:
            raise self.error("malformed bstar line", expected="bstar NAME")
        self.set_ref(parts[1])
        self.doc.bstar = parts[1]

    def do_claim(self, body: str) -> None:
        m = _CLAIM_RE.match(body)
        if m is None:
            raise self.error("malformed claim",
                             expected="claim LABEL target=... type=... : (x, v) ...")
        attrs = dict(a.split("=", 1) for a in m.group("attrs").split())
        unknown = set(attrs) - {"target", "type", "expect"}
        if unknown:
            bad = sorted(unknown)[0]
            raise self.error(f"unknown claim attribute {bad!r}", self.col(bad + "="))
        if "target" not in attrs or "type" not in attrs:
            raise self.error("claim needs target= and type=", expected="target=... type=...")
        expect = attrs.get("expect")
        if expect is not None and expect not in (MATCH, MISMATCH, VIOLATION):
            raise self.error(f"unknown expected verdict {expect!r}", self.col("expect="),
                             expected=f"{MATCH}, {MISMATCH} or {VIOLATION}")
        target = self.target(attrs["target"])
        try:
            t = ModificationType.parse(attrs["type"])
        except ValueError as exc:
            raise self.error(str(exc), self.col("type=")) from None
        var = target.var or self.doc.output
        if var is None:
            raise self.error("claim on an output target before the output declaration",
                             kind="semantic")
        claimed = self.function(self.universe_of(var), m.group("points"))
        self.doc.claims.append(Claim(m.group("label"), target, t, claimed, expect))

    def target(self, text: str) -> Target:
        m = _TARGET_RE.match(text)
        if m is None:
            raise self.error(f"malformed target {text!r}", self.col(text))
        args = [a.strip() for a in (m.group("args") or "").split(",") if a.strip()]
        kind = m.group("kind")
        rule = var = None
        if kind == "fmp-sub" and len(args) == 1:
            rule = args[0]
        elif kind == "fmt-sub" and len(args) == 2:
            rule, var = args
        elif kind == "fmt-aggregate" and len(args) == 1:
            var = args[0]
        elif not (kind == "fmp-aggregate" and not args):
            raise self.error(f"malformed target {text!r}", self.col(text),
                             expected="fmp-aggregate, fmp-sub(R), fmt-aggregate(V) or fmt-sub(R,V)")
        if rule is not None and not any(r[0] == rule for r in self.doc.rule_defs):
            raise self.error(f"unknown rule {rule!r}", self.col(text), "semantic")
        if var is not None:
            self.universe_of(var)
            if var == self.doc.output:
                raise self.error(f"{var} is the output variable", self.col(text), "semantic")
        return Target(kind, rule, var)

    def feed(self, text: str) -> None:
        for self.lineno, raw in enumerate(text.splitlines(), start=1):
            self.line = raw
            body = _strip_comment(raw).strip()
            if not body:
                continue
            keyword = body.split(None, 1)[0]
            if keyword not in KEYWORDS:
                raise self.error(f"unknown statement {keyword!r}", self.col(keyword),
                                 expected=" | ".join(KEYWORDS))
            if keyword not in self.allowed:
                raise self.error(f"{keyword!r} is not allowed here", self.col(keyword))
            getattr(self, f"do_{keyword}")(body)


def _build_rulebase(doc: Document, source: str | None) -> RuleBase:
    if doc.output is None:
        raise ParseError("missing output declaration", 1, 1, "semantic", "output NAME", source)
    out = doc.universes[doc.output]
    inputs = tuple(u for n, u in doc.universes.items() if n != doc.output)
    if not doc.rule_defs:
        raise ParseError("rule base has no rules", 1, 1, "semantic", "rule NAME : ... -> ...",
                         source)
    rules = []
    for name, lhs, rhs, lineno in doc.rule_defs:
        ants = tuple(doc.sets[n] for n in lhs)
        cons = doc.sets[rhs]
        if len(ants) != len(inputs):
            raise ParseError(f"rule {name} has {len(ants)} antecedents for {len(inputs)} inputs",
                             lineno, 1, "semantic", source=source)
        for k, (a, u) in enumerate(zip(ants, inputs)):
            if a.universe != u:
                raise ParseError(f"rule {name}: antecedent {a.name} is on {a.universe.name}, "
                                 f"position {k + 1} expects {u.name}", lineno, 1, "semantic",
                                 source=source)
        if cons.universe != out:
            raise ParseError(f"rule {name}: consequent {cons.name} is not on output {out.name}",
                             lineno, 1, "semantic", source=source)
        rules.append(Rule(name, ants, cons))
    return RuleBase(inputs, out, tuple(rules), dict(doc.sets))


def parse_document(text: str, source: str | None = None) -> Document:
    """Parse a rule-base document, validating it into ``doc.rulebase``."""
    doc = Document()
    _Parser(doc, source, KEYWORDS).feed(text)
    doc.rulebase = _build_rulebase(doc, source)
    _check_inputs(doc, source)
    return doc


def parse_rulebase(text: str, source: str | None = None) -> tuple[RuleBase, list[Claim]]:
    doc = parse_document(text, source)
    return doc.rulebase, list(doc.claims)


def _check_inputs(doc: Document, source: str | None) -> None:
    rb = doc.rulebase
    if doc.observe is not None:
        obs = doc.observations
        if len(obs) != rb.m or any(o.universe != u for o, u in zip(obs, rb.inputs)):
            raise ParseError("observe line must name one set per input variable, in order",
                             1, 1, "semantic", source=source)
    if doc.bstar is not None and doc.bstar_set.universe != rb.output:
        raise ParseError("bstar set must be on the output variable", 1, 1, "semantic",
                         source=source)


def _child(doc: Document) -> Document:
    return Document(dict(doc.universes), doc.output, dict(doc.sets), list(doc.rule_defs),
                    doc.observe, doc.bstar, [], doc.rulebase)


def parse_claims(text: str, doc: Document, source: str | None = None) -> Document:
    """Parse a claims file in the scope of an already-parsed rule-base document.

    Claims files may define extra sets and choose the ``observe``/``bstar``
    inputs; they cannot add universes or rules.
    """
    child = _child(doc)
    _Parser(child, source, ("set", "observe", "bstar", "claim")).feed(text)
    _check_inputs(child, source)
    return child


def parse_observations(text: str, rb: RuleBase,
                       source: str | None = None) -> tuple[FuzzySet, ...] | FuzzySet:
    """Read FMP observations (one set per input) or an FMT output set.

    Sets are bound to variables by their ``on`` clause.  If the file names
    exactly one set on the output variable and nothing else, that set is the
    FMT input; otherwise there must be exactly one set per input variable.
    """
    doc = Document({u.name: u for u in (*rb.inputs, rb.output)}, rb.output.name,
                   dict(rb.sets), [(r.name, [], "", 0) for r in rb.rules])
    before = set(doc.sets)
    _Parser(doc, source, ("set", "observe", "bstar")).feed(text)
    if doc.observe is not None:
        doc.rulebase = rb
        _check_inputs(doc, source)
        return doc.observations
    if doc.bstar is not None:
        doc.rulebase = rb
        _check_inputs(doc, source)
        return doc.bstar_set
    new = [s for n, s in doc.sets.items() if n not in before]
    on_output = [s for s in new if s.universe == rb.output]
    if on_output and len(new) == 1:
        return on_output[0]
    if on_output:
        raise ParseError("observation file mixes input and output sets", 1, 1, "semantic",
                         source=source)
    by_var: dict[str, FuzzySet] = {}
    for s in new:
        if s.universe.name in by_var:
            raise ParseError(f"two observations on {s.universe.name}", 1, 1, "semantic",
                             source=source)
        by_var[s.universe.name] = s
    missing = [u.name for u in rb.inputs if u.name not in by_var]
    if missing:
        raise ParseError(f"no observation for variable {missing[0]}", 1, 1, "semantic",
                         source=source)
    return tuple(by_var[u.name] for u in rb.inputs)


def load_document(path: str | Path) -> Document:
    path = Path(path)
    return parse_document(path.read_text(encoding="utf-8"), str(path))


# Rendering ------------------------------------------------------------------

def format_points(f: PiecewiseLinear) -> str:
    return " ".join(f"({format_rational(x)}, {format_rational(v)})" for x, v in f.points)


def format_pwl(f: PiecewiseLinear, var: str) -> str:
    """``pwl on <var> [a, b]: (x1, v1) (x2, v2) ...`` with exact rationals."""
    a, b = f.domain
    return f"pwl on {var} [{format_rational(a)}, {format_rational(b)}]: {format_points(f)}"


def parse_pwl(text: str) -> tuple[str, PiecewiseLinear]:
    """Inverse of :func:`format_pwl`."""
    m = _PWL_RE.match(text.strip())
    if m is None:
        raise ParseError("malformed pwl line", 1, 1, expected="pwl on VAR [a, b]: (x, v) ...")
    p = _Parser(Document(), None, ())
    p.lineno, p.line = 1, text
    u = Universe(m.group("var"), p.number(m.group("lo")), p.number(m.group("hi")))
    return u.name, p.function(u, m.group("points"))


def format_document(doc: Document) -> str:
    """Canonical text of a document; parsing it yields an equal document."""
    lines = [f"universe {u.name} = {format_rational(u.lo)} .. {format_rational(u.hi)}"
             for u in doc.universes.values()]
    if doc.output is not None:
        lines.append(f"output {doc.output}")
    lines += [f"set {s.name} on {s.universe.name} : {format_points(s.membership)}"
              for s in doc.sets.values()]
    lines += [f"rule {name} : {', '.join(lhs)} -> {rhs}" for name, lhs, rhs, _ in doc.rule_defs]
    if doc.observe is not None:
        lines.append(f"observe {', '.join(doc.observe)}")
    if doc.bstar is not None:
        lines.append(f"bstar {doc.bstar}")
    for c in doc.claims:
        expect = f" expect={c.expect}" if c.expect else ""
        lines.append(f"claim {c.label} target={c.target} type={c.modification.value}{expect}"
                     f" : {format_points(c.claimed)}")
    return "\n".join(lines) + "\n"


def _round_half_even(value: Rational, precision: int) -> str:
    scaled = round(value * 10 ** precision)  # rounds half to even
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(precision + 1, "0")
    if precision == 0:
        return sign + digits
    return f"{sign}{digits[:-precision]}.{digits[-precision:]}"


def _trim(text: str) -> str:
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def emit_csv(f: PiecewiseLinear, n: int, precision: int = 6) -> str:
    """``x,value`` header plus ``n`` uniformly spaced rows, rounded half-even."""
    if n < 2:
        raise ValueError("CSV needs at least 2 rows")
    a, b = f.domain
    rows = ["x,value"]
    for i in range(n):
        x = a + (b - a) * i / (n - 1)
        rows.append(f"{_trim(_round_half_even(x, precision))},{_round_half_even(f(x), precision)}")
    return "\n".join(rows) + "\n"
