"""Similarity-based fuzzy modus ponens (FMP) and modus tollens (FMT).

A rule base has m input universes, one output universe and n rules
``A_i1, ..., A_im -> B_i``.  Two modifications of a fuzzy set by a
similarity value ``s`` are supported:

* type 1 scales the set: ``s * F``
* type 2 divides and clips: ``min(1, F / s)``

FMP modifies each consequent once per antecedent term (using the similarity
of that antecedent with the observation), intersects the terms, and unions
the per-rule results.  FMT modifies each antecedent by the similarity of the
rule's consequent with the observed output set and unions across rules, per
input variable.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import reduce
from typing import Mapping, Sequence

from .errors import UniverseMismatchError, ValidationError
from .fuzzy import FuzzySet, Universe, similarity, validate_set
from .numeric import Rational
from .pwl import PiecewiseLinear, pwl_clip_div, pwl_max, pwl_min, pwl_scale


class ModificationType(enum.Enum):
    TYPE1 = 1
    TYPE2 = 2

    @classmethod
    def parse(cls, value: "str | int | ModificationType") -> "ModificationType":
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower().removeprefix("type").strip()
        try:
            return cls(int(text))
        except ValueError:
            raise ValueError(f"modification type must be 1 or 2, not {value!r}") from None

    def modify(self, f: PiecewiseLinear, s: Rational) -> PiecewiseLinear:
        if self is ModificationType.TYPE1:
            return pwl_scale(s, f)
        return pwl_clip_div(f, s)

    def __str__(self) -> str:
        return f"type{self.value}"


@dataclass(frozen=True)
class Rule:
    name: str
    antecedents: tuple[FuzzySet, ...]
    consequent: FuzzySet


@dataclass(frozen=True)
class RuleBase:
    inputs: tuple[Universe, ...]
    output: Universe
    rules: tuple[Rule, ...]
    sets: Mapping[str, FuzzySet] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "rules", tuple(self.rules))
        if not self.inputs:
            raise ValidationError("a rule base needs at least one input universe")
        if not self.rules:
            raise ValidationError("a rule base needs at least one rule")
        names = [u.name for u in self.inputs] + [self.output.name]
        if len(set(names)) != len(names):
            raise ValidationError("universe names must be unique")
        for rule in self.rules:
            if len(rule.antecedents) != len(self.inputs):
                raise ValidationError(
                    f"rule {rule.name}: {len(rule.antecedents)} antecedents for "
                    f"{len(self.inputs)} input variables")
            for k, (a, u) in enumerate(zip(rule.antecedents, self.inputs)):
                if a.universe != u:
                    raise UniverseMismatchError(
                        f"rule {rule.name}: antecedent {k + 1} ({a.name}) is on "
                        f"{a.universe.name}, expected {u.name}")
            if rule.consequent.universe != self.output:
                raise UniverseMismatchError(
                    f"rule {rule.name}: consequent {rule.consequent.name} is not on "
                    f"output universe {self.output.name}")
            for s in (*rule.antecedents, rule.consequent):
                problems = validate_set(s)
                if problems:
                    raise ValidationError(problems[0].message, problems)

    @property
    def m(self) -> int:
        return len(self.inputs)

    def rule(self, name: str) -> Rule:
        for r in self.rules:
            if r.name == name:
                return r
        raise KeyError(f"no rule named {name!r}")

    def input_index(self, var: str) -> int:
        for k, u in enumerate(self.inputs):
            if u.name == var:
                return k
        raise KeyError(f"no input variable named {var!r}")


Observations = Sequence[FuzzySet]


def check_observations(rb: RuleBase, obs: Observations) -> tuple[FuzzySet, ...]:
    obs = tuple(obs)
    if len(obs) != rb.m:
        raise ValidationError(f"expected {rb.m} observations, got {len(obs)}")
    for o, u in zip(obs, rb.inputs):
        if o.universe != u:
            raise UniverseMismatchError(
                f"observation {o.name} is on {o.universe.name}, expected {u.name}")
    return obs


def _check_output_set(rb: RuleBase, bstar: FuzzySet) -> None:
    if bstar.universe != rb.output:
        raise UniverseMismatchError(
            f"FMT input {bstar.name} is on {bstar.universe.name}, expected "
            f"output universe {rb.output.name}")


@dataclass(frozen=True)
class FmpRuleTrace:
    rule: str
    similarities: tuple[Rational, ...]
    terms: tuple[PiecewiseLinear, ...]
    result: PiecewiseLinear


@dataclass(frozen=True)
class FmtRuleTrace:
    rule: str
    similarity: Rational
    terms: tuple[PiecewiseLinear, ...]  # one modified antecedent per input variable


@dataclass(frozen=True)
class InferenceTrace:
    kind: str  # "fmp" or "fmt"
    modification: ModificationType
    rules: tuple
    aggregate: tuple[PiecewiseLinear, ...]


def _fmp_rule(rule: Rule, obs: tuple[FuzzySet, ...], t: ModificationType) -> FmpRuleTrace:
    sims = tuple(similarity(a, o) for a, o in zip(rule.antecedents, obs))
    terms = tuple(t.modify(rule.consequent.membership, s) for s in sims)
    return FmpRuleTrace(rule.name, sims, terms, reduce(pwl_min, terms))


def sub_result_fmp(rule: Rule, obs: Observations,
                   t: ModificationType | str | int) -> PiecewiseLinear:
    """Per-rule FMP result: intersection over input terms of the modified consequent."""
    t = ModificationType.parse(t)
    obs = tuple(obs)
    if len(obs) != len(rule.antecedents):
        raise ValidationError(f"rule {rule.name} takes {len(rule.antecedents)} observations")
    return _fmp_rule(rule, obs, t).result


def fmp_infer(rb: RuleBase, obs: Observations,
              t: ModificationType | str | int) -> tuple[PiecewiseLinear, InferenceTrace]:
    t = ModificationType.parse(t)
    obs = check_observations(rb, obs)
    traces = tuple(_fmp_rule(r, obs, t) for r in rb.rules)
    aggregate = reduce(pwl_max, (tr.result for tr in traces))
    return aggregate, InferenceTrace("fmp", t, traces, (aggregate,))


def _fmt_rule(rule: Rule, bstar: FuzzySet, t: ModificationType) -> FmtRuleTrace:
    s = similarity(rule.consequent, bstar)
    return FmtRuleTrace(rule.name, s, tuple(t.modify(a.membership, s) for a in rule.antecedents))


def sub_result_fmt(rule: Rule, bstar: FuzzySet, input_index: int,
                   t: ModificationType | str | int) -> PiecewiseLinear:
    """Antecedent ``input_index`` (0-based) of ``rule`` modified by SM(B_i, B*)."""
    t = ModificationType.parse(t)
    if not 0 <= input_index < len(rule.antecedents):
        raise IndexError(f"rule {rule.name} has no input {input_index}")
    s = similarity(rule.consequent, bstar)
    return t.modify(rule.antecedents[input_index].membership, s)


def fmt_infer(rb: RuleBase, bstar: FuzzySet, t: ModificationType | str | int
              ) -> tuple[tuple[PiecewiseLinear, ...], InferenceTrace]:
    """One inferred input-side function per input variable, unioned over rules."""
    t = ModificationType.parse(t)
    _check_output_set(rb, bstar)
    traces = tuple(_fmt_rule(r, bstar, t) for r in rb.rules)
    results = tuple(
        reduce(pwl_max, (tr.terms[k] for tr in traces)) for k in range(rb.m))
    return results, InferenceTrace("fmt", t, traces, results)
