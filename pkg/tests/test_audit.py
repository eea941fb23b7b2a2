from fractions import Fraction as F

from hypothesis import given, settings, strategies as st

from simfuzz.audit import (FAIL, MATCH, MISMATCH, PASS, VIOLATION, Claim, Target, audit_fmp,
                           audit_fmt, bound_check_claim, compare_claim, engine_value,
                           first_witness, mismatch_intervals, render_report, verify_claims)
from simfuzz.engine import ModificationType, Rule, RuleBase
from simfuzz.fuzzy import FuzzySet, Universe
from simfuzz.pwl import pwl_abs_diff_integral

from .helpers import pl, pl_functions

T1, T2 = ModificationType.TYPE1, ModificationType.TYPE2


def _by_label(report):
    return {v.label: v for v in (*report.rules, *report.claims)}


def test_fmp_audit_fails_rule2_both_types(rb):
    r = _by_label(audit_fmp(rb, T1))
    assert r["R2"].verdict == FAIL
    assert r["R2"].witness == (0, F(3, 4), F(1, 2))
    r = _by_label(audit_fmp(rb, T2))
    assert r["R2"].verdict == FAIL
    assert r["R2"].witness == (0, 1, F(1, 2))


def test_fmp_audit_rule1_witness(rb):
    # observing R1's own antecedents: max(1 - y, 3/8 (1 + y)) departs from 1 - y after 5/11
    v = _by_label(audit_fmp(rb, T1))["R1"]
    assert v.engine.points == ((0, 1), (F(5, 11), F(6, 11)), (1, F(3, 4)))
    assert mismatch_intervals(v.engine, v.expected)[0][:4] == (F(5, 11), 1, False, True)


def test_fmt_audit_fails_rule2_both_types(rb):
    rep = audit_fmt(rb, T1)
    r = _by_label(rep)
    assert r["R2:x1"].verdict == FAIL
    assert r["R2:x1"].engine == pl((0, F(4, 5)), (3, 0))
    assert r["R2:x1"].expected == pl((0, 0), (1, 1), (3, 1))
    assert dict(rep.rule_summary)["R2"] == FAIL
    r = _by_label(audit_fmt(rb, T2))
    assert r["R2:x2"].engine == pl((0, 1), (1, 1))
    assert r["R2:x2"].expected == pl((0, 0), (1, F(1, 2)))
    assert r["R2:x2"].verdict == FAIL


def _single(sets):
    a, b = sets["A11"], sets["B1"]
    return RuleBase((a.universe,), b.universe, (Rule("R", (a,), b),))


def test_single_rule_base(sets):
    rb = _single(sets)
    for t in (T1, T2):
        rep = audit_fmp(rb, t)
        assert rep.ok and rep.rules[0].verdict == PASS
    # SM(B1, 1 - B1) = 2/3 < 1, so FMT cannot return the complemented antecedent
    for t in (T1, T2):
        assert audit_fmt(rb, t).rules[0].verdict == FAIL


def test_identical_rules_pass(sets):
    a, b = sets["A11"], sets["B1"]
    rb = RuleBase((a.universe,), b.universe, (Rule("R", (a,), b), Rule("S", (a,), b)))
    assert audit_fmp(rb, T1).ok and audit_fmp(rb, T2).ok


def _claims(scope):
    return {c.label: c for c in scope.claims}


def test_claim_verdicts_fmp(rb, fmp_claims):
    rep = verify_claims(fmp_claims.claims, rb, fmp_claims.observations)
    verdicts = {v.label: v for v in rep.claims}
    for label, v in verdicts.items():
        assert v.verdict == v.claim.expect, label
    prior_agg = verdicts["prior-t2-agg"]
    first = prior_agg.intervals[0]
    assert (first.lo, first.lo_closed) == (F(1, 13), False)
    assert prior_agg.witness == (F(13, 73), 1, F(65, 73))
    revised_sub = verdicts["revised-t1-sub-R2"]
    assert revised_sub.findings and revised_sub.findings[0].intervals[0][:2] == (0, 1)
    assert not bound_check_claim(_claims(fmp_claims)["revised-t2-sub-R2"], rb)


def test_claim_verdicts_fmt(rb, fmt_claims):
    rep = verify_claims(fmt_claims.claims, rb, bstar=fmt_claims.bstar_set)
    assert rep.ok
    assert all(v.verdict == MATCH for v in rep.claims)


def test_claim_equal_to_consequent_has_no_violation(rb):
    target = Target("fmp-sub", "R2")
    c = Claim("own", target, T1, rb.rule("R2").consequent.membership)
    assert bound_check_claim(c, rb) == []


def test_engine_output_claim_matches(rb, obs):
    target = Target("fmp-aggregate")
    c = Claim("self", target, T2, engine_value(target, T2, rb, obs))
    assert compare_claim(c, rb, obs).verdict == MATCH


def test_report_rendering_is_deterministic(rb, fmp_claims):
    a = render_report(verify_claims(fmp_claims.claims, rb, fmp_claims.observations))
    b = render_report(verify_claims(fmp_claims.claims, rb, fmp_claims.observations))
    assert a == b
    assert "verdict prior-t2-agg MISMATCH witness x=13/73 engine=1 expected=65/73" in a
    assert "verdict prior-t1-agg MATCH\n" in a
    assert "\x1b[" not in a


def test_report_summary_for_fmt(rb):
    text = render_report(audit_fmt(rb, T1))
    assert "verdict R2:x1 FAIL witness x=0 engine=4/5 expected=0" in text
    assert "verdict R2 FAIL witness x=0 engine=4/5 expected=0" in text


# properties ----------------------------------------------------------------

pair = st.tuples(pl_functions(), pl_functions())


@settings(max_examples=500)
@given(pair)
def test_witness_iff_nonzero_integral(fg):
    f, g = fg
    w = first_witness(f, g)
    assert (w is None) == (pwl_abs_diff_integral(f, g) == 0)
    if w is not None:
        assert f(w.x) == w.engine != w.expected == g(w.x)
        assert mismatch_intervals(f, g)


@settings(max_examples=300)
@given(pair)
def test_mismatch_intervals_cover_every_difference(fg):
    f, g = fg
    ivs = mismatch_intervals(f, g)
    for x in (F(i, 96) for i in range(97)):
        inside = any((iv.lo < x < iv.hi) or (x == iv.lo and iv.lo_closed)
                     or (x == iv.hi and iv.hi_closed) for iv in ivs)
        assert inside == (f(x) != g(x))


X = Universe("x", 0, 1)
Y = Universe("y", 0, 1)
wide_values = st.builds(F, st.integers(0, 30), st.integers(1, 12))


@settings(max_examples=300, deadline=None)
@given(st.lists(pl_functions(), min_size=3, max_size=3), pl_functions(values=wide_values),
       st.sampled_from([T1, T2]))
def test_bound_violation_never_matches(fs, claimed, t):
    a, b, o = fs
    rb = RuleBase((X,), Y, (Rule("R", (FuzzySet("A", X, a),), FuzzySet("B", Y, b)),))
    obs = (FuzzySet("O", X, o),)
    c = Claim("c", Target("fmp-sub", "R"), t, claimed)
    v = compare_claim(c, rb, obs)
    if bound_check_claim(c, rb):
        assert v.verdict == VIOLATION
        assert v.intervals
    else:
        assert v.verdict in (MATCH, MISMATCH)
