"""Exact similarity-based fuzzy inference with piecewise-linear membership functions."""

from .audit import (AuditReport, Claim, Target, audit_fmp, audit_fmt, bound_check_claim,
                    compare_claim, verify_claims)
from .engine import (ModificationType, Rule, RuleBase, fmp_infer, fmt_infer, sub_result_fmp,
                     sub_result_fmt)
from .fuzzy import FuzzySet, Universe, fuzzy_set, similarity, validate_set
from .numeric import format_rational, parse_rational, rational
from .pwl import (PiecewiseLinear, constant, pwl_abs_diff_integral, pwl_clip_div,
                  pwl_complement, pwl_crossings, pwl_equal, pwl_eval, pwl_extremum, pwl_make,
                  pwl_max, pwl_min, pwl_scale)
from .textio import (emit_csv, format_document, format_pwl, parse_claims, parse_document,
                     parse_observations, parse_pwl, parse_rulebase)

__all__ = [
    "AuditReport", "Claim", "Target", "audit_fmp", "audit_fmt", "bound_check_claim",
    "compare_claim", "verify_claims", "ModificationType", "Rule", "RuleBase", "fmp_infer",
    "fmt_infer", "sub_result_fmp", "sub_result_fmt", "FuzzySet", "Universe", "fuzzy_set",
    "similarity", "validate_set", "format_rational", "parse_rational", "rational",
    "PiecewiseLinear", "constant", "pwl_abs_diff_integral", "pwl_clip_div", "pwl_complement",
    "pwl_crossings", "pwl_equal", "pwl_eval", "pwl_extremum", "pwl_make", "pwl_max", "pwl_min",
    "pwl_scale", "emit_csv", "format_document", "format_pwl", "parse_claims", "parse_document",
    "parse_observations", "parse_pwl", "parse_rulebase",
]

__version__ = "0.1.0"
