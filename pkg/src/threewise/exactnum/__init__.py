"""Exact rationals, polynomials, intervals and certified sign decisions."""

from fractions import Fraction

from .algnum import AlgNum
from .expr import P, Q, ParamExpr, const, sqrt
from .interval import DEFAULT_PREC, RInterval, UndefinedExpression
from .poly import PolyQ, count_roots_closed, isolate_roots, sturm_count_roots
from .prove import (INCONCLUSIVE, SUCCESS, VIOLATION, ProofReport, check_defined,
                    exact_nonneg, exact_sign_set, prove_nonneg, simplest_between)
from .symbolic import RadicalForm, RatFunc, UnsupportedForm, form_of


def parse_rational(text) -> Fraction:
    """Parse '3/5', '0.45', '2' or '1e-3' as an exact rational."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    s = str(text).strip().replace(" ", "")
    if not s:
        raise ValueError("empty rational literal")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc


def interval_eval(e: ParamExpr, box: RInterval, prec: int = DEFAULT_PREC) -> RInterval:
    return e.enclose(box, prec)


def as_poly(e: ParamExpr) -> PolyQ | None:
    """The expression as a rational polynomial, if its normal form is one."""
    try:
        r = form_of(e).ratfunc()
    except UnsupportedForm:
        return None
    if r is None or not r.is_poly():
        return None
    return r.num.scale(1 / r.den.const_value())


__all__ = [
    "AlgNum", "DEFAULT_PREC", "Fraction", "INCONCLUSIVE", "P", "ParamExpr", "PolyQ",
    "ProofReport", "Q", "RInterval", "RadicalForm", "RatFunc", "SUCCESS",
    "UndefinedExpression", "UnsupportedForm", "VIOLATION", "as_poly", "check_defined",
    "const", "count_roots_closed", "exact_nonneg", "exact_sign_set", "form_of",
    "interval_eval", "isolate_roots", "parse_rational", "prove_nonneg",
    "simplest_between", "sqrt", "sturm_count_roots",
]
