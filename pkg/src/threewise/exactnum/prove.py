"""Certified sign decisions for ParamExpr over a rational interval.

prove_nonneg combines three routes, cheapest first:

* identity: the normal form of the expression is zero;
* sturm: the expression is a rational polynomial, decided exactly;
* bisection: interval enclosures (natural form intersected with the
  mean-value form) on an adaptive subdivision.

When bisection hits the depth limit the exact critical-point method takes
over: every zero of the expression is a zero of the norm of its normal form,
so its sign is constant between consecutive real roots of that norm, and one
exact algebraic evaluation per gap decides the question.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .expr import ParamExpr, const
from .interval import DEFAULT_PREC, RInterval, UndefinedExpression
from .poly import PolyQ, count_roots_closed, isolate_roots, refine_root
from .symbolic import UnsupportedForm, form_of

SUCCESS = "SUCCESS"
VIOLATION = "VIOLATION"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class ProofReport:
    status: str
    method: str
    boxes_examined: int = 0
    witness: RInterval | None = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status == SUCCESS

    def to_json(self) -> dict:
        out = {"status": self.status, "method": self.method, "boxes_examined": self.boxes_examined}
        if self.witness is not None:
            out["witness_box"] = self.witness.to_strings()
        if self.detail:
            out["detail"] = self.detail
        return out


def simplest_between(lo: Fraction, hi: Fraction | None) -> Fraction:
    """Rational of least denominator in the open interval (lo, hi); hi None is +inf."""
    n = floor(lo) + 1
    if hi is None or n < hi:
        return Fraction(n)
    fl = floor(lo)
    lo_f, hi_f = lo - fl, hi - fl
    inner = simplest_between(1 / hi_f, None if lo_f == 0 else 1 / lo_f)
    return fl + 1 / inner


def _as_box(interval) -> RInterval:
    if isinstance(interval, RInterval):
        return interval
    lo, hi = interval
    return RInterval(Fraction(lo), Fraction(hi))


# --- exact machinery --------------------------------------------------------

def _poly_positive(poly: PolyQ, lo: Fraction, hi: Fraction) -> bool:
    return poly(lo) > 0 and count_roots_closed(poly, lo, hi) == 0


def _critical_items(e: ParamExpr, lo: Fraction, hi: Fraction):
    form = form_of(e)
    for cond in form.conditions:
        if not _poly_positive(cond, lo, hi):
            raise UnsupportedForm("a radicand denominator is not positive on the interval")
    norm = form.norm()
    if norm.num.is_zero():
        raise UnsupportedForm("degenerate norm")
    crit = norm.num
    for d in form.coefficient_denominators():
        crit = crit * d
    if crit.degree <= 0:
        return []
    return isolate_roots(crit, lo, hi)


def _sample_points(items, lo: Fraction, hi: Fraction) -> list[Fraction]:
    pts = {lo, hi}
    for a, b in items:
        if a == b:
            pts.add(a)
    for (a1, b1), (a2, b2) in zip(items, items[1:]):
        left = b1  # for an exact root b1 == a1, the open gap starts there
        right = a2
        if left < right:
            pts.add(simplest_between(left, right))
        else:
            pts.add(left)  # adjacent open isolating intervals share a non-root endpoint
    if items:
        a, b = items[0]
        if lo < a:
            pts.add(simplest_between(lo, a))
        a, b = items[-1]
        if b < hi:
            pts.add(simplest_between(b, hi))
    return sorted(pts)


def exact_nonneg(e: ParamExpr, lo, hi) -> tuple[bool, Fraction | None]:
    """Decide e >= 0 on [lo, hi] exactly. Returns (holds, counterexample)."""
    lo, hi = Fraction(lo), Fraction(hi)
    items = _critical_items(e, lo, hi)
    for x in _sample_points(items, lo, hi):
        if e.exact(x).sign() < 0:
            return False, x
    return True, None


def exact_sign_set(e: ParamExpr, lo, hi, refinements: int = 80) -> set[int]:
    """Superset of the signs e attains on [lo, hi]; exact apart from possibly
    reporting 0 at an irrational double root that refinement cannot exclude."""
    lo, hi = Fraction(lo), Fraction(hi)
    items = _critical_items(e, lo, hi)
    signs = {e.exact(x).sign() for x in _sample_points(items, lo, hi)}
    if 0 in signs:
        return signs
    crit_cache = None
    for a, b in items:
        if a == b:
            continue
        if crit_cache is None:
            form = form_of(e)
            crit_cache = form.norm().num
            for d in form.coefficient_denominators():
                crit_cache = crit_cache * d
        ia, ib = a, b
        for _ in range(refinements):
            try:
                enc = e.enclose(RInterval(ia, ib))
            except UndefinedExpression:
                enc = None
            if enc is not None and not enc.contains_zero():
                break
            ia, ib = refine_root(crit_cache, ia, ib)
            if ia == ib:
                signs.add(e.exact(ia).sign())
                break
        else:
            signs.add(0)
    return signs


# --- definedness ------------------------------------------------------------

def _interval_says(expr: ParamExpr, box: RInterval, test, depth: int) -> bool:
    """True if test(enclosure) holds on every leaf of a shallow subdivision."""
    stack = [(box, 0)]
    while stack:
        b, d = stack.pop()
        try:
            enc = expr.enclose(b)
        except UndefinedExpression:
            enc = None
        if enc is not None and test(enc):
            continue
        if d >= depth:
            return False
        left, right = b.split()
        stack.append((right, d + 1))
        stack.append((left, d + 1))
    return True


def check_defined(e: ParamExpr, box: RInterval) -> None:
    """Certify that every quotient and square root in e is defined on box.

    Raises UndefinedExpression when a requirement fails and UnsupportedForm
    when it cannot be decided.
    """
    key = ("defined", box.lo, box.hi)
    if e._cache.get(key):
        return
    for node in e.walk():
        if node._cache.get(key):
            continue
        if node.op in ("div", "pow", "sqrt"):
            if node.op == "div":
                sub, need_nonzero = node.args[1], True
            elif node.op == "pow":
                if node.value >= 0:
                    node._cache[key] = True
                    continue
                sub, need_nonzero = node.args[0], True
            else:
                sub, need_nonzero = node.args[0], False
            if need_nonzero:
                test = lambda enc: not enc.contains_zero()  # noqa: E731
            else:
                test = lambda enc: enc.lo >= 0  # noqa: E731
            if not sub.depends_on_p():
                v = sub.exact(0)
                good = (not v.is_zero()) if need_nonzero else v.sign() >= 0
            elif _interval_says(sub, box, test, 6):
                good = True
            else:
                signs = exact_sign_set(sub, box.lo, box.hi)
                good = (0 not in signs) if need_nonzero else (-1 not in signs)
            if not good:
                raise UndefinedExpression(f"{node.op} node undefined somewhere on [{box.lo}, {box.hi}]")
        node._cache[key] = True


# --- main entry -------------------------------------------------------------

def prove_nonneg(e: ParamExpr, interval, margin=0, max_depth: int = 40,
                 prec: int = DEFAULT_PREC, use_identity: bool = True) -> ProofReport:
    """Certify e(p) >= -margin for every p in interval.

    SUCCESS is a proof. VIOLATION carries a witness: a box whose enclosure is
    entirely below -margin, or a rational point with an exact negative value.
    INCONCLUSIVE means no route could decide.
    """
    box = _as_box(interval)
    margin = Fraction(margin)
    target = e + const(margin) if margin else e
    try:
        check_defined(e, box)
    except UnsupportedForm as exc:
        return ProofReport(INCONCLUSIVE, "definedness", detail=str(exc))
    except UndefinedExpression as exc:
        return ProofReport(INCONCLUSIVE, "definedness", detail=f"undefined: {exc}")

    form = None
    try:
        form = form_of(target)
    except UnsupportedForm:
        form = None
    if form is not None and use_identity:
        if form.is_zero() and all(_poly_positive(c, box.lo, box.hi) for c in form.conditions):
            return ProofReport(SUCCESS, "identity", detail="expression vanishes identically")
        r = form.ratfunc()
        if r is not None and r.is_poly():
            holds, x = exact_nonneg(target, box.lo, box.hi)
            if holds:
                return ProofReport(SUCCESS, "sturm")
            return ProofReport(VIOLATION, "sturm", witness=RInterval.point(x))

    boxes = 0
    stack = [(box, 0)]
    while stack:
        b, depth = stack.pop()
        boxes += 1
        try:
            enc = target.enclose(b, prec)
        except UndefinedExpression:
            enc = None
        if enc is not None and enc.lo >= 0:
            continue
        if enc is not None and enc.hi < 0:
            return ProofReport(VIOLATION, "bisection", boxes, witness=b)
        if depth >= max_depth or b.width == 0:
            if form is None:
                return ProofReport(INCONCLUSIVE, "bisection", boxes, witness=b,
                                   detail="depth exhausted and no exact fallback")
            try:
                holds, x = exact_nonneg(target, box.lo, box.hi)
            except UnsupportedForm as exc:
                return ProofReport(INCONCLUSIVE, "bisection", boxes, witness=b, detail=str(exc))
            if holds:
                return ProofReport(SUCCESS, "bisection+exact", boxes)
            return ProofReport(VIOLATION, "bisection+exact", boxes, witness=RInterval.point(x))
        left, right = b.split()
        stack.append((right, depth + 1))
        stack.append((left, depth + 1))
    return ProofReport(SUCCESS, "bisection", boxes)
