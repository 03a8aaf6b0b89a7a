"""Normal forms for expressions with non-nested square roots.

A form is a finite sum  sum_K c_K(p) * prod_{g in K} sqrt(g)  where each c_K
is a rational function of p and each generator g is either a prime number
or a primitive squarefree-by-construction integer polynomial in p. Rewriting
sqrt(N/D) as sqrt(N*D)/D needs D > 0, which is recorded as a side condition
and checked by the caller on the interval of use.

A zero form proves that the expression vanishes wherever it is defined and
the side conditions hold. A non-zero form proves nothing by itself; the
norm (product over all sign conjugates) is a rational function whose zeros
contain the zeros of the expression.
"""

from __future__ import annotations

from fractions import Fraction

from .algnum import AlgNum
from .poly import PolyQ, poly_gcd


class UnsupportedForm(Exception):
    """The expression has nested radicals or another unsupported shape."""


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num: PolyQ, den: PolyQ | None = None, _normalized=False):
        if den is None:
            den = PolyQ.const(1)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _normalized:
            if num.is_zero():
                den = PolyQ.const(1)
            elif den.degree > 0:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = num // g, den // g
            lead = den.lead()
            if lead != 1:
                num, den = num.scale(1 / lead), den.scale(1 / lead)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c) -> "RatFunc":
        return cls(PolyQ.const(c), None, True) if c != 0 else cls(PolyQ(), None, True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other):
        return isinstance(other, RatFunc) and self.num == other.num and self.den == other.den

    def __add__(self, o: "RatFunc") -> "RatFunc":
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    def __neg__(self):
        return RatFunc(-self.num, self.den, True)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o: "RatFunc") -> "RatFunc":
        if self.is_zero() or o.is_zero():
            return RatFunc.const(0)
        return RatFunc(self.num * o.num, self.den * o.den)

    def scale_poly(self, poly: PolyQ) -> "RatFunc":
        return RatFunc(self.num * poly, self.den)

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFunc(self.den, self.num)

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def __repr__(self):
        return f"({self.num})/({self.den})"


_REFERENCE_POINTS = [Fraction(1, 2), Fraction(2, 5), Fraction(1, 3), Fraction(3, 7), Fraction(1, 7)]


def gen_poly(g) -> PolyQ:
    kind, data = g
    if kind == "c":
        return PolyQ.const(data)
    return PolyQ(data)


def _gen_sort_key(g):
    return (0, g[1]) if g[0] == "c" else (1, len(g[1]), g[1])


class RadicalForm:
    __slots__ = ("terms", "conditions")

    def __init__(self, terms: dict, conditions: frozenset = frozenset()):
        self.terms: dict[frozenset, RatFunc] = {k: v for k, v in terms.items() if not v.is_zero()}
        # each condition is a PolyQ required to be strictly positive
        self.conditions = conditions

    @classmethod
    def from_ratfunc(cls, r: RatFunc) -> "RadicalForm":
        return cls({frozenset(): r})

    @classmethod
    def from_algnum(cls, a: AlgNum) -> "RadicalForm":
        return cls({frozenset(("c", pr) for pr in k): RatFunc.const(v) for k, v in a.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def generators(self) -> set:
        out = set()
        for k in self.terms:
            out |= k
        return out

    def ratfunc(self) -> RatFunc | None:
        """The form as a radical-free rational function, if it is one."""
        if self.is_zero():
            return RatFunc.const(0)
        if set(self.terms) == {frozenset()}:
            return self.terms[frozenset()]
        return None

    def coefficient_denominators(self) -> list[PolyQ]:
        return [v.den for v in self.terms.values() if v.den.degree > 0]

    def _merge(self, other) -> frozenset:
        return self.conditions | other.conditions

    def __add__(self, o: "RadicalForm") -> "RadicalForm":
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out[k] + v if k in out else v
        return RadicalForm(out, self._merge(o))

    def __neg__(self):
        return RadicalForm({k: -v for k, v in self.terms.items()}, self.conditions)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o: "RadicalForm") -> "RadicalForm":
        out: dict[frozenset, RatFunc] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in o.terms.items():
                c = v1 * v2
                for g in k1 & k2:
                    c = c.scale_poly(gen_poly(g))
                k = k1 ^ k2
                out[k] = out[k] + c if k in out else c
        return RadicalForm(out, self._merge(o))

    def conjugate(self, g) -> "RadicalForm":
        return RadicalForm({k: (-v if g in k else v) for k, v in self.terms.items()}, self.conditions)

    def inverse(self) -> "RadicalForm":
        if self.is_zero():
            raise ZeroDivisionError("inverse of a zero form")
        r = self.ratfunc()
        if r is not None:
            return RadicalForm.from_ratfunc(r.inverse()).with_conditions(self.conditions)
        g = min(self.generators(), key=_gen_sort_key)
        conj = self.conjugate(g)
        return conj * (self * conj).inverse()

    def with_conditions(self, conds) -> "RadicalForm":
        return RadicalForm(self.terms, self.conditions | frozenset(conds))

    def __pow__(self, k: int) -> "RadicalForm":
        if k < 0:
            return self.inverse() ** (-k)
        result = RadicalForm.from_ratfunc(RatFunc.const(1))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result.with_conditions(self.conditions)

    def sqrt(self) -> "RadicalForm":
        r = self.ratfunc()
        if r is None:
            raise UnsupportedForm("square root of an expression that already has radicals")
        if r.is_zero():
            return RadicalForm({}, self.conditions)
        if r.num.degree <= 0 and r.den.degree <= 0:
            c = r.num.const_value() / r.den.const_value()
            if c < 0:
                raise UnsupportedForm("square root of a negative constant")
            return RadicalForm.from_algnum(AlgNum.sqrt_of(c)).with_conditions(self.conditions)
        conds = set(self.conditions)
        num, den = r.num, r.den
        if den.degree > 0:
            # orient the denominator to be positive inside (0, 1); the side
            # condition makes the caller verify this on the interval of use
            ref = next(x for x in _REFERENCE_POINTS if den(x) != 0)
            if den(ref) < 0:
                num, den = -num, -den
            conds.add(den)
        kappa, prim = (num * den).content_scaled()
        if kappa < 0:
            kappa, prim = -kappa, -prim
        scale = RadicalForm.from_algnum(AlgNum.sqrt_of(kappa))
        inv_den = RadicalForm.from_ratfunc(RatFunc(PolyQ.const(1), den))
        if prim.degree <= 0:
            body = RadicalForm.from_ratfunc(RatFunc.const(prim.const_value()))
        else:
            body = RadicalForm({frozenset([("r", tuple(int(c) for c in prim.coeffs))]): RatFunc.const(1)})
        return (scale * inv_den * body).with_conditions(conds)

    def norm(self) -> RatFunc:
        f = self
        while True:
            r = f.ratfunc()
            if r is not None:
                return r
            g = min(f.generators(), key=_gen_sort_key)
            f = f * f.conjugate(g)

    def evaluate(self, p) -> AlgNum:
        """Exact value at rational p (side conditions are not checked here)."""
        p = Fraction(p)
        total = AlgNum()
        for k, v in self.terms.items():
            term = AlgNum.rational(v(p))
            for g in k:
                term = term * AlgNum.sqrt_of(gen_poly(g)(p))
            total = total + term
        return total


def form_of(expr) -> RadicalForm:
    """Normal form of a ParamExpr, cached on the node. Raises UnsupportedForm."""
    cached = expr._cache.get("form")
    if cached is not None:
        if isinstance(cached, UnsupportedForm):
            raise cached
        return cached
    memo: dict[int, RadicalForm] = {}
    try:
        for node in expr.walk():
            hit = node._cache.get("form")
            if isinstance(hit, UnsupportedForm):
                raise hit
            if hit is None:
                hit = _form_node(node, memo)
                node._cache["form"] = hit
            memo[id(node)] = hit
    except UnsupportedForm as exc:
        expr._cache["form"] = exc
        raise
    except ZeroDivisionError as exc:
        err = UnsupportedForm(f"identically vanishing denominator: {exc}")
        expr._cache["form"] = err
        raise err
    return memo[id(expr)]


_X = RadicalForm.from_ratfunc(RatFunc(PolyQ.x()))


def _form_node(node, memo) -> RadicalForm:
    op = node.op
    if op == "const":
        return RadicalForm.from_ratfunc(RatFunc.const(node.value))
    if op == "p":
        return _X
    a = [memo[id(x)] for x in node.args]
    if op == "add":
        return a[0] + a[1]
    if op == "sub":
        return a[0] - a[1]
    if op == "mul":
        return a[0] * a[1]
    if op == "div":
        return a[0] * a[1].inverse()
    if op == "neg":
        return -a[0]
    if op == "pow":
        return a[0] ** node.value
    return a[0].sqrt()
