"""Univariate polynomials over Q and Sturm-sequence root counting."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class PolyQ:
    """Immutable polynomial with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def const(cls, c) -> "PolyQ":
        return cls((c,))

    @classmethod
    def x(cls) -> "PolyQ":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def const_value(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyQ):
            if isinstance(other, (int, Fraction)):
                other = PolyQ.const(other)
            else:
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"PolyQ({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("p" if k == 1 else f"p^{k}")
            if mono and c == 1:
                term = mono
            elif mono and c == -1:
                term = "-" + mono
            else:
                term = f"({c})" if c.denominator != 1 else str(c)
                if mono:
                    term += "*" + mono
            parts.append(term)
        return " + ".join(parts).replace("+ -", "- ")

    @staticmethod
    def _coerce(other) -> "PolyQ":
        if isinstance(other, PolyQ):
            return other
        if isinstance(other, (int, Fraction)):
            return PolyQ.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return PolyQ([a[i] + (b[i] if i < len(b) else 0) for i in range(len(a))])

    __radd__ = __add__

    def __neg__(self):
        return PolyQ([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyQ()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return PolyQ(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = PolyQ.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "PolyQ":
        c = _frac(c)
        return PolyQ([c * x for x in self.coeffs])

    def __call__(self, x):
        """Horner evaluation; works for any ring element supporting + and *."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc if self.coeffs else Fraction(0)

    def compose(self, inner: "PolyQ") -> "PolyQ":
        acc = PolyQ()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def derivative(self) -> "PolyQ":
        return PolyQ([k * self.coeffs[k] for k in range(1, len(self.coeffs))])

    def divmod(self, other: "PolyQ") -> tuple["PolyQ", "PolyQ"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        lead = other.lead()
        quot = [Fraction(0)] * max(len(rem) - d, 0)
        for k in range(len(rem) - 1 - d, -1, -1):
            c = rem[k + d] / lead
            quot[k] = c
            if c:
                for i, oc in enumerate(other.coeffs):
                    rem[k + i] -= c * oc
        return PolyQ(quot), PolyQ(rem[:d] if d > 0 else [])

    def __mod__(self, other: "PolyQ") -> "PolyQ":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "PolyQ") -> "PolyQ":
        return self.divmod(other)[0]

    def monic(self) -> "PolyQ":
        if self.is_zero():
            return self
        return self.scale(1 / self.lead())

    def content_scaled(self) -> tuple[Fraction, "PolyQ"]:
        """Return (k, P) with self = k*P, P primitive with integer coefficients
        and positive leading coefficient."""
        if self.is_zero():
            return Fraction(0), self
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), PolyQ([Fraction(v // g) for v in ints])

    def primitive(self) -> "PolyQ":
        return self.content_scaled()[1]

    def int_coeffs(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.coeffs)


def poly_gcd(a: PolyQ, b: PolyQ) -> PolyQ:
    while not b.is_zero():
        a, b = b, (a % b).primitive()
    return a.primitive() if not a.is_zero() else a


def squarefree(f: PolyQ) -> PolyQ:
    """Product of the distinct irreducible factors of f (primitive)."""
    if f.degree <= 0:
        return f.primitive()
    g = poly_gcd(f, f.derivative())
    return (f // g).primitive() if g.degree > 0 else f.primitive()


def sturm_sequence(f: PolyQ) -> list[PolyQ]:
    """Sturm chain of f, each term rescaled by a positive constant."""
    seq = [f.primitive(), f.derivative().primitive()]
    while not seq[-1].is_zero():
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        k, prim = (-r).content_scaled()
        # keep the sign of -r: content_scaled forces a positive leading coefficient
        seq.append(prim if k > 0 else -prim)
    return [s for s in seq if not s.is_zero()]


def _sign_changes(values: Sequence[Fraction]) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count_roots(f: PolyQ, lo, hi) -> int:
    """Number of distinct real roots of f in the half-open interval (lo, hi]."""
    if f.is_zero():
        raise ValueError("root count of the zero polynomial is undefined")
    lo, hi = _frac(lo), _frac(hi)
    if lo > hi:
        raise ValueError("empty interval")
    if f.degree == 0 or lo == hi:
        return 0
    seq = sturm_sequence(squarefree(f))
    return _sign_changes([s(lo) for s in seq]) - _sign_changes([s(hi) for s in seq])


def count_roots_closed(f: PolyQ, lo, hi) -> int:
    """Number of distinct real roots of f in [lo, hi]."""
    lo = _frac(lo)
    return sturm_count_roots(f, lo, hi) + (1 if f(lo) == 0 else 0)


def isolate_roots(f: PolyQ, lo, hi) -> list[tuple[Fraction, Fraction]]:
    """Isolating data for the distinct real roots of f in [lo, hi], sorted.

    An item (a, a) is an exact rational root. An item (a, b) with a < b holds
    exactly one root in the open interval and f is non-zero at a and b.
    """
    if f.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    lo, hi = _frac(lo), _frac(hi)
    g = squarefree(f)
    if g.degree <= 0:
        return []
    seq = sturm_sequence(g)

    def v(x):
        return _sign_changes([s(x) for s in seq])

    out: list[tuple[Fraction, Fraction]] = []
    for x in {lo, hi}:
        if g(x) == 0:
            out.append((x, x))
    if lo == hi:
        return out

    def open_count(a, b, va, vb):
        return va - vb - (1 if g(b) == 0 else 0)

    va, vb = v(lo), v(hi)
    stack = [(lo, hi, va, vb, open_count(lo, hi, va, vb))]
    while stack:
        a, b, va, vb, n = stack.pop()
        if n == 0:
            continue
        if n == 1 and g(a) != 0 and g(b) != 0:
            out.append((a, b))
            continue
        m = (a + b) / 2
        vm = v(m)
        if g(m) == 0:
            out.append((m, m))
        stack.append((a, m, va, vm, open_count(a, m, va, vm)))
        stack.append((m, b, vm, vb, open_count(m, b, vm, vb)))
    return sorted(set(out))


def refine_root(f: PolyQ, a: Fraction, b: Fraction) -> tuple[Fraction, Fraction]:
    """Halve an isolating interval from isolate_roots once."""
    if a == b:
        return a, b
    g = squarefree(f)
    m = (a + b) / 2
    gm = g(m)
    if gm == 0:
        return m, m
    if (g(a) > 0) != (gm > 0):
        return a, m
    return m, b
