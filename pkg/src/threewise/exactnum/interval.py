"""Closed intervals with rational endpoints and outward dyadic rounding."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

DEFAULT_PREC = 128  # bits; 2**-128 < 1e-38


class UndefinedExpression(ArithmeticError):
    """An enclosure hit a square root of a negative box or a zero denominator."""


def _floor_dyadic(x: Fraction, prec: int) -> Fraction:
    return Fraction((x.numerator << prec) // x.denominator, 1 << prec)


def _ceil_dyadic(x: Fraction, prec: int) -> Fraction:
    return Fraction(-((-x.numerator << prec) // x.denominator), 1 << prec)


def sqrt_floor(x: Fraction, prec: int) -> Fraction:
    """Largest multiple of 2**-prec that is <= sqrt(x)."""
    if x < 0:
        raise UndefinedExpression("square root of a negative number")
    scaled = (x.numerator << (2 * prec)) // x.denominator
    return Fraction(isqrt(scaled), 1 << prec)


def sqrt_ceil(x: Fraction, prec: int) -> Fraction:
    """Smallest multiple of 2**-prec that is >= sqrt(x)."""
    if x < 0:
        raise UndefinedExpression("square root of a negative number")
    num = x.numerator << (2 * prec)
    scaled = -(-num // x.denominator)
    r = isqrt(scaled)
    if r * r < scaled:
        r += 1
    return Fraction(r, 1 << prec)


class RInterval:
    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = Fraction(lo)
        hi = lo if hi is None else Fraction(hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    @classmethod
    def point(cls, x) -> "RInterval":
        return cls(x, x)

    def __repr__(self) -> str:
        return f"RInterval({self.lo}, {self.hi})"

    def __eq__(self, other) -> bool:
        return isinstance(other, RInterval) and self.lo == other.lo and self.hi == other.hi

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x) -> bool:
        if isinstance(x, RInterval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def intersect(self, other: "RInterval") -> "RInterval":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            raise ValueError("disjoint intervals")
        return RInterval(lo, hi)

    def hull(self, other: "RInterval") -> "RInterval":
        return RInterval(min(self.lo, other.lo), max(self.hi, other.hi))

    def split(self) -> tuple["RInterval", "RInterval"]:
        m = self.mid
        return RInterval(self.lo, m), RInterval(m, self.hi)

    def rounded(self, prec: int | None) -> "RInterval":
        """Widen outward to the 2**-prec grid (no-op for prec None)."""
        if prec is None:
            return self
        lo = self.lo if self.lo.denominator <= (1 << prec) and (1 << prec) % self.lo.denominator == 0 \
            else _floor_dyadic(self.lo, prec)
        hi = self.hi if self.hi.denominator <= (1 << prec) and (1 << prec) % self.hi.denominator == 0 \
            else _ceil_dyadic(self.hi, prec)
        return RInterval(lo, hi)

    @staticmethod
    def _c(x) -> "RInterval":
        return x if isinstance(x, RInterval) else RInterval(x, x)

    def __add__(self, other):
        o = self._c(other)
        return RInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return RInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        o = self._c(other)
        return RInterval(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other):
        return self._c(other) - self

    def __mul__(self, other):
        o = self._c(other)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RInterval(min(ps), max(ps))

    __rmul__ = __mul__

    def reciprocal(self) -> "RInterval":
        if self.contains_zero():
            raise UndefinedExpression("denominator enclosure contains 0")
        return RInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * self._c(other).reciprocal()

    def __rtruediv__(self, other):
        return self._c(other) * self.reciprocal()

    def __pow__(self, k: int) -> "RInterval":
        if k < 0:
            return (self ** (-k)).reciprocal()
        if k == 0:
            return RInterval(1, 1)
        a, b = self.lo ** k, self.hi ** k
        if k % 2 == 1:
            return RInterval(a, b)
        if self.lo >= 0:
            return RInterval(a, b)
        if self.hi <= 0:
            return RInterval(b, a)
        return RInterval(0, max(a, b))

    def sqrt(self, prec: int = DEFAULT_PREC) -> "RInterval":
        if self.lo < 0:
            raise UndefinedExpression("radicand enclosure dips below 0")
        lo = sqrt_floor(self.lo, prec)
        hi = sqrt_ceil(self.hi, prec)
        return RInterval(lo, hi)

    def __float__(self) -> float:
        return float(self.mid)

    def to_strings(self) -> list[str]:
        return [str(self.lo), str(self.hi)]
