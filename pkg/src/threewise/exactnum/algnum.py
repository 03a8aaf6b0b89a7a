"""Exact arithmetic in multiquadratic fields Q(sqrt(p1), sqrt(p2), ...).

An AlgNum is a finite sum of c_S * sqrt(prod S) over sets S of primes, with
rational c_S. Distinct squarefree radicands are linearly independent over Q,
so the representation is canonical: zero testing and equality are exact.
Signs are decided by interval refinement, which terminates because a
non-zero element has a positive distance from 0.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import prod

from sympy import factorint

from .interval import RInterval, sqrt_ceil, sqrt_floor

Key = frozenset  # frozenset[int] of primes
_ONE: Key = frozenset()


@lru_cache(maxsize=4096)
def squarefree_split(m: int) -> tuple[int, frozenset]:
    """Write m > 0 as s**2 * (product of the returned primes)."""
    if m <= 0:
        raise ValueError("squarefree_split needs a positive integer")
    s = 1
    primes = []
    for p, e in factorint(m).items():
        s *= p ** (e // 2)
        if e % 2:
            primes.append(p)
    return s, frozenset(primes)


def _radical_bounds(key: Key, prec: int) -> tuple[Fraction, Fraction]:
    if not key:
        return Fraction(1), Fraction(1)
    m = Fraction(prod(key))
    return sqrt_floor(m, prec), sqrt_ceil(m, prec)


class AlgNum:
    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms: dict[Key, Fraction] = {k: Fraction(v) for k, v in (terms or {}).items() if v != 0}

    # construction -----------------------------------------------------
    @classmethod
    def rational(cls, x) -> "AlgNum":
        return cls({_ONE: Fraction(x)})

    @classmethod
    def sqrt_of(cls, x) -> "AlgNum":
        """Exact principal square root of a non-negative rational."""
        x = Fraction(x)
        if x < 0:
            raise ValueError(f"square root of negative rational {x}")
        if x == 0:
            return cls()
        s, primes = squarefree_split(x.numerator * x.denominator)
        return cls({primes: Fraction(s, x.denominator)})

    @staticmethod
    def coerce(x) -> "AlgNum":
        if isinstance(x, AlgNum):
            return x
        if isinstance(x, (int, Fraction)):
            return AlgNum.rational(x)
        return NotImplemented

    # structure --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return all(not k for k in self.terms)

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("irrational algebraic number")
        return self.terms.get(_ONE, Fraction(0))

    def primes(self) -> frozenset:
        out = set()
        for k in self.terms:
            out |= k
        return frozenset(out)

    def conjugate(self, prime: int) -> "AlgNum":
        return AlgNum({k: (-v if prime in k else v) for k, v in self.terms.items()})

    def __repr__(self) -> str:
        return f"AlgNum({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=lambda s: (len(s), sorted(s))):
            c = self.terms[k]
            if not k:
                parts.append(str(c))
            else:
                parts.append(f"{c}*sqrt({prod(k)})")
        return " + ".join(parts)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = AlgNum.coerce(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out.get(k, 0) + v
        return AlgNum(out)

    __radd__ = __add__

    def __neg__(self):
        return AlgNum({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        o = AlgNum.coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return AlgNum.coerce(other) - self

    def __mul__(self, other):
        o = AlgNum.coerce(other)
        if o is NotImplemented:
            return o
        out: dict[Key, Fraction] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in o.terms.items():
                shared = k1 & k2
                c = v1 * v2 * (prod(shared) if shared else 1)
                k = k1 ^ k2
                out[k] = out.get(k, 0) + c
        return AlgNum(out)

    __rmul__ = __mul__

    def inverse(self) -> "AlgNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return AlgNum.rational(1 / self.to_fraction())
        g = min(self.primes())
        conj = self.conjugate(g)
        return conj * (self * conj).inverse()

    def __truediv__(self, other):
        o = AlgNum.coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return AlgNum.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = AlgNum.rational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def sqrt(self) -> "AlgNum":
        if not self.is_rational():
            raise NotImplementedError("nested square roots are not supported")
        return AlgNum.sqrt_of(self.to_fraction())

    # order ------------------------------------------------------------
    def enclosure(self, prec: int = 128) -> RInterval:
        lo = hi = Fraction(0)
        for k, c in self.terms.items():
            a, b = _radical_bounds(k, prec)
            if c >= 0:
                lo += c * a
                hi += c * b
            else:
                lo += c * b
                hi += c * a
        return RInterval(lo, hi)

    def sign(self) -> int:
        if self.is_zero():
            return 0
        if self.is_rational():
            v = self.to_fraction()
            return 1 if v > 0 else -1
        prec = 64
        while True:
            e = self.enclosure(prec)
            if e.lo > 0:
                return 1
            if e.hi < 0:
                return -1
            prec *= 2

    def __eq__(self, other) -> bool:
        o = AlgNum.coerce(other)
        if o is NotImplemented:
            return False
        return self.terms == o.terms

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.to_fraction())
        return hash(frozenset(self.terms.items()))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __float__(self) -> float:
        if self.is_zero():
            return 0.0
        prec = 80
        while True:
            enc = self.enclosure(prec)
            if not enc.contains_zero() and enc.width <= min(abs(enc.lo), abs(enc.hi)) / 2 ** 60:
                return float(enc.mid)
            prec *= 2

    def __abs__(self):
        return -self if self.sign() < 0 else self

