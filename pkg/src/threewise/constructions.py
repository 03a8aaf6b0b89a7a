"""Named families: explicit builders for small n and exact counts for large n."""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .setfam import CapacityError, DomainError, SetFamily, mask_of, popcount

BUILD_LIMIT = 22

_ARITY = {"BD": 2, "AK": 3, "F1": 1, "F2": 1, "F3": 1, "FRS": 3, "BD_UNIF": 3, "FRS_UNIF": 4}
_PARAM_NAMES = {
    "BD": ("r", "n"), "AK": ("n", "t", "i"), "F1": ("n",), "F2": ("n",), "F3": ("n",),
    "FRS": ("r", "n", "s"), "BD_UNIF": ("r", "n", "k"), "FRS_UNIF": ("r", "n", "k", "s"),
}


class UnsupportedConstruction(ValueError):
    pass


@dataclass(frozen=True)
class ConstructionId:
    tag: str
    params: tuple[int, ...]

    def __post_init__(self):
        if self.tag not in _ARITY:
            raise DomainError(f"unknown construction {self.tag!r}")
        if len(self.params) != _ARITY[self.tag]:
            raise DomainError(f"{self.tag} takes {_ARITY[self.tag]} parameters")

    def __getattr__(self, name):
        names = _PARAM_NAMES.get(object.__getattribute__(self, "tag"), ())
        if name in names:
            return self.params[names.index(name)]
        raise AttributeError(name)

    def __str__(self) -> str:
        return f"{self.tag}({','.join(map(str, self.params))})"

    @classmethod
    def parse(cls, text: str) -> "ConstructionId":
        m = re.fullmatch(r"\s*([A-Z_0-9]+)\s*\(([-\d,\s]*)\)\s*", text)
        if not m:
            raise DomainError(f"cannot parse construction {text!r}; expected e.g. BD(3,5)")
        params = tuple(int(x) for x in m.group(2).split(",") if x.strip())
        return cls(m.group(1), params)


def BD(r, n): return ConstructionId("BD", (r, n))  # noqa: E704
def AK(n, t, i): return ConstructionId("AK", (n, t, i))  # noqa: E704
def F1(n): return ConstructionId("F1", (n,))  # noqa: E704
def F2(n): return ConstructionId("F2", (n,))  # noqa: E704
def F3(n): return ConstructionId("F3", (n,))  # noqa: E704
def FRS(r, n, s): return ConstructionId("FRS", (r, n, s))  # noqa: E704
def BD_UNIF(r, n, k): return ConstructionId("BD_UNIF", (r, n, k))  # noqa: E704
def FRS_UNIF(r, n, k, s): return ConstructionId("FRS_UNIF", (r, n, k, s))  # noqa: E704


def binom(a: int, b: int) -> int:
    """C(a, b), zero outside 0 <= b <= a."""
    if b < 0 or a < 0 or b > a:
        return 0
    return math.comb(a, b)


def _prefix(k: int) -> int:
    return (1 << k) - 1


def frs_j0(r: int, k: int, s: int) -> int:
    return ((r - s - 1) * (k + 1 - s)) // (r - s) + 1


def _validate(cid: ConstructionId) -> None:
    tag, ps = cid.tag, cid.params
    if tag == "BD":
        r, n = ps
        if r < 2 or n < r + 1:
            raise DomainError("BD(r,n) needs r >= 2 and n >= r+1")
    elif tag == "AK":
        n, t, i = ps
        if t < 1 or i < 0 or t + 2 * i > n:
            raise DomainError("AK(n,t,i) needs t >= 1, i >= 0, t+2i <= n")
    elif tag in ("F1", "F2", "F3"):
        if ps[0] < 3:
            raise DomainError(f"{tag}(n) needs n >= 3")
    elif tag == "FRS":
        r, n, s = ps
        if r < 2 or not 0 <= s <= r - 1 or n < s + 1:
            raise DomainError("FRS(r,n,s) needs r >= 2, 0 <= s <= r-1, n > s")
    elif tag == "BD_UNIF":
        r, n, k = ps
        if r < 2 or n < r + 1 or not 0 <= k <= n:
            raise DomainError("BD_UNIF(r,n,k) needs r >= 2, n >= r+1, 0 <= k <= n")
    elif tag == "FRS_UNIF":
        r, n, k, s = ps
        if r < 2 or not 0 <= s <= r - 1 or k < s or k > n or k + 1 > n:
            raise DomainError("FRS_UNIF(r,n,k,s) needs 0 <= s <= r-1, s <= k, k+1 <= n")


def _ground(cid: ConstructionId) -> int:
    return cid.params[0] if cid.tag in ("AK", "F1", "F2", "F3") else cid.params[1]


def build(cid: ConstructionId) -> SetFamily:
    _validate(cid)
    n = _ground(cid)
    if n > BUILD_LIMIT:
        raise CapacityError(f"explicit families are limited to n <= {BUILD_LIMIT}")
    tag, ps = cid.tag, cid.params
    full = _prefix(n)
    if tag == "BD":
        r = ps[0]
        head = _prefix(r + 1)
        return SetFamily.from_predicate(n, lambda m: popcount(m & head) >= r)
    if tag == "AK":
        _, t, i = ps
        head = _prefix(t + 2 * i)
        return SetFamily.from_predicate(n, lambda m: popcount(m & head) >= t + i)
    if tag == "F1":
        base = [m for m in range(1 << n) if m & 3 == 3 and m >> 2]
        return SetFamily(n, tuple(base) + (full ^ 1, full ^ 2))
    if tag == "F2":
        # |F cap [2,n]| >= n/2 compared as 2|F cap [2,n]| >= n
        base = [m for m in range(1 << n) if m & 1 and 2 * popcount(m >> 1) >= n]
        return SetFamily(n, tuple(base) + (full ^ 1,))
    if tag == "F3":
        return SetFamily.from_predicate(n, lambda m: 3 * popcount(m) > 2 * n)
    if tag == "FRS":
        r, _, s = ps
        head = _prefix(s)
        # |G| > (r-s-1)/(r-s) * n, compared in integers
        members = [m for m in range(1 << n)
                   if m & head == head and (r - s) * popcount(m >> s) > (r - s - 1) * n]
        members += [full ^ (1 << (i - 1)) for i in range(1, s + 1)]
        return SetFamily(n, tuple(members))
    if tag == "BD_UNIF":
        r, _, k = ps
        head = _prefix(r + 1)
        return SetFamily(n, tuple(mask_of(c) for c in itertools.combinations(range(1, n + 1), k)
                                  if popcount(mask_of(c) & head) >= r))
    r, _, k, s = ps
    j0 = frs_j0(r, k, s)
    head = _prefix(s)
    window = _prefix(k + 1) ^ head
    members = []
    for c in itertools.combinations(range(1, n + 1), k):
        m = mask_of(c)
        if m & head == head and popcount(m & window) >= j0:
            members.append(m)
    kfull = _prefix(k + 1)
    members += [kfull ^ (1 << (i - 1)) for i in range(1, s + 1)]
    return SetFamily(n, tuple(members))


def _tail(n: int, lo_exclusive_num: int, lo_den: int, p: Fraction) -> Fraction:
    """Sum over j with lo_den*j > lo_exclusive_num of C(n,j) p^j q^(n-j)."""
    q = 1 - p
    return sum((binom(n, j) * p ** j * q ** (n - j) for j in range(n + 1)
                if lo_den * j > lo_exclusive_num), Fraction(0))


def measure_formula(cid: ConstructionId, p) -> Fraction:
    """Closed-form p-measure for BD, AK, F1, F2 and F3."""
    _validate(cid)
    p = Fraction(p)
    if not 0 < p < 1:
        raise DomainError(f"p={p} outside (0, 1)")
    q = 1 - p
    tag, ps = cid.tag, cid.params
    if tag == "BD":
        r = ps[0]
        return (r + 1) * p ** r * q + p ** (r + 1)
    if tag == "AK":
        _, t, i = ps
        m = t + 2 * i
        return sum((binom(m, j) * p ** j * q ** (m - j) for j in range(t + i, m + 1)), Fraction(0))
    if tag == "F1":
        n = ps[0]
        return p ** 2 * (1 - q ** (n - 2)) + 2 * p ** (n - 1) * q
    if tag == "F2":
        n = ps[0]
        s = sum((binom(n - 1, k) * p ** k * q ** (n - 1 - k) for k in range(n) if 2 * k >= n), Fraction(0))
        return p * s + q * p ** (n - 1)
    if tag == "F3":
        n = ps[0]
        return _tail(n, 2 * n, 3, p)
    raise UnsupportedConstruction(f"no closed-form measure for {cid}")


def uniform_count(cid: ConstructionId) -> int:
    _validate(cid)
    if cid.tag == "BD_UNIF":
        r, n, k = cid.params
        return (r + 1) * binom(n - r - 1, k - r) + binom(n - r - 1, k - r - 1)
    if cid.tag == "FRS_UNIF":
        r, n, k, s = cid.params
        j0 = frs_j0(r, k, s)
        return s + sum(binom(k + 1 - s, j) * binom(n - k - 1, k - s - j)
                       for j in range(j0, k + 2 - s))
    raise UnsupportedConstruction(f"{cid} is not a uniform construction")
