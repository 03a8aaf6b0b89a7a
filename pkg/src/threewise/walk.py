"""Hitting probabilities of biased lattice walks against the line y = (r-1)x + j.

The walk starts at the origin and steps up (probability p) or right. Its
state is the distance d = (r-1)x + j - y to the line: an up step lowers d by
one, a right step raises it by r-1, and the walk is absorbed at d = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .constructions import binom
from .setfam import CapacityError, DomainError, SetFamily

STEP_LIMIT = 20000


@dataclass(frozen=True)
class WalkSpec:
    """kind "A" uses biases[0] at every step; kind "B" cycles through biases."""

    kind: str
    biases: tuple[Fraction, ...]
    r: int
    j: int
    steps: int

    def __post_init__(self):
        if self.kind not in ("A", "B"):
            raise DomainError("walk kind must be 'A' or 'B'")
        if self.r < 2:
            raise DomainError("r must be at least 2")
        if self.kind == "A" and len(self.biases) != 1:
            raise DomainError("a type A walk has one bias")
        if self.kind == "B" and len(self.biases) != self.r:
            raise DomainError("a type B walk has r biases")
        if any(not 0 < b < 1 for b in self.biases):
            raise DomainError("biases must lie in (0, 1)")
        if self.j < 0 or self.steps < 0:
            raise DomainError("j and the step budget must be non-negative")

    @staticmethod
    def type_a(p, r: int, j: int, steps: int) -> "WalkSpec":
        return WalkSpec("A", (Fraction(p),), r, j, steps)

    @staticmethod
    def type_b(ps: Sequence, j: int, steps: int) -> "WalkSpec":
        return WalkSpec("B", tuple(Fraction(p) for p in ps), len(ps), j, steps)

    def bias_at(self, step: int) -> Fraction:
        """Bias of the given 1-based step."""
        return self.biases[(step - 1) % len(self.biases)]


def hit_prob(spec: WalkSpec) -> Fraction:
    """Exact probability of reaching the line within spec.steps steps.

    Weights are integers scaled by den^k after k steps, den the common
    denominator of the biases. States farther than the remaining budget can
    never reach the line and are dropped, which keeps the result exact.
    """
    if spec.steps > STEP_LIMIT:
        raise CapacityError(f"step budget above {STEP_LIMIT}")
    if spec.j == 0:
        return Fraction(1)
    den = math.lcm(*(b.denominator for b in spec.biases))
    ups = [int(b * den) for b in spec.biases]
    n, r = spec.steps, spec.r
    if spec.j > n:
        return Fraction(0)
    # weights[d] for 0 < d <= remaining budget; index 0 unused
    weights = [0] * (spec.j + 1)
    weights[spec.j] = 1
    hits = 0
    for k in range(1, n + 1):
        a = ups[(k - 1) % len(ups)]
        c = den - a
        budget = n - k
        size = min(len(weights) + r - 1, budget + 1)
        new = [0] * max(size, 1)
        hit = a * weights[1] if len(weights) > 1 else 0
        for d in range(2, min(len(weights), size + 1)):
            w = weights[d]
            if w:
                new[d - 1] += a * w
        for d in range(1, min(len(weights), size - r + 1)):
            w = weights[d]
            if w:
                new[d + r - 1] += c * w
        hits = hits * den + hit
        weights = new
        if not any(weights):
            hits *= den ** (n - k)
            return Fraction(hits, den ** n)
    return Fraction(hits, den ** n)


def hit_prob_ballot(p, r: int, j: int, steps: int) -> Fraction:
    """Type A hitting probability from the hitting-time theorem.

    The distance walk is skip-free downwards, so the first visit to 0 happens
    at step k with probability (j/k) P(S_k = -j); this needs u up steps where
    r u = j + (r-1) k.
    """
    p = Fraction(p)
    q = 1 - p
    if j == 0:
        return Fraction(1)
    total = Fraction(0)
    for k in range(j, steps + 1):
        num = j + (r - 1) * k
        if num % r:
            continue
        u = num // r
        total += Fraction(j, k) * binom(k, u) * p ** u * q ** (k - u)
    return total


# --- walks of set tuples -----------------------------------------------------------

def walk_vector(sets: Sequence[int], n: int) -> tuple[int, ...]:
    """Interleaved incidence vector: entry (j-1)*r + i is 1 iff j is in F_i."""
    out = []
    for elem in range(n):
        for s in sets:
            out.append((s >> elem) & 1)
    return tuple(out)


def hit_step(vector: Sequence[int], j: int, r: int) -> int | None:
    """First prefix length whose endpoint lies on y = (r-1)x + j, or None."""
    d = j
    if d == 0:
        return 0
    for k, bit in enumerate(vector, 1):
        d = d - 1 if bit else d + r - 1
        if d == 0:
            return k
    return None


def hits_line(vector: Sequence[int], j: int, r: int) -> bool:
    return hit_step(vector, j, r) is not None


def frankl_index(sets: Sequence[int], n: int, t: int) -> int | None:
    """Some j in [n] with sum_i |F_i cap [j]| >= t + (r-1) j, or None."""
    r = len(sets)
    for j in range(1, n + 1):
        head = (1 << j) - 1
        if sum(bin(s & head).count("1") for s in sets) >= t + (r - 1) * j:
            return j
    return None


def tuples_hit(families: Sequence[SetFamily], t: int) -> bool:
    """Every transversal tuple's walk reaches L_{rt}."""
    import itertools
    r = len(families)
    n = families[0].n
    for combo in itertools.product(*(f.members for f in families)):
        if not hits_line(walk_vector(combo, n), r * t, r):
            return False
    return True
