"""Set families over [n] as sorted tuples of bitmasks.

Element i of [n] is bit i-1. All operations are pure and return new values.
"""

from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

MAX_N = 64
MAX_CANONICAL_N = 12


class DomainError(ValueError):
    pass


class CapacityError(ValueError):
    pass


class FamilyFormatError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def popcount(m: int) -> int:
    return m.bit_count()


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        if e < 1:
            raise DomainError(f"element {e} is not in [n]")
        m |= 1 << (e - 1)
    return m


def elements_of(m: int) -> list[int]:
    out = []
    i = 1
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return out


def format_subset(m: int) -> str:
    els = elements_of(m)
    return "{" + ",".join(map(str, els)) + "}"


@dataclass(frozen=True)
class SetFamily:
    n: int
    members: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_N:
            raise CapacityError(f"ground set size {self.n} outside 0..{MAX_N}")
        ms = tuple(sorted(set(self.members)))
        limit = 1 << self.n
        if ms and (ms[0] < 0 or ms[-1] >= limit):
            raise DomainError("member outside 2^[n]")
        object.__setattr__(self, "members", ms)

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> "SetFamily":
        fam = []
        for s in sets:
            m = mask_of(s)
            if m >> n:
                raise DomainError(f"set {sorted(s)} not contained in [{n}]")
            fam.append(m)
        return cls(n, tuple(fam))

    @classmethod
    def power_set(cls, n: int) -> "SetFamily":
        if n > 22:
            raise CapacityError("power set too large to materialize")
        return cls(n, tuple(range(1 << n)))

    @classmethod
    def from_predicate(cls, n: int, pred) -> "SetFamily":
        if n > 22:
            raise CapacityError("explicit families are limited to n <= 22")
        return cls(n, tuple(m for m in range(1 << n) if pred(m)))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, m: int) -> bool:
        i = bisect.bisect_left(self.members, m)
        return i < len(self.members) and self.members[i] == m

    def as_sets(self) -> list[list[int]]:
        return [elements_of(m) for m in self.members]

    def __str__(self) -> str:
        return f"n={self.n} " + "{" + ", ".join(format_subset(m) for m in self.members) + "}"


# --- measure ----------------------------------------------------------------

def profile(f: SetFamily) -> list[int]:
    counts = [0] * (f.n + 1)
    for m in f.members:
        counts[popcount(m)] += 1
    return counts


def measure_from_profile(counts: Sequence[int], n: int, p) -> Fraction:
    p = Fraction(p)
    if not 0 < p < 1:
        raise DomainError(f"p={p} outside (0, 1)")
    q = 1 - p
    return sum((c * p ** k * q ** (n - k) for k, c in enumerate(counts) if c), Fraction(0))


def measure(f: SetFamily, p) -> Fraction:
    return measure_from_profile(profile(f), f.n, p)


def measure_direct(f: SetFamily, p) -> Fraction:
    """Member-by-member sum; an independent route used as an oracle."""
    p = Fraction(p)
    if not 0 < p < 1:
        raise DomainError(f"p={p} outside (0, 1)")
    total = Fraction(0)
    for m in f.members:
        w = Fraction(1)
        for i in range(f.n):
            w *= p if (m >> i) & 1 else 1 - p
        total += w
    return total


# --- shifting ---------------------------------------------------------------

def _check_pair(f: SetFamily, i: int, j: int) -> None:
    if not (1 <= i < j <= f.n):
        raise DomainError(f"shift needs 1 <= i < j <= n, got i={i}, j={j}, n={f.n}")


def shift(f: SetFamily, i: int, j: int) -> SetFamily:
    _check_pair(f, i, j)
    bi, bj = 1 << (i - 1), 1 << (j - 1)
    present = set(f.members)
    out = []
    for g in f.members:
        if g & bj and not g & bi:
            h = (g & ~bj) | bi
            out.append(g if h in present else h)
        else:
            out.append(g)
    return SetFamily(f.n, tuple(out))


def _shift_changes(f: SetFamily, i: int, j: int, present: set) -> bool:
    bi, bj = 1 << (i - 1), 1 << (j - 1)
    return any(g & bj and not g & bi and ((g & ~bj) | bi) not in present for g in f.members)


def is_shifted(f: SetFamily) -> bool:
    present = set(f.members)
    return not any(_shift_changes(f, i, j, present)
                   for i in range(1, f.n + 1) for j in range(i + 1, f.n + 1))


def potential(f: SetFamily) -> int:
    return sum(sum(elements_of(m)) for m in f.members)


def shift_closure(f: SetFamily, trace: list | None = None) -> SetFamily:
    """Shift in lexicographic (i, j) order, restarting after any change.

    If trace is a list, the potential after every applied shift is appended.
    """
    while True:
        present = set(f.members)
        for i in range(1, f.n + 1):
            for j in range(i + 1, f.n + 1):
                if _shift_changes(f, i, j, present):
                    f = shift(f, i, j)
                    if trace is not None:
                        trace.append(potential(f))
                    break
            else:
                continue
            break
        else:
            return f


def shifts_to(g: int, h: int) -> bool:
    """G ~> H: G empty, or |G| <= |H| and the k-th smallest of G is >= that of H."""
    if g == 0:
        return True
    eg, eh = elements_of(g), elements_of(h)
    if len(eg) > len(eh):
        return False
    return all(a >= b for a, b in zip(eg, eh))


# --- intersection predicates ------------------------------------------------

def minimal_members(members: Iterable[int]) -> list[int]:
    """Inclusion-minimal masks among members."""
    ms = sorted(set(members), key=popcount)
    out: list[int] = []
    for m in ms:
        if not any(x & m == x for x in out):
            out.append(m)
    return out


def _min_intersection_size(seqs: Sequence[Sequence[int]], t: int) -> bool:
    """True iff every transversal of seqs has intersection of size >= t.

    Because intersections only shrink, each stage keeps the set of distinct
    partial intersections and fails early on any with fewer than t elements.
    """
    partial = set(seqs[0])
    if any(popcount(x) < t for x in partial):
        return False
    for seq in seqs[1:]:
        nxt = set()
        for x in partial:
            for m in seq:
                y = x & m
                if y not in nxt:
                    if popcount(y) < t:
                        return False
                    nxt.add(y)
        partial = _prune_supersets(nxt)
    return True


def _prune_supersets(masks: set) -> set:
    """Drop masks that contain another mask; they can never be the witness."""
    if len(masks) < 64:
        return set(minimal_members(masks))
    return masks


def is_rwise_t_intersecting(f: SetFamily, r: int, t: int) -> bool:
    if r < 2 or t < 1:
        raise DomainError("need r >= 2 and t >= 1")
    if not f.members:
        return True
    mins = minimal_members(f.members)
    return _min_intersection_size([mins] * r, t)


def are_cross_t_intersecting(fs: Sequence[SetFamily], t: int) -> bool:
    if t < 1:
        raise DomainError("need t >= 1")
    if len({f.n for f in fs}) > 1:
        raise DomainError("families live on different ground sets")
    if any(not f.members for f in fs):
        return True
    return _min_intersection_size([minimal_members(f.members) for f in fs], t)


def common_intersection(f: SetFamily) -> int:
    if not f.members:
        raise DomainError("common intersection of an empty family is not defined here")
    acc = (1 << f.n) - 1
    for m in f.members:
        acc &= m
    return acc


def is_nontrivial(f: SetFamily, r: int, t: int) -> bool:
    return popcount(common_intersection(f)) < t and is_rwise_t_intersecting(f, r, t)


# --- up-sets ----------------------------------------------------------------

def upward_closure(f: SetFamily) -> SetFamily:
    if f.n > 22:
        raise CapacityError("upward closure is limited to n <= 22")
    seen = set(f.members)
    stack = list(f.members)
    while stack:
        m = stack.pop()
        for i in range(f.n):
            b = 1 << i
            if not m & b and (m | b) not in seen:
                seen.add(m | b)
                stack.append(m | b)
    return SetFamily(f.n, tuple(seen))


def is_upset(f: SetFamily) -> bool:
    present = set(f.members)
    return all((m | (1 << i)) in present for m in f.members for i in range(f.n))


# --- isomorphism ------------------------------------------------------------

def relabel(f: SetFamily, perm: Sequence[int]) -> SetFamily:
    """Apply the permutation sending element i to perm[i-1] (1-based)."""
    out = []
    for m in f.members:
        r = 0
        for i in range(f.n):
            if (m >> i) & 1:
                r |= 1 << (perm[i] - 1)
        out.append(r)
    return SetFamily(f.n, tuple(out))


def _element_invariant(f: SetFamily, i: int) -> tuple:
    counts = [0] * (f.n + 1)
    for m in f.members:
        if (m >> i) & 1:
            counts[popcount(m)] += 1
    return tuple(counts)


def canonical_form(f: SetFamily) -> SetFamily:
    """Smallest relabeling (by sorted member tuple) over the permutations
    that list elements in decreasing order of a relabeling-invariant degree
    signature. Isomorphic families get identical results.
    """
    n = f.n
    if n > MAX_CANONICAL_N:
        raise CapacityError(f"canonical form is limited to n <= {MAX_CANONICAL_N}")
    inv = [_element_invariant(f, i) for i in range(n)]
    order = sorted(set(inv), reverse=True)
    classes = [[i for i in range(n) if inv[i] == key] for key in order]
    best = None
    positions = []
    start = 1
    for cls in classes:
        positions.append(list(range(start, start + len(cls))))
        start += len(cls)
    for choice in itertools.product(*[itertools.permutations(pos) for pos in positions]):
        perm = [0] * n
        for cls, targets in zip(classes, choice):
            for src, dst in zip(cls, targets):
                perm[src] = dst
        cand = relabel(f, perm).members
        if best is None or cand < best:
            best = cand
    return SetFamily(n, best if best is not None else ())


def is_isomorphic(f: SetFamily, g: SetFamily) -> bool:
    if f.n != g.n or len(f) != len(g) or profile(f) != profile(g):
        return False
    return canonical_form(f) == canonical_form(g)


# --- the [3]-decomposition ---------------------------------------------------

SUBSETS_OF_3 = [frozenset(s) for k in range(4) for s in itertools.combinations((1, 2, 3), k)]


def decompose_FI(f: SetFamily) -> dict[frozenset, SetFamily]:
    """Map I subset of [3] to G_I = {F minus [3] : F in f, F cap [3] = I} on n-3 elements."""
    if f.n < 4:
        raise DomainError("decomposition needs n >= 4")
    buckets: dict[frozenset, list[int]] = {I: [] for I in SUBSETS_OF_3}
    for m in f.members:
        buckets[frozenset(elements_of(m & 7))].append(m >> 3)
    return {I: SetFamily(f.n - 3, tuple(ms)) for I, ms in buckets.items()}


def decomposition_measure(parts: dict[frozenset, SetFamily], p) -> Fraction:
    p = Fraction(p)
    q = 1 - p
    return sum((p ** len(I) * q ** (3 - len(I)) * measure(g, p) for I, g in parts.items()
                if g.members), Fraction(0))


def acceptable_tau(I1, I2, I3) -> int | None:
    a, b, c = (frozenset(x) for x in (I1, I2, I3))
    if a & b & c:
        return None
    return 7 - (len(a) + len(b) + len(c))


# --- text format ------------------------------------------------------------

def format_family(f: SetFamily) -> str:
    lines = [f"n={f.n}"]
    for m in f.members:
        els = elements_of(m)
        lines.append(",".join(map(str, els)) if els else "{}")
    return "\n".join(lines) + "\n"


def parse_family(text: str) -> SetFamily:
    lines = text.splitlines()
    if not lines or not lines[0].strip().startswith("n="):
        raise FamilyFormatError(1, "first line must be n=<int>")
    try:
        n = int(lines[0].strip()[2:])
    except ValueError:
        raise FamilyFormatError(1, f"bad ground set size {lines[0].strip()!r}") from None
    if not 0 <= n <= MAX_N:
        raise FamilyFormatError(1, f"ground set size {n} outside 0..{MAX_N}")
    members = []
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            continue
        if line == "{}":
            members.append(0)
            continue
        try:
            els = [int(tok) for tok in line.split(",")]
        except ValueError:
            raise FamilyFormatError(lineno, f"not a comma-separated list of integers: {line!r}") from None
        if any(b <= a for a, b in zip(els, els[1:])):
            raise FamilyFormatError(lineno, "elements must be strictly ascending")
        if els[0] < 1 or els[-1] > n:
            raise FamilyFormatError(lineno, f"element outside [1, {n}]")
        members.append(mask_of(els))
    return SetFamily(n, tuple(members))


def read_family(path) -> SetFamily:
    with open(path, encoding="utf-8") as fh:
        return parse_family(fh.read())


def write_family(f: SetFamily, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_family(f))
