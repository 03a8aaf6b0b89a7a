"""Exhaustive searches over up-sets, cross-intersecting triples and uniform counts.

Up-sets are handled as truth tables: bit m of the integer is set when the
subset with mask m belongs to the family. An up-set U on [n] splits into
U0 = {A in U : n not in A} and U1 = {A : A + n in U}, both up-sets on [n-1]
with U0 contained in U1, and every such pair arises exactly once.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .constructions import BD_UNIF, FRS, FRS_UNIF, F1, binom, build, measure_formula, uniform_count
from .setfam import (CapacityError, DomainError, SetFamily, are_cross_t_intersecting,
                     canonical_form, common_intersection, is_nontrivial, is_shifted, measure,
                     popcount)

UPSET_LIMIT = 6
DEDEKIND = (2, 3, 6, 20, 168, 7581, 7828354)


def _check_n(n: int, limit: int = UPSET_LIMIT) -> None:
    if n < 0:
        raise DomainError("n must be non-negative")
    if n > limit:
        raise CapacityError(f"up-set enumeration is limited to n <= {limit}")


@lru_cache(maxsize=None)
def upset_tables(n: int) -> tuple[int, ...]:
    """Truth tables of all up-sets on [n]; n <= 5 is materialized."""
    _check_n(n, 5)
    if n == 0:
        return (0, 1)
    half = 1 << (n - 1)
    smaller = upset_tables(n - 1)
    out = []
    for u1 in smaller:
        for u0 in smaller:
            if u0 & ~u1 == 0:
                out.append(u0 | (u1 << half))
    return tuple(out)


def table_to_family(table: int, n: int) -> SetFamily:
    return SetFamily(n, tuple(m for m in range(1 << n) if table >> m & 1))


def family_to_table(f: SetFamily) -> int:
    t = 0
    for m in f.members:
        t |= 1 << m
    return t


def enumerate_upsets(n: int) -> Iterator[SetFamily]:
    """Every up-closed family over 2^[n] exactly once (n <= 6)."""
    _check_n(n)
    if n <= 5:
        for t in upset_tables(n):
            yield table_to_family(t, n)
        return
    half = 1 << (n - 1)
    smaller = upset_tables(n - 1)
    for u1 in smaller:
        for u0 in smaller:
            if u0 & ~u1 == 0:
                yield table_to_family(u0 | (u1 << half), n)


def count_upsets(n: int) -> int:
    """Number of up-sets on [n], counted from the U0 <= U1 split."""
    _check_n(n)
    if n == 0:
        return 2
    smaller = np.array(upset_tables(n - 1), dtype=np.uint64)
    total = 0
    for u1 in smaller:
        total += int(np.count_nonzero((smaller & ~u1) == 0))
    return total


def shifted_upsets(n: int) -> list[SetFamily]:
    """Shifted up-sets on [n], n <= 5."""
    return [f for f in enumerate_upsets(n) if is_shifted(f)]


# --- measures on truth tables ----------------------------------------------------

def _weights(n: int, p: Fraction) -> list[Fraction]:
    q = 1 - p
    by_size = [p ** k * q ** (n - k) for k in range(n + 1)]
    return [by_size[popcount(m)] for m in range(1 << n)]


def _table_measure(table: int, weights: Sequence[Fraction]) -> Fraction:
    total = Fraction(0)
    m = 0
    while table:
        if table & 1:
            total += weights[m]
        table >>= 1
        m += 1
    return total


# --- non-trivial 3-wise intersecting maxima -------------------------------------------

@dataclass
class OptimumResult:
    value: Fraction
    optima: list[SetFamily]  # one canonical representative per isomorphism class
    candidates: int


def _collect(best, n, value, table):
    if best[0] is None or value > best[0]:
        best[0] = value
        best[1] = {table}
    elif value == best[0]:
        best[1].add(table)


def _classes(tables: Iterable[int], n: int) -> list[SetFamily]:
    forms = {canonical_form(table_to_family(t, n)) for t in tables}
    return sorted(forms, key=lambda f: f.members)


def max_nontrivial_3wise(n: int, p) -> OptimumResult:
    """Maximum p-measure of a non-trivial 3-wise intersecting up-set, by brute force."""
    p = Fraction(p)
    if not 0 < p < 1:
        raise DomainError("p must lie in (0, 1)")
    if not 4 <= n <= 5:
        raise CapacityError("the brute-force scan covers 4 <= n <= 5; use max_nontrivial_3wise_split")
    weights = _weights(n, p)
    best = [None, set()]
    count = 0
    for table in upset_tables(n):
        if not table:
            continue
        f = table_to_family(table, n)
        if not is_nontrivial(f, 3, 1):
            continue
        count += 1
        _collect(best, n, _table_measure(table, weights), table)
    return OptimumResult(best[0], _classes(best[1], n), count)


def _pair_meets_table(u1: int, m: int) -> int:
    """Truth table of subsets of [m] meeting every Y & Z with Y, Z in the up-set u1."""
    members = [x for x in range(1 << m) if u1 >> x & 1]
    mins = sorted({y & z for y in members for z in members}, key=popcount)
    reduced = []
    for x in mins:
        if not any(r & x == r for r in reduced):
            reduced.append(x)
    table = 0
    for x in range(1 << m):
        if all(x & y for y in reduced):
            table |= 1 << x
    return table


def max_nontrivial_3wise_split(n: int, p) -> OptimumResult:
    """Same maximum through the U0/U1 split.

    U is 3-wise intersecting iff every member of U0 meets every pairwise
    intersection of U1, and non-trivial iff U0 is non-empty and U1 has empty
    common intersection. For fixed U1 the allowed U0 form the up-sets inside
    W = U1 & meets(U1), so W itself is the unique best choice.
    """
    p = Fraction(p)
    if not 0 < p < 1:
        raise DomainError("p must lie in (0, 1)")
    if not 2 <= n <= UPSET_LIMIT:
        raise CapacityError(f"the split search covers 2 <= n <= {UPSET_LIMIT}")
    m = n - 1
    q = 1 - p
    weights = _weights(m, p)
    half = 1 << m
    full = (1 << m) - 1
    best = [None, set()]
    count = 0
    for u1 in upset_tables(m):
        if not u1:
            continue
        common = full
        for x in range(half):
            if u1 >> x & 1:
                common &= x
        if common:
            continue
        w = u1 & _pair_meets_table(u1, m)
        if not w:
            continue
        count += 1
        value = q * _table_measure(w, weights) + p * _table_measure(u1, weights)
        _collect(best, n, value, w | (u1 << half))
    return OptimumResult(best[0], _classes(best[1], n), count)


# --- 3-cross sums --------------------------------------------------------------------

@dataclass
class CrossSumResult:
    value: Fraction | None
    triple: tuple[SetFamily, ...] | None
    triples_examined: int


def _meets_pairs_table(f1: SetFamily, f2: SetFamily, t: int) -> int:
    """Truth table of X with |A & B & X| >= t for all A in f1, B in f2."""
    inter = {a & b for a in f1.members for b in f2.members}
    table = 0
    for x in range(1 << f1.n):
        if all(popcount(x & y) >= t for y in inter):
            table |= 1 << x
    return table


def _common_of(fams: Sequence[SetFamily]) -> int:
    acc = (1 << fams[0].n) - 1
    for f in fams:
        acc &= common_intersection(f)
    return acc


def max_cross_sum(n: int, t: int, p, require_shifted: bool = False,
                  require_no_common: bool = False) -> CrossSumResult:
    """Max of mu(F1) + mu(F2) + mu(F3) over non-empty 3-cross t-intersecting up-sets.

    Without the shiftedness filter the third family is taken as the largest
    up-set compatible with the first two; a smaller third family never has a
    larger measure or a smaller common intersection. With the filter all
    triples of shifted up-sets are scanned.
    """
    p = Fraction(p)
    if not 0 < p < 1 or t < 1:
        raise DomainError("need 0 < p < 1 and t >= 1")
    if not 1 <= n <= 4:
        raise CapacityError("cross-sum search is limited to n <= 4")
    weights = _weights(n, p)
    ups = [f for f in enumerate_upsets(n) if f.members]
    best_val, best_triple, examined = None, None, 0
    if require_shifted:
        ups = [f for f in ups if is_shifted(f)]
        meas = [measure(f, p) for f in ups]
        for i, j, k in itertools.combinations_with_replacement(range(len(ups)), 3):
            trip = (ups[i], ups[j], ups[k])
            examined += 1
            val = meas[i] + meas[j] + meas[k]
            if best_val is not None and val <= best_val:
                continue
            if require_no_common and _common_of(trip):
                continue
            if not are_cross_t_intersecting(trip, t):
                continue
            best_val, best_triple = val, trip
        return CrossSumResult(best_val, best_triple, examined)
    meas = [measure(f, p) for f in ups]
    for i, j in itertools.combinations_with_replacement(range(len(ups)), 2):
        examined += 1
        table = _meets_pairs_table(ups[i], ups[j], t)
        if not table:
            continue
        third = table_to_family(table, n)
        trip = (ups[i], ups[j], third)
        if require_no_common and _common_of(trip):
            continue
        val = meas[i] + meas[j] + _table_measure(table, weights)
        if best_val is None or val > best_val:
            best_val, best_triple = val, trip
    return CrossSumResult(best_val, best_triple, examined)


def max_cross_sum_brute(n: int, t: int, p, require_no_common: bool = False) -> Fraction | None:
    """All ordered triples of non-empty up-sets; an oracle for n <= 3."""
    p = Fraction(p)
    if n > 3:
        raise CapacityError("the brute-force cross-sum oracle is limited to n <= 3")
    ups = [f for f in enumerate_upsets(n) if f.members]
    meas = [measure(f, p) for f in ups]
    best = None
    for i, j, k in itertools.product(range(len(ups)), repeat=3):
        trip = (ups[i], ups[j], ups[k])
        if require_no_common and _common_of(trip):
            continue
        if are_cross_t_intersecting(trip, t):
            v = meas[i] + meas[j] + meas[k]
            best = v if best is None or v > best else best
    return best


# --- uniform counterexample scan ----------------------------------------------------

@dataclass
class ScanRow:
    k: int
    bd: int
    frs: dict  # s -> count
    verdict: bool


def parse_k_range(text: str) -> list[int]:
    """'63..90', '40' or '5,6,9' as a list of integers."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",") if x.strip()]


def counterexample_scan(n: int, r: int, ks: Iterable[int]) -> list[ScanRow]:
    """|F_r(n,k,1)| against |BD_r(n,k)| and |F_r(n,k,s)| for s = 2..r-1."""
    rows = []
    for k in ks:
        bd = uniform_count(BD_UNIF(r, n, k))
        frs = {s: uniform_count(FRS_UNIF(r, n, k, s)) for s in range(1, r)}
        others = [bd] + [frs[s] for s in range(2, r)]
        rows.append(ScanRow(k, bd, frs, frs[1] > max(others)))
    return rows


def scan_csv(rows: Sequence[ScanRow], r: int) -> str:
    header = ["k", "BD"] + [f"F_{s}" for s in range(1, r)] + ["verdict"]
    lines = [",".join(header)]
    for row in rows:
        cells = [str(row.k), str(row.bd)] + [str(row.frs[s]) for s in range(1, r)]
        cells.append("TRUE" if row.verdict else "FALSE")
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


# --- constructions for M_r and finite-n trends -----------------------------------------

@dataclass
class TrendRow:
    n: int
    measure: Fraction
    nontrivial: bool | None


def frs_measure(r: int, n: int, s: int, p) -> Fraction:
    """p-measure of FRS(r, n, s) from its size profile."""
    p = Fraction(p)
    q = 1 - p
    body = sum((binom(n - s, g) * p ** g * q ** (n - s - g)
                for g in range(n - s + 1) if (r - s) * g > (r - s - 1) * n), Fraction(0))
    return p ** s * body + s * p ** (n - 1) * q


def prop_Mr_constructions(r: int, s: int, ns: Sequence[int], p,
                          check_intersection: bool = True) -> list[TrendRow]:
    """mu_p(FRS(r, n, s)) along ns, with the non-trivial r-wise check when n <= 14."""
    if r > 5:
        raise CapacityError("r is limited to 5")
    rows = []
    for n in ns:
        nontrivial = None
        if check_intersection:
            if n > 14:
                raise CapacityError("intersection checks are limited to n <= 14")
            nontrivial = is_nontrivial(build(FRS(r, n, s)), r, 1)
        rows.append(TrendRow(n, frs_measure(r, n, s, p), nontrivial))
    return rows


def f1_trend(p, ns: Sequence[int]) -> list[tuple[int, Fraction]]:
    """mu_p(F1(n)) along ns; it approaches p^2 from below."""
    return [(n, measure_formula(F1(n), p)) for n in ns]
