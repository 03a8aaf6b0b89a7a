"""Two-phase tableau simplex with Bland's rule over an exact ordered field.

Entries may be Fractions or AlgNums (exact real algebraic numbers), so the
optimum of an LP with algebraic data is computed without rounding.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..exactnum import AlgNum

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class SimplexResult:
    status: str
    optimum: object = None  # Fraction or AlgNum
    x: list = field(default_factory=list)
    pivots: int = 0


def _simplify(v):
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, AlgNum) and v.is_rational():
        return v.to_fraction()
    return v


def _pivot(T: list[list], basis: list[int], r: int, col: int) -> None:
    piv = T[r][col]
    row = [_simplify(v / piv) for v in T[r]]
    T[r] = row
    for i, other in enumerate(T):
        if i == r:
            continue
        f = other[col]
        if f == 0:
            continue
        T[i] = [_simplify(a - f * b) if b != 0 else a for a, b in zip(other, row)]
    basis[r] = col


def _run(T: list[list], basis: list[int], cost: list, allowed: int) -> tuple[str, int]:
    """Maximize cost.x over the tableau; columns >= allowed never enter."""
    m = len(T)
    pivots = 0
    while True:
        # reduced cost of column j: cost_j - sum_i cost_{basis_i} T[i][j]
        entering = None
        for j in range(allowed):
            if j in basis:
                continue
            rc = cost[j]
            for i in range(m):
                cb = cost[basis[i]]
                if cb != 0 and T[i][j] != 0:
                    rc = rc - cb * T[i][j]
            if rc > 0:
                entering = j
                break
        if entering is None:
            return OPTIMAL, pivots
        best = None
        for i in range(m):
            a = T[i][entering]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < best[1]):
                    best = (ratio, basis[i], i)
        if best is None:
            return UNBOUNDED, pivots
        _pivot(T, basis, best[2], entering)
        pivots += 1


def simplex(A: Sequence[Sequence], b: Sequence, c: Sequence) -> SimplexResult:
    """max c.x s.t. A x <= b, x >= 0."""
    m, n = len(A), len(c)
    zero = Fraction(0)
    neg_rows = [i for i in range(m) if b[i] < 0]
    n_art = len(neg_rows)
    width = n + m + n_art
    T = []
    basis = []
    art_col = n + m
    for i in range(m):
        sign = -1 if b[i] < 0 else 1
        row = [_simplify(sign * A[i][j]) for j in range(n)]
        row += [zero] * (m + n_art)
        row[n + i] = Fraction(sign)
        if sign < 0:
            row[art_col] = Fraction(1)
            basis.append(art_col)
            art_col += 1
        else:
            basis.append(n + i)
        row.append(_simplify(sign * b[i]))
        T.append([_simplify(v) for v in row])
    pivots = 0
    if n_art:
        cost1 = [zero] * (n + m) + [Fraction(-1)] * n_art
        status, k = _run(T, basis, cost1, width)
        pivots += k
        phase1 = sum((T[i][-1] for i in range(m) if basis[i] >= n + m), zero)
        if phase1 != 0:
            return SimplexResult(INFEASIBLE, pivots=pivots)
        # drive zero-level artificials out of the basis
        for i in range(m):
            if basis[i] >= n + m:
                for j in range(n + m):
                    if T[i][j] != 0 and j not in basis:
                        _pivot(T, basis, i, j)
                        pivots += 1
                        break
        keep = [i for i in range(m) if basis[i] < n + m]
        T = [T[i][: n + m] + [T[i][-1]] for i in keep]
        basis = [basis[i] for i in keep]
    else:
        T = [row[: n + m] + [row[-1]] for row in T]
    cost2 = [c[j] for j in range(n)] + [zero] * m
    status, k = _run(T, basis, cost2, n + m)
    pivots += k
    if status == UNBOUNDED:
        return SimplexResult(UNBOUNDED, pivots=pivots)
    x = [zero] * n
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] = T[i][-1]
    opt = zero
    for j in range(n):
        if x[j] != 0:
            opt = opt + c[j] * x[j]
    return SimplexResult(OPTIMAL, _simplify(opt), [_simplify(v) for v in x], pivots)
