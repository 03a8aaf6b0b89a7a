"""Closed-form bound functions: M3 limit, walk roots, AK/GMPS values and chords."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .constructions import AK, binom, measure_formula
from .exactnum import AlgNum, P, ParamExpr, RInterval, const, sqrt
from .setfam import DomainError

ROOT_PREC = 100  # bits of the bisection enclosures, width 2**-100 < 1e-30


def _frac(p) -> Fraction:
    return p if isinstance(p, Fraction) else Fraction(p)


def _open_unit(p: Fraction) -> None:
    if not 0 < p < 1:
        raise DomainError(f"p={p} outside (0, 1)")


def bd_expr(r: int = 3) -> ParamExpr:
    """(r+1) p^r q + p^(r+1), the p-measure of BD_r(n)."""
    return (r + 1) * P ** r * (1 - P) + P ** (r + 1)


def m3_limit(p) -> Fraction:
    p = _frac(p)
    _open_unit(p)
    q = 1 - p
    if p <= Fraction(1, 3):
        return p * p
    if p <= Fraction(1, 2):
        return 4 * p ** 3 * q + p ** 4
    if p <= Fraction(2, 3):
        return p
    return Fraction(1)


# --- alpha and beta -------------------------------------------------------------

def alpha_expr() -> ParamExpr:
    return (sqrt((1 + 3 * P) / (1 - P)) - 1) / 2


def _alpha_domain(p: Fraction) -> None:
    if not 0 < p < Fraction(2, 3):
        raise DomainError(f"alpha needs 0 < p < 2/3, got {p}")


def alpha(p) -> AlgNum:
    """Exact alpha(p) in Q(sqrt(m)) for rational p."""
    p = _frac(p)
    _alpha_domain(p)
    return alpha_expr().exact(p)


def alpha_num(p, prec: int = ROOT_PREC) -> RInterval:
    p = _frac(p)
    _alpha_domain(p)
    return alpha(p).enclosure(prec)


def _bisect_root(residual, prec: int) -> RInterval:
    """Root in (0, 1) of a convex residual with residual(0) > 0 and residual(1) = 0."""
    lo = Fraction(0)
    hi = None
    for k in range(1, 400):
        x = 1 - Fraction(1, 1 << k)
        if residual(x) < 0:
            hi = x
            break
        if residual(x) == 0:
            return RInterval(x, x)
    if hi is None:
        raise DomainError("no sign change of the residual inside (0, 1)")
    width = Fraction(1, 1 << prec)
    while hi - lo > width:
        mid = (lo + hi) / 2
        v = residual(mid)
        if v == 0:
            return RInterval(mid, mid)
        if v > 0:
            lo = mid
        else:
            hi = mid
    return RInterval(lo, hi)


def root_alpha_general(p, r: int, prec: int = ROOT_PREC) -> RInterval:
    """Enclosure of the root in (0, 1) of X = p + q X^r."""
    p = _frac(p)
    if r < 2 or not 0 < p < 1 - Fraction(1, r):
        raise DomainError(f"need r >= 2 and 0 < p < 1 - 1/r, got p={p}, r={r}")
    q = 1 - p
    return _bisect_root(lambda x: p + q * x ** r - x, prec)


def root_beta(ps: Sequence, prec: int = ROOT_PREC) -> RInterval:
    """Enclosure of the root in (0, 1) of X = prod_i (p_i + q_i X)."""
    ps = [_frac(p) for p in ps]
    r = len(ps)
    if r < 2 or any(not 0 < p < 1 - Fraction(1, r) for p in ps):
        raise DomainError("each p_i must lie in (0, 1 - 1/r)")

    def residual(x):
        v = Fraction(1)
        for p in ps:
            v *= p + (1 - p) * x
        return v - x

    return _bisect_root(residual, prec)


# --- epsilon, GMPS, AK -------------------------------------------------------------

def epsilon_p(p) -> Fraction:
    p = _frac(p)
    return (2 - 3 * p) * (3 * p - 1)


def epsilon_expr() -> ParamExpr:
    return (2 - 3 * P) * (3 * P - 1)


def gmps_value(r: int, t: int, p, a: int) -> Fraction:
    p = _frac(p)
    q = 1 - p
    return (1 - sum((binom(a, j) * p ** j * q ** (a - j) for j in range(t)), Fraction(0))) \
        + (r - 1) * p ** a


def gmps_bound(r: int, t: int, p, n: int) -> tuple[Fraction, int]:
    """Maximum over t <= a <= n and the first maximizing a."""
    p = _frac(p)
    if r < 2 or t < 1 or t > n or not 0 < p <= Fraction(1, 2):
        raise DomainError("gmps_bound needs r >= 2, 1 <= t <= n, 0 < p <= 1/2")
    best, arg = None, None
    for a in range(t, n + 1):
        v = gmps_value(r, t, p, a)
        if best is None or v > best:
            best, arg = v, a
    return best, arg


def ak_measure(n: int, t: int, p) -> Fraction:
    p = _frac(p)
    return max(measure_formula(AK(n, t, i), p) for i in range(0, (n - t) // 2 + 1))


def f_t_index(t: int, p) -> int:
    p = _frac(p)
    return int(((t - 1) * p) // (1 - 2 * p))


def f_t_limit(t: int, p) -> Fraction:
    """Limit of AK(n,t,p) as n grows, for 0 < p <= 1/2."""
    p = _frac(p)
    if t < 1 or not 0 < p <= Fraction(1, 2):
        raise DomainError(f"f_t needs t >= 1 and 0 < p <= 1/2, got t={t}, p={p}")
    if p == Fraction(1, 2):
        return Fraction(1, 2)
    i = f_t_index(t, p)
    m = t + 2 * i
    # i grows like 1/(1 - 2p), so sum over the common denominator b^m in integers
    a, b = p.numerator, p.denominator
    c = b - a
    total = sum(binom(m, j) * a ** j * c ** (m - j) for j in range(t + i, m + 1))
    return Fraction(total, b ** m)


# --- chords ------------------------------------------------------------------------

def chord(g: ParamExpr, p1, p2) -> ParamExpr:
    """Line through (p1, g(p1)) and (p2, g(p2))."""
    p1, p2 = _frac(p1), _frac(p2)
    if not p1 < p2:
        raise DomainError("chord needs p1 < p2")
    g1, g2 = g.at(p1), g.at(p2)
    return (g2 - g1) / (p2 - p1) * (P - p1) + g1


CHORD_LO = Fraction(2, 5)
CHORD_HI = Fraction(1, 2)

TILDE_SLOPES = {
    2: Fraction(401, 125),
    3: Fraction(1565029, 390625),
    4: Fraction(5391614441, 1220703125),
    5: Fraction(17729648464189, 3814697265625),
}


def tilde_alpha() -> ParamExpr:
    """Chord of alpha over [2/5, 1/2] with its constants written out."""
    r5, r33 = sqrt(5), sqrt(33)
    return (-3 - 12 * r5 + 5 * r33) / 6 + (30 * r5 - 10 * r33) / 6 * P


def tilde_a(t: int) -> ParamExpr:
    """Chord of f_t over [2/5, 1/2]: 1/2 + slope_t (p - 1/2)."""
    if t not in TILDE_SLOPES:
        raise DomainError(f"no tabulated chord for t={t}")
    return const(Fraction(1, 2)) + TILDE_SLOPES[t] * (P - Fraction(1, 2))


def f_t_chord_slope(t: int) -> Fraction:
    """Slope of the f_t chord computed from f_t itself (independent of the table)."""
    return (f_t_limit(t, CHORD_HI) - f_t_limit(t, CHORD_LO)) / (CHORD_HI - CHORD_LO)


# --- the c-relation and its Taylor lower bound ---------------------------------------

def c_expr() -> ParamExpr:
    return (1 + sqrt(1 - 4 * P ** 2)) / (2 * P)


def d_expr() -> ParamExpr:
    return Fraction(1375, 216) * P ** 2 - Fraction(325, 108) * P + Fraction(37, 54)


def d_taylor(p) -> Fraction:
    p = _frac(p)
    return Fraction(1375, 216) * p * p - Fraction(325, 108) * p + Fraction(37, 54)
