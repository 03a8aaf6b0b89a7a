"""Dual certificates for the case LPs, and their verification over a p-interval.

A certificate is a feasible dual vector y(p) for a parametric LP
max c.x, A x <= b, x >= 0. Weak duality gives c.x <= b.y for every feasible
x, so proving y >= 0, A^T y >= c and b.y <= target on the whole interval
bounds the primal optimum by the target there.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from fractions import Fraction

from ..bounds import c_expr, epsilon_expr, tilde_a, tilde_alpha
from ..exactnum import (INCONCLUSIVE, SUCCESS, VIOLATION, P, ParamExpr, ProofReport, Q,
                        RInterval, const, prove_nonneg)
from .model import ParamLP, Row
from .simplex import OPTIMAL, simplex

PASS = "PASS"
FAIL = "FAIL"

C4_INTERVAL = (Fraction(1, 3), Fraction(1, 2))
C5_INTERVAL = (Fraction(2, 5), Fraction(1, 2))
SPLIT_G3 = Fraction(453264, 1000000)
SPLIT_G0 = Fraction(424803, 1000000)
THEOREM_MARGIN = Fraction(18, 10000)
# pq^2 - p^2q(1-1/c) - p^3 dips below zero for p near 1/2; this quadratic lift
# keeps y7 >= 0 there while costing almost nothing near p = 2/5
C5_3_LIFT = 2


def bd3_expr() -> ParamExpr:
    return 4 * P ** 3 * Q + P ** 4


@dataclass(frozen=True)
class DualCertificate:
    case_id: str
    label: str
    lp: ParamLP
    duals: dict  # row label -> ParamExpr
    interval: tuple[Fraction, Fraction]
    target: ParamExpr
    max_depth: int = 40

    def __post_init__(self):
        missing = set(self.lp.labels) - set(self.duals)
        extra = set(self.duals) - set(self.lp.labels)
        if missing or extra:
            raise ValueError(f"{self.case_id}: dual vector does not match rows "
                             f"(missing {sorted(missing)}, extra {sorted(extra)})")

    def y(self, label: str) -> ParamExpr:
        return ParamExpr.lift(self.duals[label])

    def with_dual(self, label: str, value) -> "DualCertificate":
        duals = dict(self.duals)
        duals[label] = ParamExpr.lift(value)
        return replace(self, duals=duals)

    def perturbed(self, label: str, delta=Fraction(-1, 10)) -> "DualCertificate":
        return self.with_dual(label, self.y(label) + Fraction(delta))

    def to_json(self) -> dict:
        return {
            "case_id": self.case_id,
            "label": self.label,
            "interval": [str(self.interval[0]), str(self.interval[1])],
            "target": self.target.to_json(),
            "max_depth": self.max_depth,
            "lp": self.lp.to_json(),
            "duals": {k: ParamExpr.lift(v).to_json() for k, v in self.duals.items()},
        }

    @staticmethod
    def from_json(obj: dict) -> "DualCertificate":
        return DualCertificate(
            obj["case_id"], obj.get("label", ""), ParamLP.from_json(obj["lp"]),
            {k: ParamExpr.from_json(v) for k, v in obj["duals"].items()},
            (Fraction(obj["interval"][0]), Fraction(obj["interval"][1])),
            ParamExpr.from_json(obj["target"]), obj.get("max_depth", 40),
        )


# --- dual quantities ---------------------------------------------------------------

def dual_objective(cert: DualCertificate) -> ParamExpr:
    total = const(0)
    for row in cert.lp.rows:
        y = cert.y(row.label)
        if not y.is_const_value(0):
            total = total + row.rhs * y
    return total


def dual_column(cert: DualCertificate, var: str) -> ParamExpr:
    """(A^T y)_var - c_var; the dual constraint asks for this to be >= 0."""
    total = const(0)
    for row in cert.lp.rows:
        a = row.coeff(var)
        y = cert.y(row.label)
        if a.is_const_value(0) or y.is_const_value(0):
            continue
        total = total + (y if a.is_const_value(1) else a * y)
    return total - ParamExpr.lift(cert.lp.objective.get(var, 0))


# --- verification --------------------------------------------------------------------

@dataclass
class CheckResult:
    kind: str
    column_or_index: str
    status: str
    method: str
    boxes_examined: int
    witness: RInterval | None = None
    detail: str = ""

    def to_json(self) -> dict:
        out = {"kind": self.kind, "column_or_index": self.column_or_index,
               "status": self.status, "method": self.method,
               "boxes_examined": self.boxes_examined}
        if self.witness is not None:
            out["witness_box"] = self.witness.to_strings()
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class CertificateReport:
    case_id: str
    interval: tuple[Fraction, Fraction]
    checks: list[CheckResult] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def status(self) -> str:
        states = {c.status for c in self.checks}
        if FAIL in states:
            return FAIL
        if INCONCLUSIVE in states:
            return INCONCLUSIVE
        return PASS

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status != PASS]

    def to_json(self) -> dict:
        return {"case_id": self.case_id,
                "interval": [str(self.interval[0]), str(self.interval[1])],
                "checks": [c.to_json() for c in self.checks],
                "status": self.status,
                "seconds": round(self.seconds, 3)}


_STATUS = {SUCCESS: PASS, VIOLATION: FAIL, INCONCLUSIVE: INCONCLUSIVE}


def _check(kind: str, index: str, expr: ParamExpr, interval, depth: int) -> CheckResult:
    rep: ProofReport = prove_nonneg(expr, interval, max_depth=depth)
    return CheckResult(kind, index, _STATUS[rep.status], rep.method, rep.boxes_examined,
                       rep.witness, rep.detail)


def certificate_checks(cert: DualCertificate) -> list[tuple[str, str, ParamExpr]]:
    """Every inequality the certificate must satisfy, as (kind, index, expr >= 0)."""
    out = [("dual_nonneg", label, cert.y(label)) for label in cert.lp.labels]
    out += [("dual_feasible_col", var, dual_column(cert, var)) for var in cert.lp.variables]
    out.append(("objective_le_target", "objective", cert.target - dual_objective(cert)))
    return out


def check_certificate(cert: DualCertificate, fail_fast: bool = False,
                      max_depth: int | None = None) -> CertificateReport:
    depth = cert.max_depth if max_depth is None else max_depth
    start = time.perf_counter()
    report = CertificateReport(cert.case_id, cert.interval)
    for kind, index, expr in certificate_checks(cert):
        result = _check(kind, index, expr, cert.interval, depth)
        report.checks.append(result)
        if fail_fast and result.status != PASS:
            break
    report.seconds = time.perf_counter() - start
    return report


# --- primal cross-check ------------------------------------------------------------------

def simplex_max(lp: ParamLP, p, approximate: bool = False):
    """Exact optimum of the LP instantiated at rational p.

    With approximate=True every irrational entry is replaced by a rational
    enclosure endpoint chosen to enlarge the feasible region (rhs rounded up,
    row coefficients rounded down) and the objective rounded up, so the
    result is a rational upper bound on the true optimum.
    """
    A, b, c = lp.instantiate(p)
    if approximate:
        def up(v):
            return v if isinstance(v, Fraction) else v.enclosure(64).hi

        def down(v):
            return v if isinstance(v, Fraction) else v.enclosure(64).lo

        A = [[down(v) for v in row] for row in A]
        b = [up(v) for v in b]
        c = [up(v) for v in c]
    return simplex(A, b, c)


@dataclass
class DualitySample:
    p: Fraction
    primal: object
    dual: object
    ok: bool


def sample_points(interval, count: int = 21) -> list[Fraction]:
    lo, hi = interval
    return [lo + (hi - lo) * k / (count - 1) for k in range(count)]


def weak_duality_check(cert: DualCertificate, count: int = 21,
                       approximate: bool = False) -> list[DualitySample]:
    """Primal optimum versus the dual objective at evenly spaced rational points."""
    obj = dual_objective(cert)
    out = []
    for p in sample_points(cert.interval, count):
        res = simplex_max(cert.lp, p, approximate=approximate)
        dual = obj.exact(p)
        if res.status != OPTIMAL:
            out.append(DualitySample(p, res.status, dual, False))
            continue
        out.append(DualitySample(p, res.optimum, dual, res.optimum <= dual))
    return out


# --- the case LPs ----------------------------------------------------------------------

def _row(label, coeffs, rhs) -> Row:
    return Row(label, {v: ParamExpr.lift(c) for v, c in coeffs.items()}, ParamExpr.lift(rhs))


def _min_row(label, variables, rhs) -> Row:
    return Row(label, {}, ParamExpr.lift(rhs), min_over=tuple(variables))


def constraint_families_from_claims() -> dict[str, list[Row]]:
    """Row lists of each case claim, labelled by item number."""
    p = P
    c = c_expr()
    ta = tilde_alpha()
    one = 1
    fams = {}
    fams["claim:b2=b3=0"] = [
        _row("1", {"a2": 1, "a3": 1, "b1": 1}, 3 * p),
        _row("2", {"a2": 1, "b1": 1}, one),
        _row("3", {"a3": 1, "b1": 1}, one),
    ]
    fams["claim:b2!=0,b3=0"] = [
        _row("1", {"a2": 1, "a3": 1, "b1": 1}, 3 * p),
        _row("2", {"a1": 1, "a3": 1, "b2": 1}, 3 * p),
        _row("3", {"a3": 1, "b1": 1, "b2": 1}, one),
        _row("4", {"a2": 1, "b1": 1}, one),
        _row("5", {"a1": 1, "b2": 1}, one),
    ]
    fams["claim:b3!=0"] = [
        _row("1", {"a2": 1, "a3": 1, "b1": 1}, 3 * p),
        _row("2", {"a1": 1, "a3": 1, "b2": 1}, 3 * p),
        _row("3", {"a1": 1, "a2": 1, "b3": 1}, 3 * p),
        _row("4", {"a1": 1, "b2": 1, "b3": 1}, one),
        _row("5", {"a2": 1, "b1": 1, "b3": 1}, one),
        _row("6", {"a3": 1, "b1": 1, "b2": 1}, one),
    ]
    fams["claim:g1eqn"] = [
        _min_row("1", ("x1", "x23"), ta ** 3),
        _row("2", {"x12": 1, "x13": c}, p * (c + 1)),
        _row("3", {"x1": 1, "x123": 1}, one),
        _row("4", {"x23": 1, "x123": 1}, one),
        _row("5", {"x1": 1, "x12": 1, "x23": 1}, one),
        _row("6", {"x23": 1}, tilde_a(2)),
        _row("7", {"x1": 1}, tilde_a(3)),
    ]
    fams["claim:g2eqn"] = [
        _row("1", {"x1": 1}, tilde_a(4)),
        _row("2", {"x13": 1}, tilde_a(2)),
        _row("3", {"x2": 1}, ta ** 4),
        _row("4", {"x13": 1, "x123": 1}, one),
        _row("5", {"x1": 1, "x12": 1, "x23": 1}, one),
        _row("6", {"x2": 1, "x12": 1, "x13": 1}, one),
        _row("7", {"x1": 1, "x2": 1, "x123": 1}, one),
    ]
    fams["claim:g3eqn"] = [
        _row("1", {"x1": 1}, tilde_a(4)),
        _row("2", {"x12": 1}, tilde_a(2)),
        _row("3", {"x2": 1}, ta ** 4),
        _row("4", {"x12": 1, "x123": 1}, one),
        _row("5", {"x1": 1, "x12": 1, "x23": 1}, one),
        _row("6", {"x2": 1, "x12": 1, "x13": 1}, one),
        _row("7", {"x1": 1, "x2": 1, "x123": 1}, one),
        _row("8", {"x3": 1, "x2": -1}, 0),
        _row("9", {"x23": 1, "x13": -1}, 0),
        _row("10", {"x13": 1, "x12": -1}, 0),
    ]
    fams["claim:g0eqn"] = [
        _row("1", {"x_empty": 1}, ta ** 7),
        _row("2", {"x2": 1}, ta ** 4),
        _row("3", {"x1": 1}, tilde_a(5)),
        _row("4", {"x123": 1}, p),
        _row("5", {"x1": 1, "x12": 1, "x23": 1}, one),
        _row("6", {"x3": 1, "x2": -1}, 0),
        _row("7", {"x23": 1, "x13": -1}, 0),
        _row("8", {"x13": 1, "x12": -1}, 0),
        _row("9", {"x12": 1, "x123": -1}, 0),
    ]
    return fams


def _relabel(rows: list[Row], prefix: str = "y") -> list[Row]:
    return [replace(r, label=prefix + r.label) for r in rows]


def _box_rows(variables, start: int) -> list[Row]:
    return [_row(f"y{start + k}", {v: 1}, 1) for k, v in enumerate(variables)]


# objective weight of x_I is p^|I| q^(3-|I|)
_WEIGHT = {"x_empty": Q ** 3, "x1": P * Q ** 2, "x2": P * Q ** 2, "x3": P * Q ** 2,
           "x12": P ** 2 * Q, "x13": P ** 2 * Q, "x23": P ** 2 * Q, "x123": P ** 3}


def _c4_lp(claim: str, a_vars, b_vars) -> ParamLP:
    rows = _relabel(constraint_families_from_claims()[claim])
    variables = tuple(a_vars) + tuple(b_vars)
    rows += _box_rows(variables, len(rows) + 1)
    objective = {v: P for v in a_vars} | {v: Q for v in b_vars}
    return ParamLP(variables, objective, tuple(rows))


def _c5_lp(variables, rows) -> ParamLP:
    return ParamLP(tuple(variables), {v: _WEIGHT[v] for v in variables}, tuple(rows))


def _duals(lp: ParamLP, **given) -> dict:
    out = {label: const(0) for label in lp.labels}
    for k, v in given.items():
        if k not in out:
            raise KeyError(f"no row {k}")
        out[k] = ParamExpr.lift(v)
    return out


def _g1_lp(order: str) -> ParamLP:
    """The G_1 LP in subcase x1 <= x23 (order "x1<=x23") or x23 <= x1."""
    claims = {r.label: r for r in constraint_families_from_claims()["claim:g1eqn"]}
    variables = ("x1", "x23", "x13", "x12", "x123")
    if order == "x1<=x23":
        rows = [_row("y0", {"x1": 1, "x23": -1}, 0), claims["1"].resolved("x1", "y1")]
        rows += [replace(claims[k], label="y" + k) for k in ("2", "3", "4", "5", "6")]
    else:
        rows = [_row("y0", {"x1": -1, "x23": 1}, 0), claims["1"].resolved("x23", "y1")]
        rows += [replace(claims[k], label="y" + k) for k in ("2", "3", "4", "5", "7")]
    return _c5_lp(variables, rows)


def _c5_3_printed_duals(lp: ParamLP) -> dict:
    p, q, c = P, Q, c_expr()
    t = p ** 2 * q * (1 - 1 / c)
    return _duals(lp, y1=t, y2=t, y3=p ** 3, y5=t, y7=p * q ** 2 - t - p ** 3)


def builtin_certificates() -> list[DualCertificate]:
    p, q = P, Q
    c = c_expr()
    eps = epsilon_expr()
    bd3 = bd3_expr()
    certs = []

    lp = _c4_lp("claim:b2=b3=0", ("a1", "a2", "a3"), ("b1",))
    certs.append(DualCertificate(
        "C4-1", "B2 and B3 empty", lp,
        _duals(lp, y1=3 * p - 1, y2=1 - 2 * p, y3=1 - 2 * p, y4=p),
        C4_INTERVAL, 3 * p - eps))

    lp = _c4_lp("claim:b2!=0,b3=0", ("a1", "a2", "a3"), ("b1", "b2"))
    certs.append(DualCertificate(
        "C4-2", "B2 nonempty, B3 empty", lp,
        _duals(lp, y2=3 * p - 1, y3=1 - 2 * p, y4=p, y5=1 - 2 * p),
        C4_INTERVAL, 3 * p - eps))

    lp = _c4_lp("claim:b3!=0", ("a1", "a2", "a3"), ("b1", "b2", "b3"))
    certs.append(DualCertificate(
        "C4-3", "B3 nonempty", lp,
        _duals(lp, y1=3 * p - 1, y4=p, y5=1 - 2 * p, y6=1 - 2 * p),
        C4_INTERVAL, 3 * p - eps))

    lp = _g1_lp("x1<=x23")
    certs.append(DualCertificate(
        "C5-2", "G1 nonempty, G2 empty, subcase x1 <= x23", lp,
        _duals(lp,
               y1=p * q ** 2 - p ** 2 * q * (1 - 2 / c) - p ** 3,
               y2=p ** 2 * q / c, y3=p ** 3 - p ** 2 * q / c, y4=p ** 2 * q / c,
               y5=p ** 2 * q * (1 - 1 / c)),
        C5_INTERVAL, bd3 - Fraction(19, 10000)))

    lp = _g1_lp("x23<=x1")
    t = p ** 2 * q * (1 - 1 / c)
    certs.append(DualCertificate(
        "C5-3", "G1 nonempty, G2 empty, subcase x23 <= x1", lp,
        _duals(lp, y1=p ** 2 * q / c, y2=p ** 2 * q / c, y3=p ** 3, y5=t,
               y7=p * q ** 2 - t - p ** 3 + C5_3_LIFT * (p - Fraction(2, 5)) ** 2),
        C5_INTERVAL, bd3 - Fraction(18, 10000)))

    claims = constraint_families_from_claims()
    lp = _c5_lp(("x2", "x1", "x23", "x13", "x12", "x123"), _relabel(claims["claim:g2eqn"]))
    certs.append(DualCertificate(
        "C5-4", "G2 nonempty, G3 empty", lp,
        _duals(lp, y1=p * q * (1 - 2 * p), y2=p ** 2 * (1 - 2 * p), y3=p * q ** 2,
               y4=p ** 3, y5=p ** 2 * q),
        C5_INTERVAL, bd3 - Fraction(4, 1000)))

    g3_vars = ("x3", "x2", "x1", "x23", "x13", "x12", "x123")
    lp = _c5_lp(g3_vars, _relabel(claims["claim:g3eqn"]))
    certs.append(DualCertificate(
        "C5-5a", "G3 nonempty, G empty set absent, p <= 0.453264", lp,
        _duals(lp, y1=p * q ** 2, y2=p ** 2 * (3 - 4 * p), y3=2 * p * q ** 2, y4=p ** 3,
               y8=p * q ** 2, y9=p ** 2 * q, y10=2 * p ** 2 * q),
        (C5_INTERVAL[0], SPLIT_G3), bd3 - Fraction(4, 1000)))
    certs.append(DualCertificate(
        "C5-5b", "G3 nonempty, G empty set absent, p >= 0.453264", lp,
        _duals(lp, y2=p * (1 - 2 * p), y3=p * q, y4=p * (3 * p - p ** 2 - 1),
               y5=p ** 2 * q, y7=p * q * (1 - 2 * p), y8=p * q ** 2, y10=p ** 2 * q),
        (SPLIT_G3, C5_INTERVAL[1]), bd3 - Fraction(4, 1000)))

    g0_vars = ("x_empty", "x3", "x2", "x1", "x23", "x13", "x12", "x123")
    lp = _c5_lp(g0_vars, _relabel(claims["claim:g0eqn"]))
    certs.append(DualCertificate(
        "C5-6a", "G empty set present, p <= 0.424803", lp,
        _duals(lp, y1=q ** 3, y2=2 * p * q ** 2, y3=p * q ** 2, y4=p ** 2 * (3 - 2 * p),
               y6=p * q ** 2, y7=p ** 2 * q, y8=2 * p ** 2 * q, y9=3 * p ** 2 * q),
        (C5_INTERVAL[0], SPLIT_G0), bd3 - Fraction(4, 1000)))
    certs.append(DualCertificate(
        "C5-6b", "G empty set present, p >= 0.424803", lp,
        _duals(lp, y1=q ** 3, y2=2 * p * q ** 2, y3=p * q * (1 - 2 * p), y4=p ** 2,
               y5=p ** 2 * q, y6=p * q ** 2, y8=p ** 2 * q, y9=p ** 2 * q),
        (SPLIT_G0, C5_INTERVAL[1]), bd3 - Fraction(4, 1000)))
    return certs


def printed_variants() -> list[DualCertificate]:
    """Certificates exactly as tabulated where the builtin ones had to be repaired.

    The tabulated C5-3 vector puts p^2q(1-1/c) on the rows of x23 <= ta^3 and
    x12 + c x13 <= p(c+1); the x13 column then needs c >= 2, which fails for
    every p in (2/5, 1/2]. These are expected to FAIL check_certificate.
    """
    lp = _g1_lp("x23<=x1")
    return [DualCertificate("C5-3-printed", "C5-3 with the tabulated dual vector", lp,
                            _c5_3_printed_duals(lp), C5_INTERVAL,
                            bd3_expr() - Fraction(18, 10000))]


def certificate_by_id(case_id: str) -> DualCertificate:
    for cert in builtin_certificates() + printed_variants():
        if cert.case_id == case_id:
            return cert
    raise KeyError(f"unknown certificate {case_id!r}")


# --- the arithmetic case and the theorem-level margin ---------------------------------------

class CaseBoundError(AssertionError):
    pass


G1_EMPTY_COEFF = Fraction(4, 25)
G1_EMPTY_MARGIN = Fraction(1, 100)


def g1_empty_bound_expr(coeff=G1_EMPTY_COEFF) -> ParamExpr:
    return P ** 2 * Q * (3 * P - Fraction(coeff)) + P ** 3


def case_bound_G1_empty(p, coeff=G1_EMPTY_COEFF, margin=G1_EMPTY_MARGIN) -> Fraction:
    """p^2 q (3p - coeff) + p^3, asserted below 4p^3q + p^4 - margin."""
    p = Fraction(p)
    if not C5_INTERVAL[0] <= p <= C5_INTERVAL[1]:
        raise ValueError(f"p={p} outside [2/5, 1/2]")
    q = 1 - p
    bound = p * p * q * (3 * p - Fraction(coeff)) + p ** 3
    limit = 4 * p ** 3 * q + p ** 4 - Fraction(margin)
    if not bound < limit:
        raise CaseBoundError(f"G1-empty bound {bound} is not below {limit} at p={p}")
    return bound


def prove_G1_empty_case(coeff=G1_EMPTY_COEFF, margin=G1_EMPTY_MARGIN) -> ProofReport:
    """The G1-empty bound stays below 4p^3q + p^4 - margin on all of [2/5, 1/2]."""
    return prove_nonneg(bd3_expr() - Fraction(margin) - g1_empty_bound_expr(coeff), C5_INTERVAL)


@dataclass
class MarginResult:
    case_id: str
    interval: tuple[Fraction, Fraction]
    report: ProofReport

    @property
    def ok(self) -> bool:
        return self.report.ok


def theorem_margin_report(margin=THEOREM_MARGIN) -> list[MarginResult]:
    """(4p^3q + p^4 - margin) - case bound >= 0 for every case on its interval."""
    goal = bd3_expr() - Fraction(margin)
    out = [MarginResult("C5-1", C5_INTERVAL,
                        prove_nonneg(goal - g1_empty_bound_expr(), C5_INTERVAL))]
    for cert in builtin_certificates():
        if not cert.case_id.startswith("C5"):
            continue
        out.append(MarginResult(cert.case_id, cert.interval,
                                prove_nonneg(goal - dual_objective(cert), cert.interval,
                                             max_depth=cert.max_depth)))
    return out


def covers(intervals, lo, hi) -> bool:
    """Whether the union of closed intervals covers [lo, hi]."""
    reach = Fraction(lo)
    for a, b in sorted(intervals):
        if a > reach:
            return False
        reach = max(reach, b)
    return reach >= hi
