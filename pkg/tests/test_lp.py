import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from threewise import lp
from threewise.exactnum import P, as_poly, const
from threewise.exactnum.algnum import AlgNum
from threewise.lp import (FAIL, INFEASIBLE, OPTIMAL, PASS, UNBOUNDED, DualCertificate, ParamLP,
                          Row, simplex)

small = st.fractions(min_value=-4, max_value=4, max_denominator=5)


def _solve(M, v):
    """Fraction Gaussian elimination; None when singular."""
    n = len(M)
    A = [[Fraction(a) for a in row] + [Fraction(x)] for row, x in zip(M, v)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col] / A[col][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return [A[i][n] / A[i][i] for i in range(n)]


def vertex_max(A, b, c):
    """Maximum of c.x over the bounded polytope {Ax <= b, x >= 0} by vertex enumeration."""
    n = len(c)
    rows = [list(r) for r in A] + [[-1 if i == j else 0 for j in range(n)] for i in range(n)]
    rhs = list(b) + [0] * n
    best = None
    for idx in itertools.combinations(range(len(rows)), n):
        x = _solve([rows[i] for i in idx], [rhs[i] for i in idx])
        if x is None or any(sum(a * xi for a, xi in zip(r, x)) > h for r, h in zip(rows, rhs)):
            continue
        val = sum(ci * xi for ci, xi in zip(c, x))
        best = val if best is None else max(best, val)
    return best


# --- simplex -----------------------------------------------------------------------

@given(st.integers(1, 3), st.integers(1, 3), st.data())
@settings(max_examples=150, deadline=None)
def test_simplex_matches_vertex_enumeration(n, m, data):
    A = [[data.draw(small) for _ in range(n)] for _ in range(m)]
    b = [data.draw(small) for _ in range(m)]
    A += [[1 if i == j else 0 for j in range(n)] for i in range(n)]  # keep the region bounded
    b += [Fraction(3)] * n
    c = [data.draw(small) for _ in range(n)]
    res = simplex(A, b, c)
    expected = vertex_max(A, b, c)
    if expected is None:
        assert res.status == INFEASIBLE
    else:
        assert res.status == OPTIMAL and res.optimum == expected
        assert all(sum(a * x for a, x in zip(row, res.x)) <= h for row, h in zip(A, b))


def test_simplex_unbounded_and_infeasible():
    assert simplex([[1, -1]], [1], [1, 1]).status == UNBOUNDED
    assert simplex([[1], [-1]], [1, -2], [1]).status == INFEASIBLE


def test_simplex_over_quadratic_field():
    r2 = AlgNum.sqrt_of(2)
    res = simplex([[1, 1]], [r2], [1, 2])
    assert res.status == OPTIMAL and res.optimum == 2 * r2


# --- model -------------------------------------------------------------------------

def test_param_lp_validation_and_json():
    rows = [Row("a", {"x": const(1), "y": P}, const(1)), Row("b", {"y": const(1)}, P)]
    model = ParamLP(("x", "y"), {"x": const(1), "y": const(1)}, tuple(rows))
    assert model.labels == ("a", "b")
    again = ParamLP.from_json(json.loads(json.dumps(model.to_json())))
    assert again.instantiate(Fraction(1, 3)) == model.instantiate(Fraction(1, 3))
    with pytest.raises(ValueError):
        ParamLP(("x",), {"x": const(1)}, (Row("a", {"z": const(1)}, const(1)),))
    with pytest.raises(ValueError):
        ParamLP(("x",), {"x": const(1)}, (Row("a", {"x": const(1)}, const(1)),) * 2)


def test_claim_rows():
    claims = lp.constraint_families_from_claims()
    assert len(claims) == 7
    assert all(rows for rows in claims.values())


# --- certificates ---------------------------------------------------------------------

CERTS = {c.case_id: c for c in lp.builtin_certificates()}


def test_builtin_set():
    assert sorted(CERTS) == sorted(["C4-1", "C4-2", "C4-3", "C5-2", "C5-3", "C5-4",
                                    "C5-5a", "C5-5b", "C5-6a", "C5-6b"])
    assert {CERTS[k].interval for k in CERTS if k.startswith("C4")} == {lp.C4_INTERVAL}
    assert CERTS["C5-5a"].interval == (lp.C5_INTERVAL[0], lp.SPLIT_G3)
    assert CERTS["C5-6b"].interval == (lp.SPLIT_G0, lp.C5_INTERVAL[1])


@pytest.mark.parametrize("case_id", sorted(CERTS))
def test_builtin_certificate_passes(case_id):
    rep = lp.check_certificate(CERTS[case_id])
    assert rep.status == PASS, [c.to_json() for c in rep.failures()]


@pytest.mark.parametrize("case_id", ["C4-1", "C4-2", "C4-3"])
def test_c4_objective_polynomial(case_id):
    assert as_poly(lp.dual_objective(CERTS[case_id])) == as_poly(9 * P ** 2 - 6 * P + 2)


def test_printed_c5_3_is_rejected():
    [printed] = lp.printed_variants()
    rep = lp.check_certificate(printed)
    assert rep.status == FAIL
    assert any(c.witness is not None for c in rep.failures())


def test_perturbation_is_caught():
    cert = CERTS["C4-1"]
    rep = lp.check_certificate(cert.perturbed(cert.lp.labels[0]), fail_fast=True)
    assert rep.status == FAIL


def test_certificate_json_round_trip():
    for cert in CERTS.values():
        back = DualCertificate.from_json(json.loads(json.dumps(cert.to_json())))
        assert back.interval == cert.interval
        p = Fraction(9, 20)
        assert lp.dual_objective(back).exact(p) == lp.dual_objective(cert).exact(p)


def test_c4_1_tight_at_two_fifths():
    res = lp.simplex_max(CERTS["C4-1"].lp, Fraction(2, 5))
    assert res.optimum == Fraction(26, 25)
    assert lp.dual_objective(CERTS["C4-1"]).exact_fraction(Fraction(2, 5)) == Fraction(26, 25)


@pytest.mark.parametrize("case_id", ["C5-2", "C5-4", "C5-5a"])
def test_approximate_simplex_is_an_upper_bound(case_id):
    cert = CERTS[case_id]
    for p in lp.sample_points(cert.interval, 5):
        exact = lp.simplex_max(cert.lp, p).optimum
        approx = lp.simplex_max(cert.lp, p, approximate=True).optimum
        assert approx >= exact


# --- the arithmetic case and the theorem margin -------------------------------------------

def test_g1_empty_case():
    assert lp.prove_G1_empty_case().ok
    assert lp.prove_G1_empty_case(coeff=Fraction(1, 10)).status == "VIOLATION"
    assert lp.prove_G1_empty_case(margin=Fraction(1, 5)).status == "VIOLATION"
    assert lp.case_bound_G1_empty(Fraction(9, 20)) < lp.bd3_expr().exact_fraction(Fraction(9, 20))
    with pytest.raises(lp.CaseBoundError):
        lp.case_bound_G1_empty(Fraction(2, 5), margin=Fraction(1, 5))


def test_theorem_margin():
    results = lp.theorem_margin_report()
    assert all(m.ok for m in results)
    assert len(results) == 1 + sum(k.startswith("C5") for k in CERTS)


def test_covers():
    assert lp.covers([(0, Fraction(1, 2)), (Fraction(1, 3), 1)], 0, 1)
    assert not lp.covers([(0, Fraction(1, 3)), (Fraction(1, 2), 1)], 0, 1)
