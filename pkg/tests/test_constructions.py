import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from threewise.constructions import (AK, BD, BD_UNIF, F1, F2, F3, FRS, FRS_UNIF, ConstructionId,
                                     UnsupportedConstruction, binom, build, frs_j0, measure_formula,
                                     uniform_count)
from threewise.setfam import (CapacityError, DomainError, is_nontrivial, is_rwise_t_intersecting,
                              is_upset, measure_direct)

ps = st.fractions(min_value=Fraction(1, 50), max_value=Fraction(49, 50), max_denominator=60)


def test_parse_round_trip():
    for cid in (BD(3, 5), AK(8, 2, 1), F1(6), FRS(4, 9, 2), BD_UNIF(3, 8, 4), FRS_UNIF(3, 12, 6, 1)):
        assert ConstructionId.parse(str(cid)) == cid
    assert ConstructionId.parse(" BD( 3 , 5 ) ").r == 3


@pytest.mark.parametrize("text", ["BD(3)", "XX(1,2)", "BD 3 5", "AK(1,2,3,4)"])
def test_parse_rejects(text):
    with pytest.raises(DomainError):
        ConstructionId.parse(text)


@pytest.mark.parametrize("cid", [BD(3, 3), AK(4, 2, 2), F1(2), FRS(3, 5, 3), BD_UNIF(2, 2, 1),
                                 FRS_UNIF(3, 5, 5, 1)])
def test_invalid_parameters(cid):
    with pytest.raises(DomainError):
        build(cid)


def test_capacity_and_unsupported():
    with pytest.raises(CapacityError):
        build(BD(3, 23))
    with pytest.raises(UnsupportedConstruction):
        measure_formula(FRS(3, 6, 1), Fraction(1, 3))
    with pytest.raises(UnsupportedConstruction):
        uniform_count(BD(3, 6))


@given(st.sampled_from([BD(2, 5), BD(3, 6), BD(4, 7), AK(7, 1, 2), AK(8, 2, 3), F1(6), F2(7),
                        F3(7)]), ps)
def test_formula_matches_member_sum(cid, p):
    assert measure_formula(cid, p) == measure_direct(build(cid), p)


def test_bd3_value():
    p = Fraction(2, 5)
    assert measure_formula(BD(3, 8), p) == 4 * p ** 3 * (1 - p) + p ** 4 == Fraction(112, 625)


@pytest.mark.parametrize("r,n", [(2, 4), (3, 5), (3, 6), (4, 6)])
def test_bd_is_nontrivial_rwise(r, n):
    f = build(BD(r, n))
    assert is_upset(f)
    assert is_nontrivial(f, r, 1)
    assert not is_rwise_t_intersecting(f, r + 1, 1)


@pytest.mark.parametrize("cid,r", [(F1(6), 3), (F2(7), 3), (F3(7), 3), (FRS(3, 7, 1), 3),
                                   (FRS(4, 8, 2), 4), (FRS(4, 8, 3), 4)])
def test_named_families_are_nontrivial(cid, r):
    assert is_nontrivial(build(cid), r, 1)


@pytest.mark.parametrize("n,t,i", [(6, 2, 1), (7, 2, 2), (8, 3, 1)])
def test_ak_is_t_intersecting(n, t, i):
    assert is_rwise_t_intersecting(build(AK(n, t, i)), 2, t)


def _brute_frs_unif(r, n, k, s):
    j0 = frs_j0(r, k, s)
    count = 0
    for c in itertools.combinations(range(1, n + 1), k):
        cs = set(c)
        if set(range(1, s + 1)) <= cs and len(cs & set(range(s + 1, k + 2))) >= j0:
            count += 1
    return count + s


@pytest.mark.parametrize("r,n,k,s", [(3, 9, 5, 1), (3, 10, 6, 2), (4, 9, 5, 2), (3, 8, 3, 0)])
def test_uniform_counts_three_routes(r, n, k, s):
    cid = FRS_UNIF(r, n, k, s)
    assert uniform_count(cid) == len(build(cid)) == _brute_frs_unif(r, n, k, s)


@pytest.mark.parametrize("r,n,k", [(3, 8, 4), (2, 7, 3), (4, 9, 5)])
def test_bd_uniform_count(r, n, k):
    direct = sum(binom(r + 1, j) * binom(n - r - 1, k - j) for j in range(r, r + 2))
    assert uniform_count(BD_UNIF(r, n, k)) == len(build(BD_UNIF(r, n, k))) == direct


def test_binom_edges():
    assert binom(5, -1) == binom(5, 6) == binom(-1, 0) == 0
    assert binom(10, 3) == 120
