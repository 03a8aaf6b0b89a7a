import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from threewise.setfam import (CapacityError, DomainError, FamilyFormatError, SetFamily,
                              acceptable_tau, are_cross_t_intersecting, canonical_form,
                              common_intersection, decompose_FI, decomposition_measure,
                              format_family, is_isomorphic, is_nontrivial, is_rwise_t_intersecting,
                              is_shifted, is_upset, measure, measure_direct, parse_family,
                              potential, relabel, shift, shift_closure, shifts_to, upward_closure)

ps = st.sampled_from([Fraction(1, 3), Fraction(2, 5), Fraction(9, 20), Fraction(1, 2), Fraction(5, 7)])


@st.composite
def families(draw, min_n=1, max_n=6, max_size=14):
    n = draw(st.integers(min_n, max_n))
    members = draw(st.lists(st.integers(0, (1 << n) - 1), max_size=max_size))
    return SetFamily(n, tuple(members))


def brute_rwise(f, r, t):
    return all(bin(_and(c)).count("1") >= t for c in itertools.product(f.members, repeat=r))


def _and(masks):
    acc = -1
    for m in masks:
        acc &= m
    return acc


# --- measure ---------------------------------------------------------------------

@given(families(), ps)
def test_measure_routes_agree(f, p):
    assert measure(f, p) == measure_direct(f, p)


def test_measure_of_power_set_and_star():
    assert measure(SetFamily.power_set(5), Fraction(2, 7)) == 1
    star = SetFamily.from_predicate(6, lambda m: m & 1)
    assert measure(star, Fraction(3, 10)) == Fraction(3, 10)


def test_measure_rejects_bad_p():
    with pytest.raises(DomainError):
        measure(SetFamily(2, (1,)), 1)


# --- shifting ----------------------------------------------------------------------

@given(families(min_n=2), ps, st.data())
def test_shift_preserves_size_and_measure(f, p, data):
    i = data.draw(st.integers(1, f.n - 1))
    j = data.draw(st.integers(i + 1, f.n))
    g = shift(f, i, j)
    assert len(g) == len(f)
    assert measure(g, p) == measure(f, p)


@given(families(min_n=3, max_n=5, max_size=4), st.sampled_from([(2, 1), (3, 1), (2, 2)]), st.data())
@settings(max_examples=150)
def test_shift_preserves_rwise_intersection(f, rt, data):
    f = upward_closure(f)
    r, t = rt
    if not brute_rwise(f, r, t):
        return
    i = data.draw(st.integers(1, f.n - 1))
    j = data.draw(st.integers(i + 1, f.n))
    assert brute_rwise(shift(f, i, j), r, t)


@given(families(min_n=2, max_n=6))
def test_shift_closure_is_shifted_and_potential_decreases(f):
    trace = [potential(f)]
    g = shift_closure(f, trace)
    assert is_shifted(g)
    assert all(b < a for a, b in zip(trace, trace[1:]))
    assert len(g) == len(f)


def test_shift_example():
    f = SetFamily.from_sets(3, [[2], [1, 3]])
    assert shift(f, 1, 2).as_sets() == [[1], [1, 3]]
    assert shift(f, 1, 3).as_sets() == [[2], [1, 3]]  # {1,3} already contains 1
    with pytest.raises(DomainError):
        shift(f, 2, 2)


def test_shifts_to():
    assert shifts_to(0, 0b101)
    assert shifts_to(0b110, 0b011)  # {2,3} ~> {1,2}
    assert not shifts_to(0b011, 0b110)
    assert not shifts_to(0b111, 0b011)


# --- intersection --------------------------------------------------------------------

@given(families(max_n=5, max_size=8), st.integers(2, 4), st.integers(1, 2))
@settings(max_examples=200)
def test_rwise_matches_brute_force(f, r, t):
    assert is_rwise_t_intersecting(f, r, t) == brute_rwise(f, r, t)


@given(st.integers(1, 4), st.data())
@settings(max_examples=150)
def test_cross_matches_brute_force(n, data):
    fams = [SetFamily(n, tuple(data.draw(st.lists(st.integers(0, (1 << n) - 1), min_size=1, max_size=5))))
            for _ in range(data.draw(st.integers(2, 3)))]
    t = data.draw(st.integers(1, 2))
    brute = all(bin(_and(c)).count("1") >= t for c in itertools.product(*(f.members for f in fams)))
    assert are_cross_t_intersecting(fams, t) == brute


def test_nontriviality():
    star = SetFamily.from_predicate(4, lambda m: m & 1)
    assert is_rwise_t_intersecting(star, 3, 1)
    assert common_intersection(star) == 1
    assert not is_nontrivial(star, 3, 1)
    bd = SetFamily.from_predicate(5, lambda m: bin(m & 0b1111).count("1") >= 3)
    assert is_nontrivial(bd, 3, 1)
    assert not is_rwise_t_intersecting(bd, 4, 1)


def test_upward_closure():
    f = upward_closure(SetFamily.from_sets(3, [[1, 2]]))
    assert f.as_sets() == [[1, 2], [1, 2, 3]]
    assert is_upset(f)
    assert not is_upset(SetFamily.from_sets(3, [[1]]))


# --- isomorphism ---------------------------------------------------------------------

@given(families(min_n=1, max_n=6, max_size=10), st.randoms(use_true_random=False))
@settings(max_examples=150)
def test_canonical_form_is_relabeling_invariant(f, rnd):
    perm = list(range(1, f.n + 1))
    rnd.shuffle(perm)
    g = relabel(f, perm)
    assert canonical_form(g) == canonical_form(f)
    assert is_isomorphic(f, g)


def test_non_isomorphic_same_profile():
    a = SetFamily.from_sets(4, [[1, 2], [3, 4]])
    b = SetFamily.from_sets(4, [[1, 2], [1, 3]])
    assert not is_isomorphic(a, b)


def test_canonical_form_capacity():
    with pytest.raises(CapacityError):
        canonical_form(SetFamily(13, (1,)))


# --- decomposition -------------------------------------------------------------------

@given(families(min_n=4, max_n=8, max_size=20), ps)
def test_decomposition_measure_identity(f, p):
    parts = decompose_FI(f)
    assert len(parts) == 8
    assert sum(len(g) for g in parts.values()) == len(f)
    assert decomposition_measure(parts, p) == measure(f, p)


def test_acceptable_tau():
    assert acceptable_tau({1, 2}, {1, 3}, {2, 3}) == 1
    assert acceptable_tau({1}, {1, 2}, {1, 3}) is None
    assert acceptable_tau(set(), set(), set()) == 7


# --- text format -----------------------------------------------------------------------

@given(families(min_n=0, max_n=8))
def test_text_round_trip(f):
    assert parse_family(format_family(f)) == f


@pytest.mark.parametrize("text,line", [
    ("m=3\n1\n", 1),
    ("n=x\n", 1),
    ("n=3\n1,2\n2,1\n", 3),
    ("n=3\n1,a\n", 2),
    ("n=3\n4\n", 2),
])
def test_parse_errors_report_line(text, line):
    with pytest.raises(FamilyFormatError) as exc:
        parse_family(text)
    assert exc.value.line == line


def test_members_must_lie_in_ground_set():
    with pytest.raises(DomainError):
        SetFamily(2, (4,))
    with pytest.raises(DomainError):
        SetFamily.from_sets(2, [[3]])
