"""Strided intervals and set representations against brute enumeration."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from folnerkit.boxes import (
    BoxRep,
    ExplicitRep,
    InvertedRep,
    StridedInterval,
    TranslatedRep,
    UnionRep,
    box,
    check_budget,
    materialize,
    window_box,
)
from folnerkit.errors import BudgetExceededError, InvalidConfigError
from folnerkit.groups import heisenberg3, lattice


def brute(iv):
    return {x for x in range(iv.lo, iv.hi + 1) if x % iv.modulus == iv.residue % iv.modulus}


def test_interval_count_and_iteration_match_brute():
    rng = random.Random(10)
    for _ in range(400):
        lo = rng.randint(-30, 30)
        hi = lo + rng.randint(-3, 40)
        m = rng.randint(1, 7)
        r = rng.randint(-10, 10)
        iv = StridedInterval(lo, hi, m, r)
        ref = brute(iv)
        assert iv.count == len(ref)
        assert set(iv) == ref
        for x in range(lo - 2, hi + 3):
            assert (x in iv) == (x in ref)


def test_interval_constructors():
    assert set(StridedInterval.one_to(4)) == {1, 2, 3, 4}
    assert set(StridedInterval.centered_half_open(2)) == {-1, 0, 1, 2}
    assert StridedInterval.centered_half_open(3).count == 6
    assert StridedInterval(5, 1).count == 0
    with pytest.raises(InvalidConfigError):
        StridedInterval(0, 1, modulus=0)


@settings(max_examples=300, deadline=None)
@given(
    st.integers(-40, 40), st.integers(0, 50), st.integers(1, 12), st.integers(0, 11),
    st.integers(-40, 40), st.integers(0, 50), st.integers(1, 12), st.integers(0, 11),
)
def test_interval_intersection_is_exact(lo1, len1, m1, r1, lo2, len2, m2, r2):
    a = StridedInterval(lo1, lo1 + len1, m1, r1 % m1)
    b = StridedInterval(lo2, lo2 + len2, m2, r2 % m2)
    got = a.intersect(b)
    ref = brute(a) & brute(b)
    assert got.count == len(ref)
    assert set(got) == ref


def test_parity_restriction():
    iv = StridedInterval(1, 10)
    assert set(iv.restrict_parity(1)) == {1, 3, 5, 7, 9}
    assert set(iv.restrict_parity(0)) == {2, 4, 6, 8, 10}
    strided = StridedInterval(0, 30, 3, 2)
    assert set(strided.restrict_parity(1)) == {x for x in range(31) if x % 3 == 2 and x % 2 == 1}


def test_shifted_preserves_membership():
    iv = StridedInterval(1, 11, 2, 1)
    moved = iv.shifted(5)
    assert set(moved) == {x + 5 for x in iv}


def test_box_rep_counts_and_contains():
    z2 = lattice(2)
    rep = box(StridedInterval(1, 6, 2, 0), StridedInterval(-2, 2))
    assert rep.count(z2) == 3 * 5
    elems = set(rep.iterate(z2))
    assert len(elems) == 15
    assert rep.contains(z2, (4, 0))
    assert not rep.contains(z2, (3, 0))
    assert not rep.contains(z2, (4, 3))


def test_translated_rep_both_sides_heisenberg():
    h3 = heisenberg3()
    base = window_box([(0, 1), (0, 1), (0, 1)])
    by = (1, 2, 3)
    left = TranslatedRep(base, by, side="left")
    right = TranslatedRep(base, by, side="right")
    left_ref = {h3.mul_coords(by, x) for x in base.iterate(h3)}
    right_ref = {h3.mul_coords(x, by) for x in base.iterate(h3)}
    assert set(left.iterate(h3)) == left_ref
    assert set(right.iterate(h3)) == right_ref
    assert left.count(h3) == len(left_ref)
    for x in left_ref | right_ref:
        assert left.contains(h3, x) == (x in left_ref)
        assert right.contains(h3, x) == (x in right_ref)


def test_inverted_rep():
    h3 = heisenberg3()
    base = window_box([(0, 2), (0, 2), (0, 2)])
    rep = InvertedRep(base)
    ref = {h3.inv_coords(x) for x in base.iterate(h3)}
    assert set(rep.iterate(h3)) == ref
    assert rep.count(h3) == 27
    assert all(rep.contains(h3, x) for x in ref)


def test_union_rep_disjoint_parts():
    z1 = lattice(1)
    rep = UnionRep((window_box([(0, 4)]), window_box([(10, 14)])))
    assert rep.count(z1) == 10
    assert rep.contains(z1, (12,))
    assert not rep.contains(z1, (7,))
    assert {x[0] for x in rep.iterate(z1)} == set(range(5)) | set(range(10, 15))


def test_explicit_rep_sorted_iteration():
    z2 = lattice(2)
    rep = ExplicitRep(frozenset({(3, 1), (0, 0), (-2, 5)}))
    assert list(rep.iterate(z2)) == [(-2, 5), (0, 0), (3, 1)]
    assert rep.count(z2) == 3


def test_budget_guard():
    check_budget(100, 100, "ok")
    with pytest.raises(BudgetExceededError) as info:
        check_budget(101, 100, "walking a set")
    assert info.value.required == 101
    assert info.value.budget == 100
    # None means the default cap, not "no cap"
    with pytest.raises(BudgetExceededError):
        check_budget(10**9, None, "huge")


def test_materialize_respects_budget():
    z1 = lattice(1)
    rep = window_box([(1, 1000)])
    assert len(materialize(rep, z1)) == 1000
    with pytest.raises(BudgetExceededError):
        materialize(rep, z1, budget=999)
