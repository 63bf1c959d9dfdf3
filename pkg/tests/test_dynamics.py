"""Shift-system surrogates: points, cylinders, approach scans, greedy extraction."""

import random

import pytest

from folnerkit.dynamics import (
    Cylinder,
    ExtractionWindows,
    ProgressionCandidate,
    SymbolicSystem,
    base_cylinder,
    cylinder_distance,
    end_to_end_extract,
    find_approach,
    greedy_extract,
    point_from_callable,
    point_from_family,
    point_from_table,
)
from folnerkit.errors import InvalidConfigError
from folnerkit.groups import heisenberg3, lattice
from folnerkit.sumsets import CongruenceFamily, ExplicitFamily, verify_witness

Z = lattice(1)
Z2 = lattice(2)
H3 = heisenberg3()


def evens():
    return CongruenceFamily(Z, [(2, 0)])


def threes():
    return CongruenceFamily(Z, [(3, 0)])


# -- points -----------------------------------------------------------------


def test_point_sources_are_exclusive():
    with pytest.raises(InvalidConfigError):
        point_from_family(evens()).__class__(Z)
    with pytest.raises(InvalidConfigError):
        point_from_family(evens()).__class__(Z, family=evens(), table={(0,): 1})


def test_point_evaluation_matches_membership():
    x = point_from_family(threes())
    for g in range(-12, 13):
        assert x((g,)) == (1 if g % 3 == 0 else 0)
    t = point_from_table(Z, {(0,): 1, (2,): 1}, default=0)
    assert t((0,)) == 1 and t((2,)) == 1 and t((1,)) == 0 and t((99,)) == 0
    c = point_from_callable(Z, lambda g: g[0] >= 0)
    assert c((0,)) == 1 and c((-1,)) == 0


def test_translation_action_law():
    # T_h1 (T_h2 x) = T_(h1 h2) x, as equal dataclasses on a noncommutative group
    rng = random.Random(7)
    base = point_from_callable(H3, lambda g: (g[0] + g[1] + g[2]) % 2 == 0)
    for _ in range(50):
        h1 = tuple(rng.randrange(-5, 6) for _ in range(3))
        h2 = tuple(rng.randrange(-5, 6) for _ in range(3))
        lhs = base.translated(h2).translated(h1)
        rhs = base.translated(H3.mul_coords(h1, h2))
        assert lhs == rhs
        for g in [(0, 0, 0), (1, 2, 3), (-2, 1, 0)]:
            assert lhs(g) == rhs(g)


def test_translate_of_member_sits_in_base_cylinder():
    x = point_from_family(evens())
    cyl = base_cylinder(Z)
    for g in range(-8, 9):
        assert cyl.contains(x.translated((g,))) == (g % 2 == 0)


def test_cylinder_shift_preimage():
    # {x : T_t x in C} pins coordinates g*t: membership transfers exactly
    x = point_from_family(threes())
    cyl = Cylinder(Z, (((0,), 1), ((3,), 1), ((1,), 0)))
    for t in range(-6, 7):
        pre = cyl.shift_preimage((t,))
        assert pre.contains(x.translated((0,)).translated((0,))) == cyl.contains(x.translated((t,)))
        assert pre.contains(x) == cyl.contains(x.translated((t,)))


# -- windows and distance ---------------------------------------------------


def test_windows_and_balls():
    sys = SymbolicSystem.from_family(evens())
    assert sys.window(5) == [(0,), (-1,), (1,), (-2,), (2,)]
    assert sys.ball(2) == [(0,), (-1,), (1,), (-2,), (2,)]
    sys2 = SymbolicSystem.from_family(CongruenceFamily(Z2, [(2, 0), (2, 0)]))
    b1 = sys2.ball(1)
    assert len(b1) == 9 and set(b1) == {(a, b) for a in (-1, 0, 1) for b in (-1, 0, 1)}
    with pytest.raises(InvalidConfigError):
        sys.ball(-1)


def test_cylinder_distance_depths():
    sys = SymbolicSystem.from_family(threes())
    exhaustion = [sys.ball(r) for r in range(5)]
    x = sys.base
    # a shift by a period is pointwise the same point
    assert cylinder_distance(x, x.translated((3,)), exhaustion) == 0.0
    # disagreement at the identity shows on the first window
    assert cylinder_distance(x, x.translated((1,)), exhaustion) == 1.0
    # agreement through balls 0..1, first break on ball(2)
    table = {(g,): (1 if g % 3 == 0 else 0) for g in range(-1, 2)}
    table[(2,)] = 1
    y = point_from_table(Z, table)
    assert cylinder_distance(x, y, exhaustion, details=True) == (0.25, 2, False)
    # one level deeper
    table3 = {(g,): (1 if g % 3 == 0 else 0) for g in range(-2, 3)}
    table3[(3,)] = 0
    z = point_from_table(Z, table3)
    assert cylinder_distance(x, z, exhaustion, details=True) == (0.125, 3, False)
    with pytest.raises(InvalidConfigError):
        cylinder_distance(x, y, [])


# -- approach scans ---------------------------------------------------------


def approach_brute(member, s1, s2, window, domain):
    """Direct integer arithmetic for congruence families on the line.

    x1(h) = member(h + s1) and x2(h) = member(h + s2 + s1); a candidate g
    passes when base(h+g) = x1(h) and x1(h+g) = x2(h) on the window.
    """
    out = []
    for (g,) in domain:
        ok = True
        for (h,) in window:
            if member(h + g) != member(h + s1):
                ok = False
                break
            if member(h + g + s1) != member(h + s2 + s1):
                ok = False
                break
        if ok:
            out.append((g,))
    return out


def test_find_approach_on_threes():
    sys = SymbolicSystem.from_family(threes())
    x1 = sys.base.translated((0,))
    x2 = x1.translated((3,))
    got = find_approach(sys, x1, x2, sys.ball(2), sys.ball(10))
    assert got == [(-9,), (-6,), (-3,), (0,), (3,), (6,), (9,)]
    want = approach_brute(lambda v: v % 3 == 0, 0, 3, sys.ball(2), sorted(sys.ball(10)))
    assert got == sorted(want)
    cand = ProgressionCandidate(x1, x2, tuple(sys.ball(2)), tuple(got))
    assert cand.reverify(sys)
    bad = ProgressionCandidate(x1, x2, tuple(sys.ball(2)), ((1,),))
    assert not bad.reverify(sys)


def test_find_approach_contradictory_targets_is_empty():
    sys = SymbolicSystem.from_family(threes())
    x1 = sys.base
    x2 = sys.base.translated((1,))
    assert find_approach(sys, x1, x2, sys.ball(2), sys.ball(10)) == []


def test_find_approach_random_matches_brute():
    rng = random.Random(23)
    for _ in range(20):
        m, r = rng.choice([(2, 0), (3, 0), (4, 2), (5, 1)])
        fam = CongruenceFamily(Z, [(m, r)])
        sys = SymbolicSystem.from_family(fam)
        s1 = rng.randrange(-4, 5)
        s2 = rng.randrange(-4, 5)
        x1 = sys.base.translated((s1,))
        x2 = x1.translated((s2,))
        window = sys.ball(rng.randrange(1, 3))
        domain = sys.ball(7)
        got = find_approach(sys, x1, x2, window, domain)
        want = approach_brute(lambda v: v % m == r, s1, s2, window, sorted(domain))
        assert sorted(got) == sorted(want)


def test_find_approach_jobs_agree():
    sys = SymbolicSystem.from_family(threes())
    x1 = sys.base.translated((3,))
    x2 = x1.translated((-3,))
    serial = find_approach(sys, x1, x2, sys.ball(2), sys.ball(9), jobs=1)
    parallel = find_approach(sys, x1, x2, sys.ball(2), sys.ball(9), jobs=2)
    assert serial == parallel
    assert find_approach(sys, x1, x2, sys.ball(2), sys.ball(9), count=2) == serial[:2]


# -- greedy extraction ------------------------------------------------------


def test_greedy_on_threes_full_trace():
    sys = SymbolicSystem.from_family(threes())
    e = base_cylinder(Z)
    result = greedy_extract(sys, sys.base, sys.ball(8), e, e.shift_preimage((0,)), 5)
    assert result.complete
    assert result.members == ((0,), (-3,), (3,), (-6,), (6,))
    assert result.blocking is None
    tested = [(r.step, r.chosen, r.candidates_tested, r.rejected_base) for r in result.trace]
    assert tested == [
        (1, (0,), 1, 0),
        (2, (-3,), 5, 4),
        (3, (3,), 5, 4),
        (4, (-6,), 9, 8),
        (5, (6,), 9, 8),
    ]
    assert [r.pair_constraints for r in result.trace] == [0, 1, 2, 3, 4]


def test_greedy_members_satisfy_all_cylinders():
    # independent check of the advertised invariant on a two-coordinate run
    fam = CongruenceFamily(Z2, [(2, 0), (2, 0)])
    sys = SymbolicSystem.from_family(fam)
    e = base_cylinder(Z2)
    t = (0, 0)
    pair = e.shift_preimage(t)
    result = greedy_extract(sys, sys.base, sys.ball(4), e, pair, 6)
    assert result.complete
    for i, b in enumerate(result.members):
        assert fam.contains(b)
        assert fam.contains(Z2.mul_coords(b, t))
        for m in result.members[:i]:
            assert fam.contains(Z2.mul_coords(Z2.mul_coords(m, b), t))


def test_greedy_blocked_reports_the_binding_constraint():
    fam = ExplicitFamily(Z, [(3,)])
    sys = SymbolicSystem.from_family(fam)
    e = base_cylinder(Z)
    result = greedy_extract(sys, sys.base.translated((3,)), sys.ball(2), e, e.shift_preimage((0,)), 3)
    assert not result.complete
    assert result.members == ()
    assert result.blocking == "base cylinder on the new member"
    assert result.trace[0].candidates_tested == 5
    assert result.trace[0].rejected_base == 5


def test_greedy_rejects_bad_k():
    sys = SymbolicSystem.from_family(threes())
    e = base_cylinder(Z)
    with pytest.raises(InvalidConfigError):
        greedy_extract(sys, sys.base, sys.ball(2), e, e, 0)


# -- end-to-end extraction --------------------------------------------------


def test_extract_evens_k8():
    fam = evens()
    out = end_to_end_extract(fam, ExtractionWindows(), 8)
    assert out.found
    assert out.witness.shift == (0,)
    assert out.witness.members == ((0,), (-2,), (2,), (-4,), (4,), (-6,), (6,), (-8,))
    assert out.stats == {
        "translate_pairs_tried": 1,
        "approach_calls": 1,
        "approach_elements_total": 9,
        "greedy_runs": 1,
        "greedy_incomplete": 0,
        "verify_failures": 0,
    }
    assert verify_witness(fam, out.witness, check_members=True).passed


def test_extract_shifted_congruence_class():
    fam = CongruenceFamily(Z, [(4, 2)])
    out = end_to_end_extract(fam, ExtractionWindows(domain_radius=16), 6)
    assert out.found
    assert out.witness.shift == (-2,)
    assert out.witness.members == ((-2,), (2,), (-6,), (6,), (-10,), (10,))
    assert out.stats["translate_pairs_tried"] == 4
    assert out.stats["greedy_incomplete"] == 3
    # the shifted products land in the class by direct arithmetic
    for i, bi in enumerate(out.witness.members):
        for bj in out.witness.members[i:]:
            assert (-2 + bi[0] + bj[0]) % 4 == 2
    assert verify_witness(fam, out.witness, check_members=True).passed


def test_extract_planar_lattice():
    fam = CongruenceFamily(Z2, [(2, 0), (2, 0)])
    out = end_to_end_extract(fam, ExtractionWindows(agreement_radius=1, domain_radius=4), 6)
    assert out.found
    assert out.witness.shift == (0, 0)
    assert out.witness.members == ((0, 0), (-2, -2), (-2, 0), (-2, 2), (0, -2), (0, 2))
    assert out.stats["approach_elements_total"] == 25
    assert verify_witness(fam, out.witness, check_members=True).passed


def test_extract_impossible_family_reports_stats():
    fam = ExplicitFamily(Z, [(0,), (2,)])
    out = end_to_end_extract(fam, ExtractionWindows(domain_radius=4, translate_radius=2, shift_radius=2), 4)
    assert not out.found
    assert out.witness is None
    assert out.stats["translate_pairs_tried"] > 0
