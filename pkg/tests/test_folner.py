"""Family constructors, defects, densities, certificates, thinning."""

import random
from fractions import Fraction

import pytest

from folnerkit.errors import (
    BudgetExceededError,
    CertificateError,
    InvalidConfigError,
    SearchExhaustedError,
)
from folnerkit.folner import (
    CongruenceSubgroup,
    box_folner,
    congruence_membership,
    coset_folner,
    density_along,
    folner_defect,
    invert_folner,
    nilpotent_square_folner,
    reindex_family,
    restrict_folner,
    sac_certificate,
    shift_folner,
    squaring_box_data,
    thin_folner,
    weighted_average,
    weighted_average_supported,
)
from folnerkit.groups import finite_vector, heisenberg3, lattice, unitriangular
from .oracles import defect_brute, density_brute


def test_box_family_shapes():
    fam = box_folner(lattice(2))
    assert len(fam.set_at(3)) == 9
    assert set(fam.set_at(2)) == {(a, b) for a in (1, 2) for b in (1, 2)}
    cent = box_folner(lattice(2), centered=True)
    assert len(cent.set_at(3)) == 36
    assert (0, 0) in cent.set_at(1)
    with pytest.raises(InvalidConfigError):
        box_folner(heisenberg3())
    with pytest.raises(InvalidConfigError):
        fam.set_at(0)


def test_box_defect_analytic_matches_brute():
    z2 = lattice(2)
    fam = box_folner(z2, centered=True)
    rng = random.Random(11)
    for _ in range(20):
        n = rng.randint(1, 6)
        g = (rng.randint(-3, 3), rng.randint(-3, 3))
        for side in ("left", "right"):
            report = folner_defect(fam, n, [g], side=side)
            ref = defect_brute(z2.mul_coords, fam.set_at(n).materialize(), g, side)
            assert report.defects[0][1] == ref


def test_box_defect_value():
    # centered square of side 2N shifted by a basis vector loses one slab
    report = folner_defect(box_folner(lattice(2), centered=True), 10, [(1, 0)])
    assert report.defects[0][1] == Fraction(1, 10)
    assert report.max_defect == Fraction(1, 10)
    uncentered = folner_defect(box_folner(lattice(2)), 10, [(1, 0), (0, 1)])
    assert uncentered.max_defect == Fraction(1, 5)


def test_defect_sides_differ_on_heisenberg():
    h3 = heisenberg3()
    fam = nilpotent_square_folner(h3)
    g = (1, 0, 0)
    left = folner_defect(fam, 3, [g], side="left")
    right = folner_defect(fam, 3, [g], side="right")
    brute_left = defect_brute(h3.mul_coords, fam.set_at(3).materialize(), g, "left")
    brute_right = defect_brute(h3.mul_coords, fam.set_at(3).materialize(), g, "right")
    assert left.defects[0][1] == brute_left
    assert right.defects[0][1] == brute_right
    assert brute_left != brute_right


def test_squaring_recursion_constants():
    data = squaring_box_data(heisenberg3())
    assert data.degree == (1, 1, 2)
    assert data.base == (2, 2, 3)
    assert data.expansion_ratio == Fraction(1, 36)
    ut4 = squaring_box_data(unitriangular(4))
    assert ut4.degree == (1, 1, 1, 2, 2, 3)
    assert ut4.base == (2, 2, 2, 3, 3, 4)
    assert ut4.expansion_ratio == Fraction(1, 41472)
    with pytest.raises(InvalidConfigError):
        squaring_box_data(finite_vector(3, 2))


def test_squaring_family_cardinalities():
    fam = nilpotent_square_folner(heisenberg3())
    assert [len(fam.set_at(n)) for n in (1, 2, 3, 4)] == [8, 288, 10368, 373248]
    assert fam.set_at(1).materialize() == frozenset(
        (a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)
    )
    assert fam.params["eta"] == Fraction(1, 36)


def test_squaring_family_containment_small():
    h3 = heisenberg3()
    fam = nilpotent_square_folner(h3)
    for n in (1, 2, 3):
        target = fam.set_at(n + 1)
        for x in fam.set_at(n):
            assert h3.square_coords(x) in target


def test_sac_certificate_records():
    fam = nilpotent_square_folner(heisenberg3())
    cert = sac_certificate(fam, reindex_family(fam, 1), "square", indices=(1, 2, 3), fiber_bound=1)
    got = [
        (r.index, r.source_cardinality, r.image_cardinality, r.target_cardinality, r.ratio, r.max_fiber)
        for r in cert.records
    ]
    assert got == [
        (1, 8, 8, 288, Fraction(1, 36), 1),
        (2, 288, 288, 10368, Fraction(1, 36), 1),
        (3, 10368, 10368, 373248, Fraction(1, 36), 1),
    ]
    assert cert.eta == Fraction(1, 36)
    assert cert.average_factor == 36
    assert cert.transfer_bound(Fraction(1, 10)) == Fraction(1, 360)


def test_sac_certificate_rejects_bad_inclusion():
    fam = nilpotent_square_folner(heisenberg3())
    # without the index offset the squares of box N escape box N
    with pytest.raises(CertificateError):
        sac_certificate(fam, fam, "square", indices=(2,), fiber_bound=1)


def test_weighted_average_bound_random_weights():
    fam = nilpotent_square_folner(heisenberg3())
    rng = random.Random(12)
    for n in (1, 2):
        target = fam.set_at(n + 1)
        pool = list(target)
        for _ in range(20):
            support = {x: Fraction(rng.randint(0, 8), 8) for x in rng.sample(pool, 12)}
            lhs = weighted_average_supported(support, fam, n, compose_with_square=True)
            rhs = weighted_average_supported(support, fam, n + 1)
            assert lhs <= 36 * rhs
            # enumeration agrees with the root-solving shortcut
            assert lhs == weighted_average(lambda y: support.get(y, Fraction(0)), fam, n, compose_with="square")
            assert rhs == weighted_average(lambda y: support.get(y, Fraction(0)), fam, n + 1)


def test_weighted_average_rejects_floats_and_range():
    fam = nilpotent_square_folner(heisenberg3())
    with pytest.raises(InvalidConfigError):
        weighted_average(lambda x: 0.5, fam, 1)
    with pytest.raises(InvalidConfigError):
        weighted_average(lambda x: Fraction(3, 2), fam, 1)
    with pytest.raises(InvalidConfigError):
        weighted_average_supported({(0, 0, 0): Fraction(-1, 2)}, fam, 1)


def test_density_along_congruence():
    fam = box_folner(lattice(1))
    report = density_along(congruence_membership([(2, 0)]), fam, range(1, 11))
    assert [r[3] for r in report.rows] == [
        Fraction(0), Fraction(1, 2), Fraction(1, 3), Fraction(1, 2), Fraction(2, 5),
        Fraction(1, 2), Fraction(3, 7), Fraction(1, 2), Fraction(4, 9), Fraction(1, 2),
    ]
    assert report.running_max == Fraction(1, 2)


def test_density_matches_brute_on_random_sets():
    z2 = lattice(2)
    fam = box_folner(z2, centered=True)
    rng = random.Random(13)
    universe = [(a, b) for a in range(-6, 7) for b in range(-6, 7)]
    for _ in range(15):
        chosen = set(rng.sample(universe, 40))
        member = lambda x: x in chosen
        report = density_along(member, fam, (2, 4, 6))
        for (n, hits, card, dens) in report.rows:
            assert dens == density_brute(member, fam.set_at(n).materialize())


def test_density_analytic_path_matches_enumeration():
    fam = box_folner(lattice(2), centered=True)
    member = congruence_membership([(2, 0), (3, 1)])
    fast = density_along(member, fam, (5, 9))
    slow = density_along(lambda x: member(x), fam, (5, 9))
    assert [r[3] for r in fast.rows] == [r[3] for r in slow.rows]


def test_density_budget():
    fam = box_folner(lattice(2), centered=True)
    with pytest.raises(BudgetExceededError):
        density_along(lambda x: True, fam, (50,), budget=100)


def test_reindex_family():
    fam = nilpotent_square_folner(heisenberg3())
    shifted = reindex_family(fam, 1)
    assert len(shifted.set_at(1)) == len(fam.set_at(2))
    assert shifted.set_at(1).index == 1


def test_restrict_folner_density_and_defect():
    z2 = lattice(2)
    fam = box_folner(z2, centered=True)
    sub = CongruenceSubgroup((2, 1))
    restricted = restrict_folner(fam, sub)
    assert len(restricted.set_at(10)) == 10 * 20
    assert all(x[0] % 2 == 0 for x in restricted.set_at(4))
    # the subgroup generator moves the restricted family slightly
    report = folner_defect(restricted, 10, [(2, 0)])
    assert report.defects[0][1] == Fraction(2, 10)
    with pytest.raises(InvalidConfigError):
        restrict_folner(nilpotent_square_folner(heisenberg3()), sub)


def test_coset_folner_partition():
    z1 = lattice(1)
    inner = restrict_folner(box_folner(z1, centered=True), CongruenceSubgroup((2,)))
    fam = coset_folner(z1, inner, [(0,), (1,)])
    fset = fam.set_at(3)
    assert len(fset) == 2 * len(inner.set_at(3))
    # evens in (-3, 3] plus their shift by one: the interval (-2, 3]
    assert set(fset) == {(x,) for x in range(-2, 4)}
    with pytest.raises(CertificateError):
        coset_folner(z1, inner, [(0,), (2,)]).set_at(2)
    with pytest.raises(InvalidConfigError):
        coset_folner(z1, inner, [(1,), (0,)])


def test_shift_and_invert_preserve_left_defect():
    z2 = lattice(2)
    fam = box_folner(z2, centered=True)
    wandering = shift_folner(fam, lambda n: (n * n, -n))
    g = (1, 1)
    for n in (3, 5):
        base = folner_defect(fam, n, [g], side="left")
        moved = folner_defect(wandering, n, [g], side="left")
        assert base.defects[0][1] == moved.defects[0][1]
    inverted = invert_folner(fam)
    # symmetric boxes: inversion is a bijection onto a congruent box
    assert len(inverted.set_at(4)) == len(fam.set_at(4))
    left_of_inverse = folner_defect(inverted, 4, [g], side="left")
    right_of_base = folner_defect(fam, 4, [(-1, -1)], side="right")
    assert left_of_inverse.defects[0][1] == right_of_base.defects[0][1]


def test_thinning_trace_and_escape():
    fam = box_folner(lattice(2), centered=True)
    seeds = set(range(10))
    thinned, trace = thin_folner(fam, {0: seeds, 1: seeds})
    emitted = [thinned.set_at(k).materialize() for k in (1, 2, 3, 4)]
    assert [len(e) for e in emitted] == [1, 169, 2500, 50176]

    stage0, stage1 = trace.stages
    assert stage0.coordinate == 0 and stage1.coordinate == 1
    assert [(s.step, s.source_index, s.filtered_cardinality, s.kept_cardinality) for s in stage0.steps] == [
        (1, 2, 16, 4),
        (2, 12, 576, 312),
        (3, 37, 5476, 3700),
        (4, 149, 88804, 66752),
    ]
    assert [s.source_index for s in stage1.steps] == [1, 2, 3, 4]
    for stage in trace.stages:
        for s in stage.steps:
            assert s.retained_fraction >= 1 - Fraction(1, s.step)

    # seeds never appear, and each coordinate value appears in one set only
    for coord in (0, 1):
        used: set[int] = set()
        for e in emitted:
            values = {x[coord] for x in e}
            assert not values & seeds
            assert not values & used
            used |= values


def test_thinning_search_limit():
    fam = box_folner(lattice(2), centered=True)
    with pytest.raises(SearchExhaustedError):
        thinned, _ = thin_folner(fam, {0: set(range(10))}, search_limit=3)
        thinned.set_at(4)


def test_thinning_rejects_bad_targets():
    fam = box_folner(lattice(2), centered=True)
    with pytest.raises(InvalidConfigError):
        thin_folner(fam, {5: set()})
    with pytest.raises(InvalidConfigError):
        thin_folner(fam, [])
