"""Folner families: construction, diagnostics, certificates, surgery.

A ``FolnerFamily`` is an N-indexed sequence of finite subsets of one
group, produced lazily and cached. Constructors:

* ``box_folner``              -- coordinate boxes on a lattice;
* ``nilpotent_square_folner`` -- the box family adapted to the squaring
                                 map on a torsion-free coordinatized
                                 group, with its exact expansion ratio;
* ``thin_folner``             -- line-thinned subsequence family whose
                                 coordinate projections eventually avoid
                                 any finite set;
* ``restrict_folner``         -- intersection with a finite-index
                                 congruence subgroup;
* ``coset_folner``            -- disjoint union of translates of a
                                 family on a subgroup;
* ``shift_folner``            -- right-translated family (left
                                 invariance is unaffected);
* ``invert_folner``           -- elementwise inverses (left and right
                                 defects trade places).

Diagnostics (``folner_defect``, ``density_along``, ``weighted_average``)
and the squaring certificate (``sac_certificate``) are exact: counts are
ints, every ratio is a ``fractions.Fraction``, and a failed certificate
check raises with the witness element rather than returning quietly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence, Union

from . import boxes
from .boxes import BoxRep, ExplicitRep, InvertedRep, SetRep, StridedInterval, TranslatedRep, UnionRep, check_budget
from .errors import CertificateError, InvalidConfigError, SearchExhaustedError
from .groups import KIND_LATTICE, Coords, GroupDescriptor

SideSchedule = Callable[[int], int]
Membership = Union[Callable[[Coords], bool], "object"]


# ---------------------------------------------------------------------------
# sets and families


@dataclass(frozen=True)
class FolnerSet:
    """One member of a family: a finite subset of the group at index N."""

    group: GroupDescriptor
    index: int
    rep: SetRep

    def __len__(self) -> int:
        return self.rep.count(self.group)

    def __contains__(self, coords: Coords) -> bool:
        return self.rep.contains(self.group, coords)

    def __iter__(self) -> Iterator[Coords]:
        return self.rep.iterate(self.group)

    def materialize(self, budget: Optional[int] = None) -> frozenset[Coords]:
        return boxes.materialize(self.rep, self.group, budget)


@dataclass(frozen=True)
class FolnerFamily:
    """Lazy N-indexed family of finite sets with a kind tag and parameters."""

    group: GroupDescriptor
    kind: str
    generator: Callable[[int], FolnerSet] = field(compare=False)
    params: dict = field(default_factory=dict, compare=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def set_at(self, index: int) -> FolnerSet:
        if index < 1:
            raise InvalidConfigError(f"family index must be >= 1, got {index}")
        got = self._cache.get(index)
        if got is None:
            got = self.generator(index)
            self._cache[index] = got
        return got

    def derived(self, kind: str, make: Callable[[FolnerSet], FolnerSet], extra: Optional[dict] = None) -> "FolnerFamily":
        params = dict(self.params)
        params.update(extra or {})
        return FolnerFamily(self.group, kind, lambda n: make(self.set_at(n)), params)


def reindex_family(family: FolnerFamily, offset: int) -> FolnerFamily:
    """Same family read at index N + offset."""
    return FolnerFamily(
        family.group,
        family.kind,
        lambda n: FolnerSet(family.group, n, family.set_at(n + offset).rep),
        dict(family.params, index_offset=offset),
    )


# ---------------------------------------------------------------------------
# box and squaring-box constructors


def _as_schedule(side: Union[int, SideSchedule]) -> SideSchedule:
    if callable(side):
        return side
    if isinstance(side, int):
        return lambda n: side * n
    raise InvalidConfigError(f"side schedule must be callable or an int slope, got {side!r}")


def box_folner(
    group: GroupDescriptor,
    side: Union[int, SideSchedule, Sequence[Union[int, SideSchedule]]] = 1,
    centered: bool = False,
) -> FolnerFamily:
    """Coordinate boxes on a lattice: [1, side(N)]^d or (-side(N), side(N)]^d.

    ``side`` is a schedule N -> positive int, an int slope (side = slope*N),
    or one schedule per coordinate.
    """
    if group.kind != KIND_LATTICE:
        raise InvalidConfigError(f"group: box families are defined on lattices, got {group}")
    if isinstance(side, Sequence) and not isinstance(side, (str, bytes)):
        schedules = [_as_schedule(s) for s in side]
        if len(schedules) != group.dim:
            raise InvalidConfigError(f"side: expected {group.dim} schedules, got {len(schedules)}")
    else:
        schedules = [_as_schedule(side)] * group.dim

    build = StridedInterval.centered_half_open if centered else StridedInterval.one_to

    def generate(n: int) -> FolnerSet:
        edges = []
        for sched in schedules:
            m = sched(n)
            if m < 1:
                raise InvalidConfigError(f"side: schedule produced {m} at N={n}; sides must be >= 1")
            edges.append(build(m))
        return FolnerSet(group, n, BoxRep(tuple(edges)))

    return FolnerFamily(group, "box", generate, {"centered": centered})


@dataclass(frozen=True)
class SquaringBoxData:
    """Exact constants behind the squaring-adapted box family.

    Per coordinate i: ``degree[i]`` is the weighted degree d_i, ``terms[i]``
    the monomial count of the correction polynomial, ``coeff_bound[i]`` the
    top-degree coefficient bound b_i, ``base[i]`` the box base c_i. The box
    at index N has edge (-c_i^(N-1)d_i-exponent ...]: edge half-length
    c_i^((N-1)*d_i); ``expansion_ratio`` is prod c_i^(-d_i), the exact
    cardinality ratio between consecutive boxes' squares and boxes.
    """

    group: GroupDescriptor
    degree: tuple[int, ...]
    terms: tuple[int, ...]
    coeff_bound: tuple[int, ...]
    base: tuple[int, ...]

    @property
    def expansion_ratio(self) -> Fraction:
        denom = 1
        for c, d in zip(self.base, self.degree):
            denom *= c**d
        return Fraction(1, denom)

    def edge_half_length(self, coord: int, index: int) -> int:
        return self.base[coord] ** ((index - 1) * self.degree[coord])

    def cardinality(self, index: int) -> int:
        total = 1
        for i in range(len(self.base)):
            total *= 2 * self.edge_half_length(i, index)
        return total


def squaring_box_data(group: GroupDescriptor) -> SquaringBoxData:
    """Run the coordinate recursion that sizes the squaring-adapted boxes.

    d_1 = 1; a monomial's weight is the degree-sum weighted by earlier d_j;
    d_i is the max monomial weight of the correction p_i (at least 1);
    b_i is the largest |coefficient| among top-weight monomials (0 for
    p_i = 0); c_i = terms_i * b_i + 2, so zero corrections get base 2.
    """
    if not group.is_torsion_free:
        raise InvalidConfigError(f"group: squaring boxes need a torsion-free kind, got {group}")
    degree: list[int] = []
    terms: list[int] = []
    coeff_bound: list[int] = []
    base: list[int] = []
    for i, poly in enumerate(group.square_polys):
        if poly.is_zero:
            degree.append(1)
            terms.append(0)
            coeff_bound.append(0)
            base.append(2)
            continue
        weights = []
        for coeff, exps in poly.terms:
            weights.append((sum(e * degree[j] for j, e in enumerate(exps)), abs(coeff)))
        top = max(w for w, _ in weights)
        bound = max(c for w, c in weights if w == top)
        degree.append(max(top, 1))
        terms.append(len(poly.terms))
        coeff_bound.append(bound)
        base.append(len(poly.terms) * bound + 2)
    return SquaringBoxData(group, tuple(degree), tuple(terms), tuple(coeff_bound), tuple(base))


def nilpotent_square_folner(group: GroupDescriptor) -> FolnerFamily:
    """Boxes sized so that squaring maps box N into box N+1.

    The family's params carry the recursion data and the exact expansion
    ratio; ``sac_certificate`` verifies the inclusion rather than trusting it.
    """
    data = squaring_box_data(group)

    def generate(n: int) -> FolnerSet:
        edges = tuple(
            StridedInterval.centered_half_open(data.edge_half_length(i, n)) for i in range(group.dim)
        )
        return FolnerSet(group, n, BoxRep(edges))

    return FolnerFamily(
        group,
        "nilpotent_square",
        generate,
        {"recursion": data, "eta": data.expansion_ratio},
    )


# ---------------------------------------------------------------------------
# defect and density diagnostics


@dataclass(frozen=True)
class DefectReport:
    """Exact translation defects |gF xor F| / |F| at one index."""

    family_kind: str
    index: int
    side: str
    cardinality: int
    defects: tuple[tuple[Coords, Fraction], ...]

    @property
    def max_defect(self) -> Fraction:
        return max((d for _, d in self.defects), default=Fraction(0))


def _box_shift_overlap(rep: BoxRep, shift: Coords) -> int:
    total = 1
    for iv, delta in zip(rep.intervals, shift):
        total *= iv.shifted(delta).intersect(iv).count
    return total


def folner_defect(
    family: FolnerFamily,
    index: int,
    test_elements: Iterable[Coords],
    side: str = "left",
    budget: Optional[int] = None,
) -> DefectReport:
    """|g F_N xor F_N| / |F_N| for each test element g (or F_N g on the right).

    Lattice boxes are measured analytically; everything else by exact
    enumeration under the element budget.
    """
    if side not in ("left", "right"):
        raise InvalidConfigError(f"side must be left or right, got {side!r}")
    fset = family.set_at(index)
    group = family.group
    card = len(fset)
    if card == 0:
        raise InvalidConfigError(f"family set at N={index} is empty; defect undefined")
    rows = []
    analytic = group.kind == KIND_LATTICE and isinstance(fset.rep, BoxRep)
    if not analytic:
        check_budget(card, budget, f"defect enumeration at N={index}")
    for g in test_elements:
        g = group.normalize(g)
        if analytic:
            overlap = _box_shift_overlap(fset.rep, g)
        else:
            if side == "left":
                overlap = sum(1 for x in fset if group.mul_coords(g, x) in fset)
            else:
                overlap = sum(1 for x in fset if group.mul_coords(x, g) in fset)
        rows.append((g, Fraction(2 * (card - overlap), card)))
    return DefectReport(family.kind, index, side, card, tuple(rows))


def _membership(a: Membership) -> Callable[[Coords], bool]:
    if callable(a):
        return a
    contains = getattr(a, "contains", None)
    if contains is None:
        raise InvalidConfigError("set argument must be callable or expose .contains")
    return contains


@dataclass(frozen=True)
class DensityReport:
    """Exact counting densities |A intersect F_N| / |F_N| over an index range."""

    rows: tuple[tuple[int, int, int, Fraction], ...]  # (N, hits, cardinality, density)

    @property
    def running_max(self) -> Fraction:
        return max((r[3] for r in self.rows), default=Fraction(0))

    @property
    def last(self) -> Fraction:
        return self.rows[-1][3]


def density_along(
    a: Membership,
    family: FolnerFamily,
    indices: Iterable[int],
    budget: Optional[int] = None,
) -> DensityReport:
    """Count A inside each F_N exactly; the running max is the density proxy.

    The finite proxy for the upper density along the family is the max of
    the recorded ratios; callers chasing a limit grow the index range.
    """
    member = _membership(a)
    rows = []
    for n in indices:
        fset = family.set_at(n)
        card = len(fset)
        if card == 0:
            raise InvalidConfigError(f"family set at N={n} is empty; density undefined")
        counted = _count_members(member, fset, budget, n)
        rows.append((n, counted, card, Fraction(counted, card)))
    return DensityReport(tuple(rows))


def _count_members(member: Callable[[Coords], bool], fset: FolnerSet, budget: Optional[int], n: int) -> int:
    rep = fset.rep
    group = fset.group
    # strided boxes meet congruence sets analytically when possible
    if isinstance(rep, BoxRep) and isinstance(member, _CongruenceMembership):
        total = 1
        for iv, (m, r) in zip(rep.intervals, member.congruences):
            total *= iv.intersect(StridedInterval(iv.lo, iv.hi, m, r)).count
        return total
    check_budget(len(fset), budget, f"density count at N={n}")
    return sum(1 for x in fset if member(x))


class _CongruenceMembership:
    """Componentwise congruence test with an analytic fast path."""

    def __init__(self, congruences: Sequence[tuple[int, int]]) -> None:
        self.congruences = tuple((m, r % m) for m, r in congruences)

    def __call__(self, coords: Coords) -> bool:
        return all(c % m == r for c, (m, r) in zip(coords, self.congruences))


def congruence_membership(congruences: Sequence[tuple[int, int]]) -> Callable[[Coords], bool]:
    """Membership in {x : x_i = r_i mod m_i}, e.g. a finite-index subgroup."""
    return _CongruenceMembership(congruences)


# ---------------------------------------------------------------------------
# squaring certificate


@dataclass(frozen=True)
class SacRecord:
    index: int
    source_cardinality: int
    image_cardinality: int
    target_cardinality: int
    ratio: Fraction
    max_fiber: int


@dataclass(frozen=True)
class SacCertificate:
    """Verified per-N inclusion, fiber and ratio data for a map between families.

    With fiber bound M and ratio bound eta, averages transfer with factor
    M/eta and a density epsilon survives as at least eta*epsilon/M.
    """

    group: GroupDescriptor
    map_label: str
    fiber_bound: int
    eta: Fraction
    records: tuple[SacRecord, ...]

    @property
    def average_factor(self) -> Fraction:
        return Fraction(self.fiber_bound, 1) / self.eta

    def transfer_bound(self, epsilon: Fraction) -> Fraction:
        return self.eta * Fraction(epsilon) / self.fiber_bound


def sac_certificate(
    source: FolnerFamily,
    target: FolnerFamily,
    mapping: Union[str, Callable[[Coords], Coords]] = "square",
    indices: Iterable[int] = (1,),
    fiber_bound: int = 1,
    eta: Optional[Fraction] = None,
    budget: Optional[int] = None,
) -> SacCertificate:
    """Verify phi(source_N) inside target_N with bounded fibers and fat image.

    Checks, for every N in ``indices``: every image point lands in the
    target set; no image point has more than ``fiber_bound`` preimages;
    |phi(source_N)| / |target_N| >= eta. The first failure raises
    ``CertificateError`` naming the witness element. ``eta`` defaults to
    the source family's recorded expansion ratio.
    """
    group = source.group
    if target.group != group:
        raise InvalidConfigError("source and target families live on different groups")
    if mapping == "square":
        phi = group.square_coords
        label = "square"
    elif callable(mapping):
        phi = mapping
        label = getattr(mapping, "__name__", "custom")
    else:
        raise InvalidConfigError(f"mapping must be 'square' or callable, got {mapping!r}")
    if eta is None:
        eta = source.params.get("eta", target.params.get("eta"))
        if eta is None:
            raise InvalidConfigError("eta: no ratio bound given and none recorded on either family")
    eta = Fraction(eta)

    records = []
    for n in indices:
        src = source.set_at(n)
        tgt = target.set_at(n)
        check_budget(len(src), budget, f"certificate image at N={n}")
        fibers: dict[Coords, int] = {}
        for x in src:
            y = phi(x)
            if y not in tgt:
                raise CertificateError(
                    f"inclusion fails at N={n}: {label}({x}) = {y} is outside the target set",
                    witness=(n, x, y),
                )
            fibers[y] = fibers.get(y, 0) + 1
        max_fiber = max(fibers.values(), default=0)
        if max_fiber > fiber_bound:
            worst = max(fibers, key=lambda k: fibers[k])
            raise CertificateError(
                f"fiber bound fails at N={n}: {worst} has {max_fiber} preimages > {fiber_bound}",
                witness=(n, worst, max_fiber),
            )
        ratio = Fraction(len(fibers), len(tgt))
        if ratio < eta:
            raise CertificateError(
                f"ratio fails at N={n}: image/target = {ratio} < {eta}",
                witness=(n, ratio),
            )
        records.append(SacRecord(n, len(src), len(fibers), len(tgt), ratio, max_fiber))
    return SacCertificate(group, label, fiber_bound, eta, tuple(records))


# ---------------------------------------------------------------------------
# weighted averages


def weighted_average(
    weight: Callable[[Coords], Union[int, Fraction]],
    family: FolnerFamily,
    index: int,
    compose_with: Optional[Union[str, Callable[[Coords], Coords]]] = None,
    budget: Optional[int] = None,
) -> Fraction:
    """Exact average of the weight (optionally of weight(phi(x))) over F_N.

    Weights must be exact rationals in [0, 1]; floats are rejected.
    """
    fset = family.set_at(index)
    check_budget(len(fset), budget, f"weighted average at N={index}")
    if compose_with == "square":
        phi = family.group.square_coords
    elif compose_with is None:
        phi = None
    elif callable(compose_with):
        phi = compose_with
    else:
        raise InvalidConfigError(f"compose_with must be None, 'square' or callable, got {compose_with!r}")
    total = Fraction(0)
    for x in fset:
        v = weight(phi(x)) if phi is not None else weight(x)
        if isinstance(v, float):
            raise InvalidConfigError("weight returned a float; weights must be exact rationals")
        v = Fraction(v)
        if v < 0 or v > 1:
            raise InvalidConfigError(f"weight value {v} outside [0, 1] at {x}")
        total += v
    return total / len(fset)


def weighted_average_supported(
    support: Mapping[Coords, Fraction],
    family: FolnerFamily,
    index: int,
    compose_with_square: bool = False,
) -> Fraction:
    """Exact average for a finitely supported weight, without enumeration.

    With ``compose_with_square`` the sum over x in F_N of weight(x*x) is
    folded through the explicit square root: only support points with a
    square root inside F_N contribute. This requires injective squaring
    (torsion-free kinds), which is exactly where it is used.
    """
    fset = family.set_at(index)
    group = family.group
    total = Fraction(0)
    for y, v in support.items():
        v = Fraction(v)
        if v < 0 or v > 1:
            raise InvalidConfigError(f"weight value {v} outside [0, 1] at {y}")
        if compose_with_square:
            x = group.sqrt_coords(y)
            if x is not None and x in fset:
                total += v
        elif y in fset:
            total += v
    return total / len(fset)


# ---------------------------------------------------------------------------
# thinning


@dataclass(frozen=True)
class ThinningStep:
    step: int
    source_index: int
    filtered_cardinality: int
    kept_cardinality: int
    retained_fraction: Fraction
    dropped_lines: int
    projection: tuple[int, ...]


@dataclass
class ThinningStage:
    coordinate: int
    seed: frozenset[int]
    steps: list[ThinningStep] = field(default_factory=list)


@dataclass(frozen=True)
class ThinningTrace:
    stages: tuple[ThinningStage, ...]


def _line_filter(elements: frozenset[Coords], coordinate: int, min_len_exclusive: int) -> tuple[frozenset[Coords], int]:
    """Keep elements on maximal coordinate lines longer than the threshold.

    A line is a maximal run of consecutive values in the chosen coordinate
    with all other coordinates fixed; runs of length <= threshold drop.
    """
    groups: dict[Coords, list[int]] = {}
    for x in elements:
        groups.setdefault(x[:coordinate] + x[coordinate + 1 :], []).append(x[coordinate])
    kept: list[Coords] = []
    dropped_lines = 0
    for rest, values in groups.items():
        values.sort()
        run_start = 0
        for pos in range(1, len(values) + 1):
            if pos == len(values) or values[pos] != values[pos - 1] + 1:
                run = values[run_start:pos]
                if len(run) > min_len_exclusive:
                    for v in run:
                        kept.append(rest[:coordinate] + (v,) + rest[coordinate:])
                else:
                    dropped_lines += 1
                run_start = pos
    return frozenset(kept), dropped_lines


def _default_q_schedule(family: FolnerFamily, coordinates: Sequence[int], budget: Optional[int]) -> SideSchedule:
    group = family.group
    basis = []
    for c in coordinates:
        e = [0] * group.dim
        e[c] = 1
        basis.append(tuple(e))

    def schedule(n: int) -> int:
        report = folner_defect(family, n, basis, side="left", budget=budget)
        delta = report.max_defect
        if delta == 0:
            return len(family.set_at(n))
        # floor(delta^(-1/2)) exactly: isqrt of the floored reciprocal
        return math.isqrt(delta.denominator // delta.numerator)

    return schedule


def thin_folner(
    family: FolnerFamily,
    targets: Union[Sequence[int], Mapping[int, Iterable[int]]],
    q_schedule: Optional[SideSchedule] = None,
    search_limit: int = 512,
    budget: Optional[int] = None,
) -> tuple[FolnerFamily, ThinningTrace]:
    """Thin a family so its coordinate projections escape any finite set.

    One stage per target coordinate, each consuming the previous stage's
    output. A stage emits sets k = 1, 2, ...: drop coordinate lines of
    length <= Q(N), exclude coordinate values already seen in earlier
    emitted sets (plus the optional seed values for that coordinate), and
    accept the first source index whose retained fraction exceeds
    1 - 1/k. Each emitted value therefore appears in at most one set per
    coordinate, which is the escape property.

    ``targets`` is a list of coordinate indices or a mapping from
    coordinate to seed values excluded from step 1 on. Returns the final
    stage as a lazy family plus the full per-step trace.
    """
    if isinstance(targets, Mapping):
        stages_spec = [(c, frozenset(v)) for c, v in targets.items()]
    else:
        stages_spec = [(c, frozenset()) for c in targets]
    if not stages_spec:
        raise InvalidConfigError("targets: at least one coordinate is required")
    for c, _ in stages_spec:
        if not 0 <= c < family.group.dim:
            raise InvalidConfigError(f"targets: coordinate {c} out of range for {family.group}")

    trace_stages = []
    current = family
    for coordinate, seed in stages_spec:
        stage_trace = ThinningStage(coordinate, seed)
        current = _thin_stage(current, coordinate, seed, q_schedule, search_limit, budget, stage_trace)
        trace_stages.append(stage_trace)
    return current, ThinningTrace(tuple(trace_stages))


def _thin_stage(
    source: FolnerFamily,
    coordinate: int,
    seed: frozenset[int],
    q_schedule: Optional[SideSchedule],
    search_limit: int,
    budget: Optional[int],
    trace: ThinningStage,
) -> FolnerFamily:
    group = source.group
    schedule = q_schedule if q_schedule is not None else _default_q_schedule(source, (coordinate,), budget)
    state = {"exclusions": set(seed), "next_source": 1, "last_q": None}
    emitted: list[FolnerSet] = []

    def emit_next() -> FolnerSet:
        k = len(emitted) + 1
        threshold = Fraction(k - 1, k)  # need retained fraction > 1 - 1/k
        n = state["next_source"]
        while n <= search_limit:
            q = schedule(n)
            last_q = state["last_q"]
            if last_q is not None and q < last_q[1]:
                raise InvalidConfigError(
                    f"q_schedule decreases from Q({last_q[0]})={last_q[1]} to Q({n})={q}; "
                    "the thinning schedule must be nondecreasing"
                )
            elements = source.set_at(n).materialize(budget)
            filtered, dropped = _line_filter(elements, coordinate, q)
            if filtered:
                kept = frozenset(x for x in filtered if x[coordinate] not in state["exclusions"])
                fraction = Fraction(len(kept), len(filtered))
                if kept and fraction > threshold:
                    state["last_q"] = (n, q)
                    state["next_source"] = n + 1
                    projection = tuple(sorted({x[coordinate] for x in kept}))
                    state["exclusions"].update(projection)
                    trace.steps.append(
                        ThinningStep(k, n, len(filtered), len(kept), fraction, dropped, projection)
                    )
                    return FolnerSet(group, k, ExplicitRep(kept))
            n += 1
        raise SearchExhaustedError(
            f"thinning step {k} on coordinate {coordinate}: no source index up to "
            f"{search_limit} retains more than {threshold} after exclusions"
        )

    def generate(k: int) -> FolnerSet:
        while len(emitted) < k:
            emitted.append(emit_next())
        return emitted[k - 1]

    return FolnerFamily(
        group,
        "thinned",
        generate,
        dict(source.params, thinned_coordinate=coordinate, seed=tuple(sorted(seed))),
    )


# ---------------------------------------------------------------------------
# subgroup restriction, cosets, shifts, inverses


@dataclass(frozen=True)
class CongruenceSubgroup:
    """Finite-index subgroup {x : m_i divides x_i} of a lattice."""

    moduli: tuple[int, ...]

    def __post_init__(self) -> None:
        for m in self.moduli:
            if m < 1:
                raise InvalidConfigError(f"subgroup moduli must be >= 1, got {m}")

    @property
    def index(self) -> int:
        total = 1
        for m in self.moduli:
            total *= m
        return total

    def contains(self, coords: Coords) -> bool:
        return all(c % m == 0 for c, m in zip(coords, self.moduli))

    def membership(self) -> Callable[[Coords], bool]:
        return congruence_membership([(m, 0) for m in self.moduli])


def restrict_folner(family: FolnerFamily, subgroup: CongruenceSubgroup) -> FolnerFamily:
    """Intersect each set with the subgroup; the result averages inside it.

    Counting density of the subgroup along the original family tends to
    1/index, and the restricted sets keep the invariance needed to serve
    as a family on the subgroup itself.
    """
    group = family.group
    if group.kind != KIND_LATTICE:
        raise InvalidConfigError(f"group: congruence restriction is defined on lattices, got {group}")
    if len(subgroup.moduli) != group.dim:
        raise InvalidConfigError(f"subgroup: expected {group.dim} moduli, got {len(subgroup.moduli)}")

    def restrict_set(fset: FolnerSet) -> FolnerSet:
        rep = fset.rep
        if isinstance(rep, BoxRep):
            merged = tuple(
                iv.intersect(StridedInterval(iv.lo, iv.hi, m, 0)) for iv, m in zip(rep.intervals, subgroup.moduli)
            )
            return FolnerSet(group, fset.index, BoxRep(merged))
        member = subgroup.membership()
        kept = frozenset(x for x in fset if member(x))
        return FolnerSet(group, fset.index, ExplicitRep(kept))

    return family.derived("restricted", restrict_set, {"subgroup_moduli": subgroup.moduli, "subgroup_index": subgroup.index})


def coset_folner(
    group: GroupDescriptor,
    inner: FolnerFamily,
    representatives: Sequence[Coords],
    budget: Optional[int] = None,
) -> FolnerFamily:
    """Disjoint union of left translates beta_i * inner_N over coset reps.

    The first representative must be the identity. Disjointness is not
    assumed: each built set is checked by cardinality (sum of parts vs
    distinct elements) and a collision raises with the offending element.
    """
    if not group.is_abelian:
        raise InvalidConfigError(f"group: coset assembly is defined for abelian kinds, got {group}")
    if inner.group != group:
        raise InvalidConfigError("inner family must live on the same coordinate group")
    reps = tuple(group.normalize(r) for r in representatives)
    if not reps or reps[0] != group.identity_coords():
        raise InvalidConfigError("representatives: the first representative must be the identity")

    def generate(n: int) -> FolnerSet:
        base = inner.set_at(n)
        parts = tuple(TranslatedRep(base.rep, r, side="left") for r in reps)
        union = UnionRep(parts)
        expected = len(reps) * len(base)
        check_budget(expected, budget, f"coset union at N={n}")
        seen: set[Coords] = set()
        for part in parts:
            for x in part.iterate(group):
                if x in seen:
                    raise CertificateError(
                        f"coset parts overlap at N={n}: {x} appears in two translates",
                        witness=(n, x),
                    )
                seen.add(x)
        return FolnerSet(group, n, union)

    return FolnerFamily(group, "coset", generate, dict(inner.params, representatives=reps))


def shift_folner(family: FolnerFamily, shifts: Callable[[int], Coords]) -> FolnerFamily:
    """Right-translate each set by a schedule g_N; left invariance survives.

    |g (F_N g_N) xor (F_N g_N)| equals |g F_N xor F_N| exactly, so left
    defects are unchanged while the sets wander. Used to seed averages at
    prescribed locations.
    """

    def shift_set(fset: FolnerSet) -> FolnerSet:
        g = family.group.normalize(shifts(fset.index))
        return FolnerSet(family.group, fset.index, TranslatedRep(fset.rep, g, side="right"))

    return family.derived("shifted", shift_set)


def invert_folner(family: FolnerFamily) -> FolnerFamily:
    """Elementwise inverses: left defects of the result are right defects of the source."""

    def invert_set(fset: FolnerSet) -> FolnerSet:
        return FolnerSet(family.group, fset.index, InvertedRep(fset.rep))

    return family.derived("inverted", invert_set)
