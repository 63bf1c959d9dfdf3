"""Finite symbolic shift systems and greedy progression extraction.

The system is the shift action on {0,1}^G with base point the indicator
of a chosen set: (T_h x)(g) = x(gh). Everything here is evaluated on
finite windows only: points are membership oracles, open sets are
finite cylinders, and the topological notions (closeness, approach along
a sequence) are replaced by their window surrogates. The extraction
pipeline turns a set family into a shifted-product witness: pick
translates x1, x2 of the base point, list window-approach elements,
grow a member tuple greedily under cylinder constraints, and hand the
result to the product-set verifier.

No measures, factors, or genuine limit objects live here; a reported
approach list says only that finitely many windows matched.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

from .errors import InvalidConfigError
from .groups import Coords, GroupDescriptor, enumerate_coords
from .sumsets import (
    ORDER_INCREASING,
    SIDE_LEFT,
    SetFamily,
    Witness,
    verify_witness,
)


# ---------------------------------------------------------------------------
# points of {0,1}^G


@dataclass(frozen=True)
class Point:
    """A point of {0,1}^G: a base oracle precomposed with a right translate.

    ``evaluate(g)`` returns base(g * shift); ``translated(h)`` is the
    shift action T_h, so shifts compose on the left and the action law
    T_h1 (T_h2 x) = T_(h1 h2) x holds as dataclass equality, not just
    pointwise.
    """

    group: GroupDescriptor
    family: Optional[SetFamily] = None
    table: Optional[Mapping[Coords, int]] = None
    fn: Optional[Callable[[Coords], int]] = None
    default: int = 0
    shift: Coords = ()

    def __post_init__(self) -> None:
        sources = sum(x is not None for x in (self.family, self.table, self.fn))
        if sources != 1:
            raise InvalidConfigError("point needs exactly one of family, table, fn")
        if not self.shift:
            object.__setattr__(self, "shift", self.group.identity_coords())

    def evaluate(self, g: Coords) -> int:
        u = self.group.mul_coords(tuple(g), self.shift)
        if self.family is not None:
            return 1 if self.family.contains(u) else 0
        if self.table is not None:
            return int(self.table.get(u, self.default))
        return 1 if self.fn(u) else 0

    __call__ = evaluate

    def translated(self, h: Coords) -> "Point":
        new_shift = self.group.mul_coords(tuple(h), self.shift)
        return Point(self.group, self.family, self.table, self.fn, self.default, new_shift)


def point_from_family(family: SetFamily) -> Point:
    return Point(family.group, family=family)


def point_from_table(group: GroupDescriptor, table: Mapping[Coords, int], default: int = 0) -> Point:
    frozen = {tuple(k): int(v) for k, v in table.items()}
    return Point(group, table=frozen, default=default)


def point_from_callable(group: GroupDescriptor, fn: Callable[[Coords], int]) -> Point:
    return Point(group, fn=fn)


# ---------------------------------------------------------------------------
# cylinders


@dataclass(frozen=True)
class Cylinder:
    """Finitely many pinned coordinates; the only open sets used here."""

    group: GroupDescriptor
    conditions: tuple[tuple[Coords, int], ...]

    def contains(self, x: Point) -> bool:
        return all(x(g) == v for g, v in self.conditions)

    def shift_preimage(self, t: Coords) -> "Cylinder":
        """The cylinder {x : T_t x in self}; pins coordinates g*t."""
        moved = tuple((self.group.mul_coords(g, tuple(t)), v) for g, v in self.conditions)
        return Cylinder(self.group, moved)


def base_cylinder(group: GroupDescriptor) -> Cylinder:
    """{x : x(e) = 1}; translates of the base point land here exactly on members."""
    return Cylinder(group, ((group.identity_coords(), 1),))


# ---------------------------------------------------------------------------
# the system


@dataclass(frozen=True)
class SymbolicSystem:
    """Shift action data: the group, the base point, and window exhaustion."""

    group: GroupDescriptor
    base: Point

    @staticmethod
    def from_family(family: SetFamily) -> "SymbolicSystem":
        return SymbolicSystem(family.group, point_from_family(family))

    def window(self, n: int) -> list[Coords]:
        """First n elements of the graded-lexicographic enumeration."""
        return list(enumerate_coords(self.group, n))

    def ball(self, radius: int) -> list[Coords]:
        """Sup-norm ball as a window, in graded-lexicographic order."""
        if radius < 0:
            raise InvalidConfigError(f"radius must be >= 0, got {radius}")
        count = (2 * radius + 1) ** self.group.dim
        return list(enumerate_coords(self.group, count))


def cylinder_distance(
    x: Point,
    y: Point,
    exhaustion: Sequence[Sequence[Coords]],
    details: bool = False,
):
    """2^-(deepest window index on which x and y agree), 1-indexed.

    Disagreement already on the first window gives 1; agreement through
    the whole provided exhaustion gives 0.0, which is a statement about
    evaluation depth, not true equality. ``details`` returns
    (distance, agree_depth, exhausted) instead of the bare number.
    """
    if not exhaustion:
        raise InvalidConfigError("exhaustion must contain at least one window")
    depth = 0
    for window in exhaustion:
        if all(x(g) == y(g) for g in window):
            depth += 1
        else:
            break
    exhausted = depth == len(exhaustion)
    distance = 0.0 if exhausted else (1.0 if depth == 0 else 2.0 ** -depth)
    if details:
        return distance, depth, exhausted
    return distance


# ---------------------------------------------------------------------------
# approach sequences


@dataclass(frozen=True)
class ProgressionCandidate:
    """Window evidence that (x1, x2) is approached from (base, x1)."""

    x1: Point
    x2: Point
    window: tuple[Coords, ...]
    approach: tuple[Coords, ...]

    def reverify(self, sys: SymbolicSystem) -> bool:
        a = sys.base
        g = sys.group
        for cand in self.approach:
            for h in self.window:
                hg = g.mul_coords(h, cand)
                if a(hg) != self.x1(h) or self.x1(hg) != self.x2(h):
                    return False
        return True


def find_approach(
    sys: SymbolicSystem,
    x1: Point,
    x2: Point,
    window: Union[int, Sequence[Coords]],
    search_domain: Sequence[Coords],
    count: Optional[int] = None,
    jobs: int = 1,
) -> list[Coords]:
    """Elements g with T_g base matching x1 and T_g x1 matching x2 on the window.

    Both conditions are coordinate tests: base(h g) = x1(h) and
    x1(h g) = x2(h) for every h in the window. Candidates are scanned in
    plain lexicographic order; the empty list is a legitimate answer.
    ``jobs`` > 1 partitions the domain into contiguous sorted chunks, so
    the merged result is the serial one (points backed by tables or
    families travel to workers; bare callables may not pickle).
    """
    win = sys.window(window) if isinstance(window, int) else [tuple(h) for h in window]
    domain = sorted({tuple(c) for c in search_domain})
    if jobs > 1 and len(domain) > 1:
        from .sumsets import _split_even
        import multiprocessing

        chunks = _split_even(domain, jobs)
        with multiprocessing.Pool(jobs) as pool:
            parts = pool.map(
                _approach_chunk_worker,
                [(sys, x1, x2, win, chunk) for chunk in chunks],
            )
        found = [g for part in parts for g in part]
        return found if count is None else found[:count]
    found = _approach_chunk_worker((sys, x1, x2, win, domain))
    return found if count is None else found[:count]


def _approach_chunk_worker(args) -> list[Coords]:
    sys, x1, x2, win, domain = args
    group = sys.group
    a = sys.base
    found: list[Coords] = []
    for g in domain:
        ok = True
        for h in win:
            hg = group.mul_coords(h, g)
            if a(hg) != x1(h) or x1(hg) != x2(h):
                ok = False
                break
        if ok:
            found.append(g)
    return found


# ---------------------------------------------------------------------------
# greedy extraction


@dataclass(frozen=True)
class StepRecord:
    step: int
    chosen: Optional[Coords]
    candidates_tested: int
    rejected_base: int
    rejected_shift: int
    rejected_pairs: int
    pair_constraints: int


@dataclass(frozen=True)
class GreedyResult:
    members: tuple[Coords, ...]
    complete: bool
    trace: tuple[StepRecord, ...]
    blocking: Optional[str] = None


_BLOCK_BASE = "base cylinder on the new member"
_BLOCK_SHIFT = "shifted cylinder on x1 at the new member"
_BLOCK_PAIRS = "shifted cylinder on pair products"
_BLOCK_EMPTY = "candidate pool exhausted"


def greedy_extract(
    sys: SymbolicSystem,
    x1: Point,
    candidates: Iterable[Coords],
    base_test: Cylinder,
    pair_test: Cylinder,
    k: int,
) -> GreedyResult:
    """Grow members one at a time under the three cylinder constraints.

    A candidate b extends the current tuple when T_b base lies in
    ``base_test``, T_b x1 lies in ``pair_test``, and for every earlier
    member m the translate T_(m b) of the base point lies in
    ``pair_test``. Among valid extensions the smallest in the fixed
    graded enumeration is taken. Exhaustion returns the partial tuple
    with the constraint that rejected the most candidates at the stuck
    step.
    """
    if k < 1:
        raise InvalidConfigError(f"k must be >= 1, got {k}")
    group = sys.group
    a = sys.base
    pool = sorted({tuple(c) for c in candidates}, key=lambda c: (max(abs(v) for v in c) if c else 0, c))
    members: list[Coords] = []
    trace: list[StepRecord] = []
    while len(members) < k:
        step = len(members) + 1
        tested = rej_base = rej_shift = rej_pairs = 0
        chosen = None
        for cand in pool:
            if cand in members:
                continue
            tested += 1
            if not base_test.contains(a.translated(cand)):
                rej_base += 1
                continue
            if not pair_test.contains(x1.translated(cand)):
                rej_shift += 1
                continue
            ok = True
            for m in members:
                product = group.mul_coords(m, cand)
                if not pair_test.contains(a.translated(product)):
                    ok = False
                    break
            if not ok:
                rej_pairs += 1
                continue
            chosen = cand
            break
        trace.append(StepRecord(step, chosen, tested, rej_base, rej_shift, rej_pairs, len(members)))
        if chosen is None:
            counts = [(rej_base, _BLOCK_BASE), (rej_shift, _BLOCK_SHIFT), (rej_pairs, _BLOCK_PAIRS)]
            worst = max(counts, key=lambda p: p[0])
            blocking = worst[1] if worst[0] > 0 else _BLOCK_EMPTY
            return GreedyResult(tuple(members), False, tuple(trace), blocking)
        members.append(chosen)
    return GreedyResult(tuple(members), True, tuple(trace))


# ---------------------------------------------------------------------------
# end-to-end extraction


@dataclass(frozen=True)
class ExtractionWindows:
    """Finite windows steering the whole pipeline.

    agreement_radius: sup-norm ball on which approach must match;
    domain_radius: ball scanned for approach elements;
    translate_radius: ball for the translates defining x1 and x2;
    shift_radius: ball for the witness shift;
    approach_count: cap on collected approach elements (None collects all).
    """

    agreement_radius: int = 2
    domain_radius: int = 8
    translate_radius: int = 4
    shift_radius: int = 4
    approach_count: Optional[int] = None


@dataclass(frozen=True)
class ExtractionOutcome:
    witness: Optional[Witness]
    stats: dict

    @property
    def found(self) -> bool:
        return self.witness is not None


def end_to_end_extract(
    family: SetFamily,
    windows: ExtractionWindows,
    k: int,
) -> ExtractionOutcome:
    """From a set family to a verified left-shifted product witness.

    Builds the shift system with base point the family indicator, scans
    translates x1 = T_s1 base (s1 a member, so x1 sits in the base
    cylinder) and x2 = T_s2 x1, lists approach elements for each such
    pair, then tries every shift in its ball: the greedy growth must
    reach k members, and the resulting member tuple is converted to a
    witness and re-verified against the family before being returned.
    Scan orders are fixed (graded enumeration), so the outcome is a
    function of the inputs alone. Returns the first verified witness or
    the full failure statistics.
    """
    group = family.group
    sys = SymbolicSystem.from_family(family)
    window = sys.ball(windows.agreement_radius)
    domain = sys.ball(windows.domain_radius)
    translates = sys.ball(windows.translate_radius)
    shifts = sys.ball(windows.shift_radius)
    e_cyl = base_cylinder(group)
    stats = {
        "translate_pairs_tried": 0,
        "approach_calls": 0,
        "approach_elements_total": 0,
        "greedy_runs": 0,
        "greedy_incomplete": 0,
        "verify_failures": 0,
    }
    for s1 in translates:
        if not family.contains(s1):
            continue
        x1 = sys.base.translated(s1)
        for s2 in translates:
            x2 = x1.translated(s2)
            stats["translate_pairs_tried"] += 1
            stats["approach_calls"] += 1
            approach = find_approach(sys, x1, x2, window, domain, windows.approach_count)
            stats["approach_elements_total"] += len(approach)
            if len(approach) < k:
                continue
            for t in shifts:
                f_cyl = e_cyl.shift_preimage(t)
                stats["greedy_runs"] += 1
                result = greedy_extract(sys, x1, approach, e_cyl, f_cyl, k)
                if not result.complete:
                    stats["greedy_incomplete"] += 1
                    continue
                witness = Witness(group, t, result.members, SIDE_LEFT, ORDER_INCREASING)
                report = verify_witness(family, witness, check_members=True)
                if report.passed:
                    return ExtractionOutcome(witness, stats)
                stats["verify_failures"] += 1
    return ExtractionOutcome(None, stats)
