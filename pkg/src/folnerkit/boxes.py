"""Finite set representations: strided interval boxes and friends.

A ``StridedInterval`` is the integer set {x in [lo, hi] : x = residue
(mod modulus)}; products of these cover every box shape used here
(one-based boxes [1, n], centered half-open boxes (-M, M], odd-only and
subgroup-strided variants) with O(1) counting and membership. On top of
boxes sit explicit sets, translated/inverted views and disjoint unions;
every representation counts exactly and enumerates deterministically.

The element budget guards every operation that would materialize or walk
a set: exceeding it raises instead of thrashing.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import BudgetExceededError, InvalidConfigError
from .groups import Coords, GroupDescriptor

DEFAULT_ELEMENT_BUDGET = 50_000_000


def check_budget(required: int, budget: Optional[int], what: str) -> None:
    limit = DEFAULT_ELEMENT_BUDGET if budget is None else budget
    if required > limit:
        raise BudgetExceededError(
            f"{what} needs {required} elements, over the budget of {limit}",
            required=required,
            budget=limit,
        )


# ---------------------------------------------------------------------------
# strided intervals


@dataclass(frozen=True)
class StridedInterval:
    """{x : lo <= x <= hi, x = residue mod modulus}; empty when hi < lo."""

    lo: int
    hi: int
    modulus: int = 1
    residue: int = 0

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise InvalidConfigError(f"interval modulus must be >= 1, got {self.modulus}")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    @staticmethod
    def one_to(n: int) -> "StridedInterval":
        """[1, n], the one-based box edge."""
        return StridedInterval(1, n)

    @staticmethod
    def centered_half_open(m: int) -> "StridedInterval":
        """(-m, m], the centered box edge: 2m integers."""
        return StridedInterval(-m + 1, m)

    @property
    def count(self) -> int:
        if self.hi < self.lo:
            return 0
        m, r = self.modulus, self.residue
        return (self.hi - r) // m - (self.lo - 1 - r) // m

    def __contains__(self, x: int) -> bool:
        return self.lo <= x <= self.hi and x % self.modulus == self.residue

    def __iter__(self) -> Iterator[int]:
        m, r = self.modulus, self.residue
        first = self.lo + (r - self.lo) % m
        return iter(range(first, self.hi + 1, m))

    def shifted(self, delta: int) -> "StridedInterval":
        return StridedInterval(self.lo + delta, self.hi + delta, self.modulus, self.residue + delta)

    def intersect(self, other: "StridedInterval") -> "StridedInterval":
        """Exact intersection; the result's congruence class is the CRT merge."""
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        m1, r1, m2, r2 = self.modulus, self.residue, other.modulus, other.residue
        g = math.gcd(m1, m2)
        if (r2 - r1) % g:
            return StridedInterval(0, -1)  # incompatible congruences: empty
        lcm = m1 // g * m2
        # solve x = r1 (m1), x = r2 (m2) by lifting r1 along m1
        step = (r2 - r1) // g * pow(m1 // g, -1, m2 // g) % (m2 // g) if m2 != g else 0
        residue = (r1 + m1 * step) % lcm
        return StridedInterval(lo, hi, lcm, residue)

    def restrict_parity(self, residue: int, modulus: int = 2) -> "StridedInterval":
        return self.intersect(StridedInterval(self.lo, self.hi, modulus, residue))


# ---------------------------------------------------------------------------
# set representations


class SetRep:
    """Abstract finite subset of one coordinate group."""

    def count(self, group: GroupDescriptor) -> int:
        raise NotImplementedError

    def contains(self, group: GroupDescriptor, coords: Coords) -> bool:
        raise NotImplementedError

    def iterate(self, group: GroupDescriptor) -> Iterator[Coords]:
        raise NotImplementedError


@dataclass(frozen=True)
class BoxRep(SetRep):
    """Product of strided intervals, one per coordinate."""

    intervals: tuple[StridedInterval, ...]

    def count(self, group: GroupDescriptor) -> int:
        total = 1
        for iv in self.intervals:
            total *= iv.count
        return total

    def contains(self, group: GroupDescriptor, coords: Coords) -> bool:
        return len(coords) == len(self.intervals) and all(c in iv for c, iv in zip(coords, self.intervals))

    def iterate(self, group: GroupDescriptor) -> Iterator[Coords]:
        return itertools.product(*self.intervals)


@dataclass(frozen=True)
class ExplicitRep(SetRep):
    elements: frozenset[Coords]

    def count(self, group: GroupDescriptor) -> int:
        return len(self.elements)

    def contains(self, group: GroupDescriptor, coords: Coords) -> bool:
        return coords in self.elements

    def iterate(self, group: GroupDescriptor) -> Iterator[Coords]:
        return iter(sorted(self.elements))


@dataclass(frozen=True)
class TranslatedRep(SetRep):
    """base translated by a fixed element: left side g*S, right side S*g."""

    base: SetRep
    by: Coords
    side: str = "right"

    def __post_init__(self) -> None:
        if self.side not in ("left", "right"):
            raise InvalidConfigError(f"translation side must be left or right, got {self.side!r}")

    def count(self, group: GroupDescriptor) -> int:
        return self.base.count(group)

    def contains(self, group: GroupDescriptor, coords: Coords) -> bool:
        g_inv = group.inv_coords(self.by)
        if self.side == "right":
            return self.base.contains(group, group.mul_coords(coords, g_inv))
        return self.base.contains(group, group.mul_coords(g_inv, coords))

    def iterate(self, group: GroupDescriptor) -> Iterator[Coords]:
        if self.side == "right":
            return (group.mul_coords(x, self.by) for x in self.base.iterate(group))
        return (group.mul_coords(self.by, x) for x in self.base.iterate(group))


@dataclass(frozen=True)
class InvertedRep(SetRep):
    """{x^-1 : x in base}."""

    base: SetRep

    def count(self, group: GroupDescriptor) -> int:
        return self.base.count(group)

    def contains(self, group: GroupDescriptor, coords: Coords) -> bool:
        return self.base.contains(group, group.inv_coords(coords))

    def iterate(self, group: GroupDescriptor) -> Iterator[Coords]:
        return (group.inv_coords(x) for x in self.base.iterate(group))


@dataclass(frozen=True)
class UnionRep(SetRep):
    """Union of parts; counting assumes the parts were verified disjoint."""

    parts: tuple[SetRep, ...]

    def count(self, group: GroupDescriptor) -> int:
        return sum(part.count(group) for part in self.parts)

    def contains(self, group: GroupDescriptor, coords: Coords) -> bool:
        return any(part.contains(group, coords) for part in self.parts)

    def iterate(self, group: GroupDescriptor) -> Iterator[Coords]:
        return itertools.chain.from_iterable(part.iterate(group) for part in self.parts)


def box(*intervals: StridedInterval) -> BoxRep:
    return BoxRep(tuple(intervals))


def window_box(bounds: Sequence[tuple[int, int]]) -> BoxRep:
    """Plain box from inclusive (lo, hi) bounds per coordinate."""
    return BoxRep(tuple(StridedInterval(lo, hi) for lo, hi in bounds))


def materialize(rep: SetRep, group: GroupDescriptor, budget: Optional[int] = None) -> frozenset[Coords]:
    check_budget(rep.count(group), budget, "materializing a set")
    return frozenset(rep.iterate(group))
