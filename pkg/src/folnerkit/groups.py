"""Coordinatized groups with exact integer arithmetic.

Four group kinds are supported, each presented by coordinates so that
every element is a tuple of Python ints (exact, unbounded):

* ``lattice(d)``        -- Z^d under addition;
* ``heisenberg3()``     -- integer 3x3 unitriangular matrices in the
                           coordinates (a1, a2, a3) with product
                           (a1+b1, a2+b2, a3+b3+a1*b2);
* ``unitriangular(n)``  -- integer nxn unitriangular matrices, coordinates
                           listed superdiagonal by superdiagonal (offset
                           j-i ascending, row-major within an offset), the
                           only order in which squaring is triangular in
                           the coordinates;
* ``finite_vector(p, n)`` -- (Z/p)^n under addition mod p.

For each kind the squaring map satisfies, coordinate by coordinate,

    coord_i(x*x) = 2*coord_i(x) + p_i(coord_1(x), ..., coord_{i-1}(x))

with integer polynomials ``p_i`` depending only on earlier coordinates
(for ``finite_vector`` the identity holds mod p with every ``p_i = 0``).
The ``p_i`` are computed symbolically once per descriptor by expanding
x*x over polynomial-valued coordinates; a non-integer or non-triangular
expansion raises instead of being silently accepted.

Everything here is immutable and safe to share across processes.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .errors import GroupMismatchError, InvalidConfigError

Coords = tuple[int, ...]

KIND_LATTICE = "lattice"
KIND_HEISENBERG = "heisenberg3"
KIND_UNITRIANGULAR = "unitriangular"
KIND_FINITE_VECTOR = "finite_vector"

_TORSION_FREE_KINDS = (KIND_LATTICE, KIND_HEISENBERG, KIND_UNITRIANGULAR)


# ---------------------------------------------------------------------------
# polynomials


def _canon_terms(raw: dict[Coords, int]) -> tuple[tuple[int, Coords], ...]:
    return tuple(sorted(((c, e) for e, c in raw.items() if c != 0), key=lambda t: t[1]))


@dataclass(frozen=True)
class Polynomial:
    """Multivariate polynomial with exact integer coefficients.

    ``terms`` is a canonical sorted tuple of (coefficient, exponent-vector)
    pairs; ``arity`` fixes the exponent-vector length even when unused.
    """

    arity: int
    terms: tuple[tuple[int, Coords], ...] = ()

    def __post_init__(self) -> None:
        for coeff, exps in self.terms:
            if not isinstance(coeff, int):
                raise InvalidConfigError(f"polynomial coefficient {coeff!r} is not an exact integer")
            if len(exps) != self.arity:
                raise InvalidConfigError("polynomial exponent vector does not match arity")

    @staticmethod
    def constant(value: int, arity: int) -> "Polynomial":
        if value == 0:
            return Polynomial(arity, ())
        return Polynomial(arity, ((value, (0,) * arity),))

    @staticmethod
    def variable(index: int, arity: int) -> "Polynomial":
        exps = tuple(1 if i == index else 0 for i in range(arity))
        return Polynomial(arity, ((1, exps),))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.arity != self.arity:
                raise InvalidConfigError("polynomial arity mismatch")
            return other
        if isinstance(other, int):
            return Polynomial.constant(other, self.arity)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc: dict[Coords, int] = {e: c for c, e in self.terms}
        for c, e in other.terms:
            acc[e] = acc.get(e, 0) + c
        return Polynomial(self.arity, _canon_terms(acc))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.arity, tuple((-c, e) for c, e in self.terms))

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc: dict[Coords, int] = {}
        for c1, e1 in self.terms:
            for c2, e2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return Polynomial(self.arity, _canon_terms(acc))

    __rmul__ = __mul__

    def evaluate(self, args: Sequence[int]) -> int:
        if len(args) != self.arity:
            raise InvalidConfigError("polynomial argument count does not match arity")
        total = 0
        for coeff, exps in self.terms:
            value = coeff
            for a, e in zip(args, exps):
                if e:
                    value *= a**e
            total += value
        return total

    def used_variables(self) -> frozenset[int]:
        return frozenset(i for _, exps in self.terms for i, e in enumerate(exps) if e)

    def restricted(self, arity: int) -> "Polynomial":
        """Re-encode over the first ``arity`` variables; later ones must be unused."""
        cut = []
        for coeff, exps in self.terms:
            if any(exps[arity:]):
                raise InvalidConfigError("polynomial uses a variable beyond the requested arity")
            cut.append((coeff, exps[:arity]))
        return Polynomial(arity, tuple(cut))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for coeff, exps in self.terms:
            factors = [f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e]
            if not factors:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append("*".join(factors))
            elif coeff == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{coeff}*" + "*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# descriptors


@functools.lru_cache(maxsize=None)
def _ut_positions(n: int) -> tuple[tuple[int, int], ...]:
    # offset-major: all entries with j - i = 1 first, then j - i = 2, ...
    return tuple((i, i + off) for off in range(1, n) for i in range(n - off))


@dataclass(frozen=True)
class GroupDescriptor:
    """Immutable description of one coordinatized group.

    ``dim`` is the coordinate count; ``square_polys[i]`` is the polynomial
    correction of coordinate i under squaring, in the first i coordinates.
    """

    kind: str
    dim: int
    modulus: Optional[int] = None  # finite_vector only
    matrix_size: Optional[int] = None  # unitriangular only
    square_polys: tuple[Polynomial, ...] = field(default=(), compare=False, repr=False)

    # -- basic data ---------------------------------------------------------

    @property
    def is_abelian(self) -> bool:
        if self.kind in (KIND_LATTICE, KIND_FINITE_VECTOR):
            return True
        if self.kind == KIND_UNITRIANGULAR:
            return self.matrix_size <= 2
        return False

    @property
    def is_torsion_free(self) -> bool:
        return self.kind in _TORSION_FREE_KINDS

    def identity_coords(self) -> Coords:
        return (0,) * self.dim

    def normalize(self, coords: Sequence[int]) -> Coords:
        if len(coords) != self.dim:
            raise GroupMismatchError(f"expected {self.dim} coordinates, got {len(coords)}")
        if self.kind == KIND_FINITE_VECTOR:
            p = self.modulus
            return tuple(int(c) % p for c in coords)
        return tuple(int(c) for c in coords)

    # -- group law ----------------------------------------------------------

    def mul_coords(self, a: Sequence[int], b: Sequence[int]) -> Coords:
        kind = self.kind
        if kind == KIND_LATTICE:
            return tuple(x + y for x, y in zip(a, b))
        if kind == KIND_HEISENBERG:
            return (a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1])
        if kind == KIND_FINITE_VECTOR:
            p = self.modulus
            return tuple((x + y) % p for x, y in zip(a, b))
        return self._ut_from_matrix(_mat_mul(self._ut_to_matrix(a), self._ut_to_matrix(b)))

    def inv_coords(self, a: Sequence[int]) -> Coords:
        kind = self.kind
        if kind == KIND_LATTICE:
            return tuple(-x for x in a)
        if kind == KIND_HEISENBERG:
            return (-a[0], -a[1], -a[2] + a[0] * a[1])
        if kind == KIND_FINITE_VECTOR:
            p = self.modulus
            return tuple((-x) % p for x in a)
        return self._ut_from_matrix(_ut_mat_inv(self._ut_to_matrix(a)))

    def square_coords(self, a: Sequence[int]) -> Coords:
        """Square via the coordinate polynomials (not via ``mul_coords``)."""
        if self.kind == KIND_FINITE_VECTOR:
            p = self.modulus
            return tuple((2 * x) % p for x in a)
        out = []
        for i, poly in enumerate(self.square_polys):
            out.append(2 * a[i] + poly.evaluate(a[:i]))
        return tuple(out)

    def sqrt_coords(self, y: Sequence[int]) -> Optional[Coords]:
        """The unique x with x*x = y, or None.

        Solves the squaring recursion coordinate by coordinate; exact
        halving fails on any odd residual. Undefined for finite_vector
        with p = 2, where squaring has full kernel.
        """
        if self.kind == KIND_FINITE_VECTOR:
            p = self.modulus
            if p == 2:
                raise InvalidConfigError("square roots are ambiguous in finite_vector with p = 2")
            half = pow(2, -1, p)
            return tuple((half * c) % p for c in y)
        xs: list[int] = []
        for i, poly in enumerate(self.square_polys):
            residual = y[i] - poly.evaluate(xs[:i])
            if residual % 2:
                return None
            xs.append(residual // 2)
        return tuple(xs)

    # -- unitriangular plumbing ---------------------------------------------

    def _positions(self) -> tuple[tuple[int, int], ...]:
        return _ut_positions(self.matrix_size)

    def _ut_to_matrix(self, coords: Sequence[int]):
        n = self.matrix_size
        mat = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for (i, j), value in zip(self._positions(), coords):
            mat[i][j] = value
        return mat

    def _ut_from_matrix(self, mat) -> Coords:
        return tuple(mat[i][j] for i, j in self._positions())

    # -- presentation -------------------------------------------------------

    def spec_string(self) -> str:
        if self.kind == KIND_LATTICE:
            return f"lattice:{self.dim}"
        if self.kind == KIND_HEISENBERG:
            return "heisenberg3"
        if self.kind == KIND_UNITRIANGULAR:
            return f"unitriangular:{self.matrix_size}"
        return f"finite-vector:{self.modulus}:{self.dim}"

    def __str__(self) -> str:
        return self.spec_string()


def _mat_mul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(i, j + 1)) if j >= i else 0 for j in range(n)] for i in range(n)]


def _ut_mat_inv(a):
    # (I + N)^-1 = I - N + N^2 - ... for strictly upper triangular N
    n = len(a)
    ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    nil = [[a[i][j] if j > i else 0 for j in range(n)] for i in range(n)]
    out = [row[:] for row in ident]
    power = ident
    sign = 1
    for _ in range(1, n):
        power = _mat_mul(power, nil)
        sign = -sign
        for i in range(n):
            for j in range(n):
                out[i][j] += sign * power[i][j]
    return out


def _symbolic_square_polys(group: GroupDescriptor) -> tuple[Polynomial, ...]:
    """Expand x*x over polynomial coordinates and peel off 2*x_i.

    Raises if any correction polynomial touches a coordinate at or past
    its own index; the coordinate order must make squaring triangular.
    """
    s = group.dim
    generic = tuple(Polynomial.variable(i, s) for i in range(s))
    squared = group.mul_coords(generic, generic)
    polys = []
    for i in range(s):
        correction = squared[i] - 2 * generic[i]
        if not isinstance(correction, Polynomial):
            correction = Polynomial.constant(int(correction), s)
        used = correction.used_variables()
        if any(v >= i for v in used):
            raise InvalidConfigError(
                f"squaring correction for coordinate {i + 1} uses coordinate "
                f"{max(used) + 1}; coordinate order is not triangular"
            )
        polys.append(correction.restricted(i))
    return tuple(polys)


def _with_square_polys(group: GroupDescriptor) -> GroupDescriptor:
    if group.kind == KIND_FINITE_VECTOR:
        polys = tuple(Polynomial(i, ()) for i in range(group.dim))
    else:
        polys = _symbolic_square_polys(group)
    object.__setattr__(group, "square_polys", polys)
    return group


def lattice(dim: int) -> GroupDescriptor:
    """Z^dim under addition."""
    if dim < 1:
        raise InvalidConfigError(f"lattice dimension must be >= 1, got {dim}")
    return _with_square_polys(GroupDescriptor(KIND_LATTICE, dim))


def heisenberg3() -> GroupDescriptor:
    """Integer Heisenberg group in the coordinates (a1, a2, a3)."""
    return _with_square_polys(GroupDescriptor(KIND_HEISENBERG, 3))


def unitriangular(n: int) -> GroupDescriptor:
    """Integer nxn unitriangular matrices, superdiagonal-major coordinates."""
    if n < 2:
        raise InvalidConfigError(f"unitriangular size must be >= 2, got {n}")
    return _with_square_polys(GroupDescriptor(KIND_UNITRIANGULAR, n * (n - 1) // 2, matrix_size=n))


def finite_vector(p: int, n: int) -> GroupDescriptor:
    """(Z/p)^n under componentwise addition mod p."""
    if p < 2:
        raise InvalidConfigError(f"finite_vector modulus must be >= 2, got {p}")
    if n < 1:
        raise InvalidConfigError(f"finite_vector length must be >= 1, got {n}")
    return _with_square_polys(GroupDescriptor(KIND_FINITE_VECTOR, n, modulus=p))


def parse_group(text: str) -> GroupDescriptor:
    """Parse a compact descriptor string, e.g. ``lattice:2`` or ``ut:4``.

    Accepted forms: ``lattice:<d>``, ``heisenberg3``/``h3``,
    ``unitriangular:<n>``/``ut:<n>``, ``finite-vector:<p>:<n>``/``fv:<p>:<n>``.
    """
    parts = text.strip().lower().split(":")
    head, args = parts[0], parts[1:]
    try:
        if head == "lattice":
            (d,) = args
            return lattice(int(d))
        if head in ("heisenberg3", "h3") and not args:
            return heisenberg3()
        if head in ("unitriangular", "ut"):
            (n,) = args
            return unitriangular(int(n))
        if head in ("finite-vector", "fv"):
            p, n = args
            return finite_vector(int(p), int(n))
    except (ValueError, InvalidConfigError) as exc:
        raise InvalidConfigError(f"group: cannot parse {text!r}: {exc}") from exc
    raise InvalidConfigError(f"group: unknown kind in {text!r}")


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True)
class GroupElement:
    """One group element: normalized coordinates plus its descriptor."""

    group: GroupDescriptor
    coords: Coords

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", self.group.normalize(self.coords))

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return mul(self, other)

    def inverse(self) -> "GroupElement":
        return inv(self)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def element(group: GroupDescriptor, coords: Sequence[int]) -> GroupElement:
    return GroupElement(group, tuple(coords))


def identity(group: GroupDescriptor) -> GroupElement:
    return GroupElement(group, group.identity_coords())


def _check_same_group(a: GroupElement, b: GroupElement) -> None:
    if a.group != b.group:
        raise GroupMismatchError(f"elements of {a.group} and {b.group} cannot be combined")


def mul(a: GroupElement, b: GroupElement) -> GroupElement:
    _check_same_group(a, b)
    return GroupElement(a.group, a.group.mul_coords(a.coords, b.coords))


def inv(a: GroupElement) -> GroupElement:
    return GroupElement(a.group, a.group.inv_coords(a.coords))


def square(a: GroupElement) -> GroupElement:
    return GroupElement(a.group, a.group.square_coords(a.coords))


def conjugate(t: GroupElement, a: GroupElement) -> GroupElement:
    """t * a * t^-1."""
    _check_same_group(t, a)
    g = t.group
    return GroupElement(g, g.mul_coords(g.mul_coords(t.coords, a.coords), g.inv_coords(t.coords)))


# ---------------------------------------------------------------------------
# enumeration


def enumerate_coords(group: GroupDescriptor, limit: Optional[int] = None) -> Iterator[Coords]:
    """Deterministic exhaustion of the coordinate group.

    Infinite kinds are walked shell by shell in the sup norm, lexicographic
    within a shell; finite_vector is walked lexicographically. ``limit``
    caps the number of yielded tuples.
    """
    count = 0
    if group.kind == KIND_FINITE_VECTOR:
        for coords in itertools.product(range(group.modulus), repeat=group.dim):
            if limit is not None and count >= limit:
                return
            yield coords
            count += 1
        return
    radius = 0
    while limit is None or count < limit:
        for coords in itertools.product(range(-radius, radius + 1), repeat=group.dim):
            if radius and max(abs(c) for c in coords) != radius:
                continue
            if limit is not None and count >= limit:
                return
            yield coords
            count += 1
        radius += 1


# ---------------------------------------------------------------------------
# squaring diagnostics


@dataclass(frozen=True)
class InjectivityReport:
    """Outcome of hashing every square over a finite window."""

    group: GroupDescriptor
    elements_checked: int
    collisions: tuple[tuple[Coords, Coords, Coords], ...]  # (a, b, shared square)

    @property
    def injective(self) -> bool:
        return not self.collisions


def verify_square_injectivity(group: GroupDescriptor, window: Iterable[Coords]) -> InjectivityReport:
    """Hash x*x over the window and report every collision pair.

    Torsion-free kinds must come back clean; finite_vector with p = 2
    collides everywhere (squaring is the zero map there).
    """
    seen: dict[Coords, Coords] = {}
    collisions: list[tuple[Coords, Coords, Coords]] = []
    checked = 0
    square_of = group.square_coords
    for coords in window:
        checked += 1
        sq = square_of(coords)
        first = seen.get(sq)
        if first is None:
            seen[sq] = coords
        elif first != coords:
            collisions.append((first, coords, sq))
    return InjectivityReport(group, checked, tuple(collisions))


@dataclass(frozen=True)
class DoublingIndex:
    """Index of the doubled subgroup {x*x} in an abelian group, with coset reps."""

    group: GroupDescriptor
    index: int
    representatives: tuple[Coords, ...]  # identity first


def doubling_subgroup_index(group: GroupDescriptor) -> DoublingIndex:
    """Index of 2G in G for the abelian kinds, plus coset representatives.

    Lattice: index 2^d with {0,1}-vectors as representatives. finite_vector:
    index 1 when p is odd (2 is invertible), p^n when p = 2 (2G is trivial).
    Non-abelian kinds are rejected.
    """
    if not group.is_abelian:
        raise InvalidConfigError(f"group: {group} is not abelian; 2G is not a subgroup there")
    if group.kind == KIND_LATTICE:
        reps = tuple(itertools.product((0, 1), repeat=group.dim))
        return DoublingIndex(group, 2**group.dim, reps)
    if group.kind == KIND_FINITE_VECTOR:
        p = group.modulus
        if p % 2 == 1:
            return DoublingIndex(group, 1, (group.identity_coords(),))
        reps = tuple(itertools.product(range(p), repeat=group.dim))
        return DoublingIndex(group, p**group.dim, reps)
    # abelian unitriangular (n = 2) is Z in disguise
    reps = tuple(itertools.product((0, 1), repeat=group.dim))
    return DoublingIndex(group, 2**group.dim, reps)
