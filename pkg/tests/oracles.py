"""Independent reference implementations used only by the tests.

Everything here recomputes a library quantity by a different route:
matrices instead of coordinate formulas, materialized unions instead of
arithmetic membership, exhaustive loops instead of pruned searches. The
tests compare library output against these, so none of this may import
library internals beyond plain data.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


# -- 3x3 unitriangular matrices as the reference for the heisenberg law ----


def h3_matrix(coords):
    x, y, z = coords
    return ((1, x, z), (0, 1, y), (0, 0, 1))


def h3_from_matrix(mat):
    return (mat[0][1], mat[1][2], mat[0][2])


def mat_mul3(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)) for i in range(3)
    )


def h3_mul_via_matrices(a, b):
    return h3_from_matrix(mat_mul3(h3_matrix(a), h3_matrix(b)))


def h3_inv_via_matrices(a):
    # inverse of [[1,x,z],[0,1,y],[0,0,1]] is [[1,-x,xy-z],[0,1,-y],[0,0,1]]
    x, y, z = a
    return (-x, -y, x * y - z)


# -- materialized scale-union membership -----------------------------------


def scale_block_elements(q, primed):
    """All elements of the block at scale q, by direct triple loop."""
    step = 2 if primed else 1
    out = set()
    for off in range(1, q + 1, step):
        for x2 in range(1, q + 1, step):
            for x3 in range(1, q * q + 1, step):
                out.add((2**q + off, x2, x3))
    return out


def scale_union_elements(scales, primed):
    out = set()
    for q in scales:
        out |= scale_block_elements(q, primed)
    return out


# -- exhaustive witness search ---------------------------------------------


def index_pairs(n, order):
    if order == "increasing":
        return [(i, j) for i in range(n) for j in range(i + 1, n)]
    if order == "decreasing":
        return [(i, j) for i in range(n) for j in range(n) if i > j]
    return [(i, j) for i in range(n) for j in range(n) if i != j]


def witness_exists_brute(mul, member, candidates, k, shifts, side, order, members_must_belong=True):
    """Try every k-subset of candidates against every shift."""
    pool = [c for c in candidates if not members_must_belong or member(c)]
    pool.sort()
    pairs = index_pairs(k, order)
    for subset in itertools.combinations(pool, k):
        for t in shifts:
            ok = True
            for i, j in pairs:
                prod = mul(subset[i], subset[j])
                shifted = mul(t, prod) if side == "left" else mul(prod, t)
                if not member(shifted):
                    ok = False
                    break
            if ok:
                return True
    return False


# -- set-based defect and density ------------------------------------------


def defect_brute(mul, elements, g, side):
    """|gF xor F| / |F| over materialized sets."""
    fset = set(elements)
    if side == "left":
        shifted = {mul(g, x) for x in fset}
    else:
        shifted = {mul(x, g) for x in fset}
    return Fraction(len(shifted ^ fset), len(fset))


def density_brute(member, elements):
    elements = list(elements)
    hits = sum(1 for x in elements if member(x))
    return Fraction(hits, len(elements))
