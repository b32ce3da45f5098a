"""Extreme rays of pointed polyhedral cones by the double description method.

A cone is given as ``{x : row . x >= 0 for every row}``.  All arithmetic is
on Python integers: rows are scaled to primitive integer vectors and rays
are kept primitive, so nothing is ever rounded.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce


class NotPointedError(ValueError):
    """The cone contains a line; ``witness`` spans part of its lineality space."""

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


def primitive(v) -> tuple:
    """Scale a rational vector to the primitive integer vector with the same direction."""
    fr = [Fraction(x) for x in v]
    den = reduce(lambda a, b: a * b // math.gcd(a, b), (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = reduce(math.gcd, (abs(x) for x in ints), 0)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def _echelon(vectors, dim):
    """Fraction-free row reduction; returns (rank, pivot rows, pivot columns)."""
    rows = [list(v) for v in vectors]
    pivots, cols = [], []
    for col in range(dim):
        piv = next((r for r in rows if r[col] != 0), None)
        if piv is None:
            continue
        rows.remove(piv)
        rows = [[piv[col] * x - r[col] * y for x, y in zip(r, piv)] for r in rows]
        rows = [r for r in rows if any(r)]
        pivots.append(piv)
        cols.append(col)
    return len(pivots), pivots, cols


def rank(vectors, dim: int | None = None) -> int:
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return 0
    return _echelon(vectors, dim or len(vectors[0]))[0]


def nullspace_vector(vectors, dim: int):
    """A nonzero integer vector orthogonal to all ``vectors`` (None if full rank)."""
    r, pivots, cols = _echelon([tuple(v) for v in vectors], dim)
    if r == dim:
        return None
    free = next(c for c in range(dim) if c not in cols)
    # back substitution over the rationals
    x = [Fraction(0)] * dim
    x[free] = Fraction(1)
    for piv, col in reversed(list(zip(pivots, cols))):
        rest = sum(Fraction(piv[j]) * x[j] for j in range(dim) if j != col)
        x[col] = -rest / piv[col]
    return primitive(x)


def _invert_columns(basis, dim):
    """Columns of the inverse of a square integer matrix, each as a primitive ray."""
    n = dim
    m = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(basis)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [v / p for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    inv = [row[n:] for row in m]
    return [primitive([inv[i][j] for i in range(n)]) for j in range(n)]


def extreme_rays(rows, dim: int | None = None) -> tuple:
    """Extreme rays of ``{x : row . x >= 0}``, sorted, as primitive integer tuples.

    Rows are inserted in lexicographic order after an initial basis made of
    the first ``dim`` linearly independent rows (in that same order).
    Raises :class:`NotPointedError` when the cone contains a line.
    """
    rows = sorted({primitive(r) for r in rows if any(r)})
    if dim is None:
        if not rows:
            raise ValueError("dimension required for an empty constraint list")
        dim = len(rows[0])
    if any(len(r) != dim for r in rows):
        raise ValueError("constraint rows have inconsistent length")
    basis, rest = [], []
    for r in rows:
        if len(basis) < dim and rank(basis + [r], dim) > len(basis):
            basis.append(r)
        else:
            rest.append(r)
    if len(basis) < dim:
        raise NotPointedError("cone is not pointed", nullspace_vector(rows, dim))

    order = basis + rest
    rays = _invert_columns(basis, dim)
    # zero set bit k <-> order[k] tight
    zeros = [sum(1 << k for k in range(dim) if k != j) for j in range(dim)]
    for k in range(dim, len(order)):
        a = order[k]
        vals = [_dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        new_rays, new_zeros = [], []
        for i in pos:
            new_rays.append(rays[i])
            new_zeros.append(zeros[i])
        for i in zer:
            new_rays.append(rays[i])
            new_zeros.append(zeros[i] | (1 << k))
        if neg and pos:
            need = dim - 2
            for i in pos:
                for j in neg:
                    common = zeros[i] & zeros[j]
                    if common.bit_count() < need:
                        continue
                    if any(
                        t != i and t != j and zeros[t] & common == common for t in range(len(rays))
                    ):
                        continue
                    vi, vj = vals[i], vals[j]
                    ray = primitive([vi * y - vj * x for x, y in zip(rays[i], rays[j])])
                    new_rays.append(ray)
                    new_zeros.append(common | (1 << k))
        rays, zeros = new_rays, new_zeros
    return tuple(sorted(set(rays)))


def tight_rank(ray, rows) -> int:
    """Rank of the constraints tight at ``ray``."""
    tight = [r for r in rows if _dot(r, ray) == 0]
    return rank(tight, len(ray)) if tight else 0


def is_extreme(ray, rows) -> bool:
    """``ray`` is feasible and its tight constraints have rank ``dim - 1``."""
    if not any(ray) or any(_dot(r, ray) < 0 for r in rows):
        return False
    return tight_rank(ray, [primitive(r) for r in rows if any(r)]) == len(ray) - 1
