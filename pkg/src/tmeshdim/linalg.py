"""Exact linear algebra over the rationals.

Ranks come from a sparse fraction-free elimination on integer rows.  Rows
are fed one at a time and reduced on their leading column only, which
keeps fill low on the banded systems produced by meshes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence


Rational = Fraction
SparseRow = dict[int, int]


@dataclass(frozen=True)
class RankResult:
    rank: int
    nullity: int
    pivots: tuple[int, ...]


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to ``Fraction``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {value!r} as an exact rational (floats are rejected)")


def integer_row(row: Mapping[int, Fraction] | Sequence[Fraction]) -> SparseRow:
    """Scale a rational row to a primitive integer row (sparse)."""
    items = row.items() if isinstance(row, Mapping) else enumerate(row)
    entries = {j: Fraction(v) for j, v in items if v}
    if not entries:
        return {}
    den = lcm(*(v.denominator for v in entries.values()))
    out = {j: v.numerator * (den // v.denominator) for j, v in entries.items()}
    g = 0
    for v in out.values():
        g = gcd(g, v)
    if g > 1:
        out = {j: v // g for j, v in out.items()}
    return out


def _reduce_into(pivots: dict[int, SparseRow], row: SparseRow) -> int | None:
    # Eliminate leading entries against existing pivot rows; returns the new
    # pivot column or None when the row reduces to zero.
    while row:
        c = min(row)
        p = pivots.get(c)
        if p is None:
            pivots[c] = row
            return c
        a, b = row[c], p[c]
        g = gcd(a, b)
        fa, fb = b // g, a // g
        new = {j: v * fa for j, v in row.items()}
        for j, v in p.items():
            w = new.get(j, 0) - fb * v
            if w:
                new[j] = w
            else:
                new.pop(j, None)
        g = 0
        for v in new.values():
            g = gcd(g, v)
            if g == 1:
                break
        if g > 1:
            new = {j: v // g for j, v in new.items()}
        row = new
    return None


def sparse_rank(rows: Iterable[SparseRow], ncols: int) -> RankResult:
    """Rank of integer sparse rows by incremental fraction-free elimination.

    The set of pivot columns is that of the reduced row echelon form, so it
    does not depend on the order in which rows arrive.
    """
    pivots: dict[int, SparseRow] = {}
    for row in rows:
        if row:
            _reduce_into(pivots, dict(row))
    rank = len(pivots)
    return RankResult(rank, ncols - rank, tuple(sorted(pivots)))


def exact_rank(matrix: Sequence[Sequence]) -> RankResult:
    """Exact rank of a dense matrix of rationals."""
    ncols = len(matrix[0]) if len(matrix) else 0
    rows = [integer_row([as_rational(v) for v in r]) for r in matrix]
    return sparse_rank(rows, ncols)


def rref(matrix: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q, with its pivot columns."""
    a = [[as_rational(v) for v in row] for row in matrix]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        k = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if k is None:
            continue
        a[r], a[k] = a[k], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def nullspace(matrix: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right null space, one vector per free column."""
    if ncols is None:
        ncols = len(matrix[0])
    if not matrix:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for i, p in enumerate(pivots):
            vec[p] = -red[i][f]
        basis.append(vec)
    return basis
