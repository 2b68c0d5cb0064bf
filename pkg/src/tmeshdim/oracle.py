"""Brute-force spline dimension by per-cell polynomial constraints.

Every face carries a full bi-degree ``d`` polynomial in the monomial basis.
Smoothness across a shared wall is imposed derivative by derivative; the
dimension is the nullity of the resulting integer system.  Nothing here
uses vertex cofactors, so it is an independent check on the rest of the
library.
"""
from __future__ import annotations

from bisect import bisect_left
from fractions import Fraction
from math import comb, perm

from .linalg import SparseRow, integer_row, sparse_rank
from .mesh import TMesh


def _face_grid(mesh: TMesh):
    X = sorted({p[0] for p in mesh.vertices})
    Y = sorted({p[1] for p in mesh.vertices})
    nx, ny = len(X) - 1, len(Y) - 1
    owner = [[-1] * nx for _ in range(ny)]
    for f, face in enumerate(mesh.faces):
        for x0, y0, x1, y1 in face:
            for j in range(bisect_left(Y, y0), bisect_left(Y, y1)):
                row = owner[j]
                for i in range(bisect_left(X, x0), bisect_left(X, x1)):
                    row[i] = f
    return X, Y, owner


def _walls(mesh: TMesh, homogeneous: bool):
    """Distinct (orientation, line, face_a, face_b) walls; face_b is None on the boundary."""
    X, Y, owner = _face_grid(mesh)
    nx, ny = len(X) - 1, len(Y) - 1
    seen: dict[tuple, None] = {}
    for j in range(ny):
        for i in range(nx):
            f = owner[j][i]
            if i + 1 < nx and owner[j][i + 1] != f:
                seen[("v", X[i + 1], f, owner[j][i + 1])] = None
            if j + 1 < ny and owner[j + 1][i] != f:
                seen[("h", Y[j + 1], f, owner[j + 1][i])] = None
    if homogeneous:
        for j in range(ny):
            seen[("v", X[0], owner[j][0], None)] = None
            seen[("v", X[-1], owner[j][-1], None)] = None
        for i in range(nx):
            seen[("h", Y[0], owner[0][i], None)] = None
            seen[("h", Y[-1], owner[-1][i], None)] = None
    return list(seen)


def constraint_rows(mesh: TMesh, d: int, r: int, homogeneous: bool = False) -> list[SparseRow]:
    """Integer smoothness rows.

    Face ``f`` carries sum a[i][j] (x - x_f)^i (y - y_f)^j with (x_f, y_f) the
    lower-left corner of its bounding box.  The shift keeps rows short: on
    its own left or lower wall a face contributes a single normal term.
    Along a wall both traces are written in the first face's tangential
    basis before the coefficients are matched.
    """
    n1 = d + 1
    nf = len(mesh.faces)
    rows: list[SparseRow] = []
    if r < 0:
        return rows

    def var(f: int, i: int, t: int, axis: int) -> int:
        # i: normal power, t: tangential power; faces numbered in reverse so
        # that elimination pivots on the face added last
        local = i * n1 + t if axis == 0 else t * n1 + i
        return (nf - 1 - f) * n1 * n1 + (n1 * n1 - 1 - local)

    origin = [(min(q[0] for q in face), min(q[1] for q in face)) for face in mesh.faces]
    for orient, c, fa, fb in _walls(mesh, homogeneous):
        axis = 0 if orient == "v" else 1
        sides = [(fa, 1)] + ([(fb, -1)] if fb is not None else [])
        ref = origin[fa][1 - axis]
        for k in range(min(r, d) + 1):
            for s in range(n1):
                row: dict[int, Fraction] = {}
                for f, sign in sides:
                    h = Fraction(c) - origin[f][axis]
                    delta = ref - origin[f][1 - axis]
                    for i in range(k, d + 1):
                        w = perm(i, k) * h ** (i - k)
                        if not w:
                            continue
                        for t in range(s, d + 1):
                            u = w * comb(t, s) * delta ** (t - s)
                            if u:
                                j = var(f, i, t, axis)
                                row[j] = row.get(j, 0) + sign * u
                row = integer_row(row)
                if row:
                    rows.append(row)
    return rows


def bnet_dim(mesh: TMesh, d: int, r: int | None = None, *, homogeneous: bool = False) -> int:
    """Dimension of C^r piecewise bi-degree d polynomials on the mesh faces.

    ``r`` defaults to ``d - 1``; ``r = -1`` means no continuity at all.
    """
    if r is None:
        r = d - 1
    if d < 0 or r < -1 or r > d:
        raise ValueError(f"need d >= 0 and -1 <= r <= d, got d={d}, r={r}")
    ncols = len(mesh.faces) * (d + 1) ** 2
    rows = constraint_rows(mesh, d, r, homogeneous)
    return ncols - sparse_rank(rows, ncols).rank


def bnet_dim_homogeneous(mesh: TMesh, d: int, r: int | None = None) -> int:
    """As ``bnet_dim`` but the spline must extend by zero outside the domain."""
    return bnet_dim(mesh, d, r, homogeneous=True)
