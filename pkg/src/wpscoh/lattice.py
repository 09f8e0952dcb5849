"""Integer lattices: Hermite normal form, intersection, membership, Smith form.

Rows of a matrix are lattice generators.  The Hermite normal form used here
is the row-echelon one: positive pivots, zeros below each pivot, and
entries above a pivot reduced into [0, pivot).  Equal lattices therefore
have identical HNF matrices.
"""
from __future__ import annotations

from typing import Sequence

Matrix = list  # list[list[int]]


def hnf(rows: Sequence[Sequence[int]]) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Zero rows are dropped, so the result is a basis.
    """
    A = [[int(x) for x in r] for r in rows if any(r)]
    if not A:
        return []
    ncols = len(A[0])
    out: Matrix = []
    col = 0
    while A and col < ncols:
        nz = [r for r in A if r[col] != 0]
        if not nz:
            col += 1
            continue
        rest = [r for r in A if r[col] == 0]
        # Euclid on column `col` across the rows with a non-zero entry there
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            nxt = [piv]
            for r in nz[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            nz = nxt
        piv = nz[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        out.append(piv)
        A = rest
        col += 1
    # reduce entries above pivots
    for i, row in enumerate(out):
        c = next(j for j, a in enumerate(row) if a)
        p = row[c]
        for k in range(i):
            q = out[k][c] // p
            if q:
                out[k] = [a - q * b for a, b in zip(out[k], row)]
    return out


def pivots(basis: Matrix) -> list[int]:
    return [next(j for j, a in enumerate(r) if a) for r in basis]


def rank(rows: Sequence[Sequence[int]]) -> int:
    return len(hnf(rows))


def contains(basis: Matrix, vec: Sequence[int]) -> bool:
    return coordinates(basis, vec) is not None


def coordinates(basis: Matrix, vec: Sequence[int]) -> list[int] | None:
    """Integer coefficients expressing vec in an HNF basis, or None."""
    v = [int(x) for x in vec]
    coeffs = []
    for row in basis:
        c = next(j for j, a in enumerate(row) if a)
        q, r = divmod(v[c], row[c])
        if r:
            return None
        coeffs.append(q)
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    if any(v):
        return None
    return coeffs


def intersect(a: Matrix, b: Matrix) -> Matrix:
    """HNF basis of the intersection of two lattices in the same Z^d.

    Zassenhaus: in the HNF of [[A, A], [B, 0]] the rows whose left half
    vanishes have right halves spanning the intersection.
    """
    if not a or not b:
        return []
    d = len(a[0])
    if len(b[0]) != d:
        raise ValueError("lattices live in different ambient dimensions")
    big = [list(r) + list(r) for r in a] + [list(r) + [0] * d for r in b]
    H = hnf(big)
    return hnf([r[d:] for r in H if not any(r[:d])])


def intersect_all(lattices: Sequence[Matrix]) -> Matrix:
    out = hnf(lattices[0])
    for other in lattices[1:]:
        out = intersect(out, other)
    return out


def determinant(square: Matrix) -> int:
    """Exact determinant by fraction-free Gaussian elimination (Bareiss)."""
    M = [list(r) for r in square]
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def index(basis: Matrix) -> int:
    """Index of a full-rank lattice in the coordinate lattice of its span.

    For an HNF basis whose pivots occupy the trailing coordinates this is the
    product of the pivots.
    """
    out = 1
    for row, c in zip(basis, pivots(basis)):
        out *= row[c]
    return out


def invariant_factors(rows: Sequence[Sequence[int]], ncols: int | None = None) -> list[int]:
    """Non-zero invariant factors of an integer matrix (Smith normal form)."""
    from sympy import ZZ
    from sympy.polys.matrices import DomainMatrix
    from sympy.polys.matrices.normalforms import invariant_factors as _inv

    rows = [list(r) for r in rows]
    if not rows or (ncols is not None and ncols == 0):
        return []
    dm = DomainMatrix([[ZZ(int(x)) for x in r] for r in rows], (len(rows), len(rows[0])), ZZ)
    return [int(f) for f in _inv(dm) if f != 0]


def cokernel(rows: Sequence[Sequence[int]], ncols: int) -> tuple[int, list[int]]:
    """Free rank and torsion orders of Z^ncols / (row span)."""
    if ncols == 0:
        return 0, []
    rows = [r for r in rows if any(r)]
    facs = invariant_factors(rows) if rows else []
    return ncols - len(facs), [f for f in facs if abs(f) != 1]
