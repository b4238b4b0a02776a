"""Small exact linear-algebra kernels over the integers and rationals."""

from __future__ import annotations

from fractions import Fraction


def rank(rows) -> int:
    """Rank of a rational matrix by Gaussian elimination over ``Fraction``."""
    mat = [[Fraction(x) for x in row] for row in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        pv = mat[r][c]
        for i in range(r + 1, len(mat)):
            if mat[i][c] != 0:
                f = mat[i][c] / pv
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    return r


def affine_rank(points) -> int:
    """Dimension of the affine hull of a nonempty point set."""
    points = [list(p) for p in points]
    if not points:
        raise ValueError("affine rank of an empty set is undefined")
    base = points[0]
    return rank([[a - b for a, b in zip(p, base)] for p in points[1:]])


def charpoly(matrix) -> list[int]:
    """Characteristic polynomial ``det(xI - A)`` by Berkowitz's algorithm.

    Division free, so integer input stays in the integers.  Returns the
    coefficients highest degree first, leading ``1`` included.
    """
    a = [list(row) for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    if n == 0:
        return [1]
    # coefficients of the char poly of the leading k x k block, highest first
    poly = [1, -a[0][0]]
    for k in range(1, n):
        r = a[k][:k]          # row k, first k columns
        c = [a[i][k] for i in range(k)]
        sub = [row[:k] for row in a[:k]]
        # Toeplitz column: 1, -a_kk, -r c, -r S c, -r S^2 c, ...
        col = [1, -a[k][k]]
        v = c
        for _ in range(k):
            col.append(-sum(x * y for x, y in zip(r, v)))
            v = [sum(sub[i][j] * v[j] for j in range(k)) for i in range(k)]
        new = []
        for i in range(k + 2):
            new.append(sum(col[i - j] * poly[j] for j in range(min(i, k) + 1) if i - j < len(col)))
        poly = new
    return poly
