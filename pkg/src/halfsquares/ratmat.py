"""Exact linear algebra over the rationals for small dense systems.

Plain Gaussian elimination on Fraction entries; everything here is exact,
no floating point.  Matrices are lists of row lists.
"""

from __future__ import annotations

from fractions import Fraction


def _to_rows(matrix):
    return [[Fraction(x) for x in row] for row in matrix]


def det(matrix) -> Fraction:
    """Determinant of a square matrix."""
    rows = _to_rows(matrix)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    sign = 1
    out = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            sign = -sign
        p = rows[col][col]
        out *= p
        for r in range(col + 1, n):
            factor = rows[r][col] / p
            if factor:
                for c in range(col, n):
                    rows[r][c] -= factor * rows[col][c]
    return sign * out


def solve(matrix, rhs) -> list[Fraction] | None:
    """Solve a square system exactly; None if the matrix is singular."""
    rows = _to_rows(matrix)
    n = len(rows)
    b = [Fraction(x) for x in rhs]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return None
        rows[col], rows[pivot] = rows[pivot], rows[col]
        b[col], b[pivot] = b[pivot], b[col]
        p = rows[col][col]
        for r in range(n):
            if r == col:
                continue
            factor = rows[r][col] / p
            if factor:
                for c in range(col, n):
                    rows[r][c] -= factor * rows[col][c]
                b[r] -= factor * b[col]
    return [b[i] / rows[i][i] for i in range(n)]


def inverse(matrix) -> list[list[Fraction]] | None:
    """Exact inverse of a square matrix; None if singular."""
    rows = _to_rows(matrix)
    n = len(rows)
    aug = [rows[i] + [Fraction(1) if j == i else Fraction(0) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def solve_rectangular(matrix, rhs) -> list[Fraction] | None:
    """Unique solution of an overdetermined consistent system.

    ``matrix`` has m rows and k <= m columns.  Returns the solution when
    the matrix has full column rank and the system is consistent, else
    None (rank-deficient or inconsistent).
    """
    rows = _to_rows(matrix)
    m = len(rows)
    k = len(rows[0]) if rows else 0
    aug = [rows[i] + [Fraction(rhs[i])] for i in range(m)]
    rank = 0
    pivots = []
    for col in range(k):
        pivot = next((r for r in range(rank, m) if aug[r][col] != 0), None)
        if pivot is None:
            return None  # column rank deficient
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        p = aug[rank][col]
        aug[rank] = [x / p for x in aug[rank]]
        for r in range(m):
            if r != rank and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[rank])]
        pivots.append(col)
        rank += 1
    for r in range(rank, m):
        if aug[r][k] != 0:
            return None  # inconsistent
    return [aug[i][k] for i in range(rank)]


def solve_underdetermined(matrix, rhs):
    """General exact solve of an m x k system, any rank.

    Returns (particular, basis) where ``particular`` has the free
    variables set to zero and ``basis`` spans the nullspace, or None when
    the system is inconsistent.
    """
    rows = _to_rows(matrix)
    m = len(rows)
    k = len(rows[0]) if rows else 0
    aug = [rows[i] + [Fraction(rhs[i])] for i in range(m)]
    rank = 0
    pivot_cols = []
    for col in range(k):
        pivot = next((r for r in range(rank, m) if aug[r][col] != 0), None)
        if pivot is None:
            continue
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        p = aug[rank][col]
        aug[rank] = [x / p for x in aug[rank]]
        for r in range(m):
            if r != rank and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[rank])]
        pivot_cols.append(col)
        rank += 1
    for r in range(rank, m):
        if aug[r][k] != 0:
            return None
    particular = [Fraction(0)] * k
    for r, pc in enumerate(pivot_cols):
        particular[pc] = aug[r][k]
    basis = []
    for fc in (c for c in range(k) if c not in pivot_cols):
        vec = [Fraction(0)] * k
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivot_cols):
            vec[pc] = -aug[r][fc]
        basis.append(vec)
    return particular, basis


def nullspace_vector(matrix) -> list[Fraction] | None:
    """One nonzero kernel vector of an m x k matrix with rank k - 1.

    Returns None when the matrix has full column rank; used for the
    one-parameter families that arise when a point is expressed over one
    more generator than its affine dimension.
    """
    rows = _to_rows(matrix)
    m = len(rows)
    k = len(rows[0]) if rows else 0
    rank = 0
    pivot_cols = []
    for col in range(k):
        pivot = next((r for r in range(rank, m) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank][col]
        rows[rank] = [x / p for x in rows[rank]]
        for r in range(m):
            if r != rank and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[rank])]
        pivot_cols.append(col)
        rank += 1
    free = [c for c in range(k) if c not in pivot_cols]
    if not free:
        return None
    fc = free[0]
    vec = [Fraction(0)] * k
    vec[fc] = Fraction(1)
    for r, pc in enumerate(pivot_cols):
        vec[pc] = -rows[r][fc]
    return vec
