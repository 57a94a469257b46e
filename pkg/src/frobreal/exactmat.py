"""Dense exact linear algebra over a FieldSpec (Gaussian elimination, no floats)."""

from __future__ import annotations

from .scalars import FieldSpec


def identity_matrix(field: FieldSpec, n: int) -> list:
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def mat_mul(field: FieldSpec, a: list, b: list) -> list:
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = [[field.zero] * m for _ in range(n)]
    for i in range(n):
        row = a[i]
        orow = out[i]
        for t in range(k):
            c = row[t]
            if field.is_zero(c):
                continue
            brow = b[t]
            for j in range(m):
                orow[j] = field.add(orow[j], field.mul(c, brow[j]))
    return out

def row_reduce(field: FieldSpec, mat: list) -> tuple:
    """Reduced row echelon form.  Returns (rref, pivot column list).

    The input is copied; rows and columns hold field scalars.
    """
    rows = [list(r) for r in mat]
    n = len(rows)
    m = len(rows[0]) if n else 0
    pivots = []
    r = 0
    for c in range(m):
        pivot = None
        for i in range(r, n):
            if not field.is_zero(rows[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, x) for x in rows[r]]
        for i in range(n):
            if i != r and not field.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return rows, pivots


def rank(field: FieldSpec, mat: list) -> int:
    if not mat:
        return 0
    return len(row_reduce(field, mat)[1])


def null_space(field: FieldSpec, mat: list, ncols: int) -> list:
    """A basis of {v : mat @ v = 0}, each vector a list of length ncols.

    Free variables are set to one in increasing column order, so the output
    is deterministic for a deterministic input.
    """
    if not mat:
        return [
            [field.one if i == j else field.zero for i in range(ncols)]
            for j in range(ncols)
        ]
    rref, pivots = row_reduce(field, mat)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        v = [field.zero] * ncols
        v[fc] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(rref[r][fc])
        basis.append(v)
    return basis


def solve(field: FieldSpec, mat: list, rhs: list):
    """One solution of mat @ x = rhs, or None if inconsistent."""
    n = len(mat)
    m = len(mat[0]) if n else 0
    aug = [list(mat[i]) + [rhs[i]] for i in range(n)]
    rref, pivots = row_reduce(field, aug)
    if m in pivots:
        return None
    x = [field.zero] * m
    for r, pc in enumerate(pivots):
        x[pc] = rref[r][m]
    return x


def invert(field: FieldSpec, mat: list):
    """Inverse of a square matrix, or None if singular."""
    n = len(mat)
    aug = [list(mat[i]) + identity_matrix(field, n)[i] for i in range(n)]
    rref, pivots = row_reduce(field, aug)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in rref]


def is_invertible(field: FieldSpec, mat: list) -> bool:
    n = len(mat)
    if n == 0:
        return True
    if any(len(row) != n for row in mat):
        return False
    return rank(field, mat) == n
