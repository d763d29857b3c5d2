"""Exact integer and rational matrix helpers.

Everything here is deliberately dependency-free: determinants are computed by
fraction-free Bareiss elimination, Smith normal form by the classical
pivot-and-reduce algorithm with unimodular row/column transforms recorded, and
signatures by symmetric congruence diagonalization over the rationals.
Matrices are plain lists of lists of Python ints (arbitrary precision).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import Degenerate

IntMatrix = list[list[int]]


def copy_matrix(mat: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(row) for row in mat]


def identity_matrix(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(mat: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(col) for col in zip(*mat)] if mat else []


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        arow = a[i]
        orow = out[i]
        for k in range(inner):
            aik = arow[k]
            if aik:
                brow = b[k]
                for j in range(cols):
                    orow[j] += aik * brow[j]
    return out


def mat_vec(a: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


def det(mat: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free Bareiss elimination (exact)."""
    n = len(mat)
    if n == 0:
        return 1
    a = copy_matrix(mat)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(
    mat: Sequence[Sequence[int]],
) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return unimodular (left, diag, right) with left @ mat @ right = diag.

    The diagonal entries are nonnegative and form a divisibility chain
    d_1 | d_2 | ... (zeros, if any, come last).
    """
    a = copy_matrix(mat)
    rows = len(a)
    cols = len(a[0]) if a else 0
    left = identity_matrix(rows)
    right = identity_matrix(cols)

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(dst: int, src: int, q: int) -> None:
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x + q * y for x, y in zip(left[dst], left[src])]

    def add_col(dst: int, src: int, q: int) -> None:
        for row in a:
            row[dst] += q * row[src]
        for row in right:
            row[dst] += q * row[src]

    def negate_row(i: int) -> None:
        a[i] = [-x for x in a[i]]
        left[i] = [-x for x in left[i]]

    for k in range(min(rows, cols)):
        while True:
            pivot = None
            for i in range(k, rows):
                for j in range(k, cols):
                    if a[i][j] != 0 and (
                        pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])
                    ):
                        pivot = (i, j)
            if pivot is None:
                break
            if pivot != (k, k):
                if pivot[0] != k:
                    swap_rows(k, pivot[0])
                if pivot[1] != k:
                    swap_cols(k, pivot[1])
            p = a[k][k]
            dirty = False
            for i in range(k + 1, rows):
                if a[i][k] != 0:
                    add_row(i, k, -(a[i][k] // p))
                    if a[i][k] != 0:
                        dirty = True
            for j in range(k + 1, cols):
                if a[k][j] != 0:
                    add_col(j, k, -(a[k][j] // p))
                    if a[k][j] != 0:
                        dirty = True
            if dirty:
                continue  # a strictly smaller pivot appeared; re-pick
            bad_row = None
            for i in range(k + 1, rows):
                if any(a[i][j] % p != 0 for j in range(k + 1, cols)):
                    bad_row = i
                    break
            if bad_row is None:
                break
            add_row(k, bad_row, 1)  # drag the offender into row k, then reduce
        if a[k][k] < 0:
            negate_row(k)
    return left, a, right


def invariant_factors(mat: Sequence[Sequence[int]]) -> list[int]:
    _, d, _ = smith_normal_form(mat)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def kernel_basis(mat: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis of the integer kernel {v : mat @ v = 0}, as a list of vectors.

    Columns of the right SNF transform beyond the rank span the kernel
    saturatedly (they extend to a basis of Z^cols).
    """
    rows = len(mat)
    cols = len(mat[0]) if mat else 0
    _, d, right = smith_normal_form(mat)
    rank = sum(1 for i in range(min(rows, cols)) if d[i][i] != 0)
    return [[right[i][j] for i in range(cols)] for j in range(rank, cols)]


def invert_rational(mat: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Exact inverse of a nonsingular integer matrix, via Gauss-Jordan."""
    n = len(mat)
    a = [[Fraction(x) for x in row] for row in mat]
    inv = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise Degenerate("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        scale = a[col][col]
        a[col] = [x / scale for x in a[col]]
        inv[col] = [x / scale for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - factor * y for x, y in zip(inv[r], inv[col])]
    return inv


def signature_symmetric(mat: Sequence[Sequence[int]]) -> tuple[int, int]:
    """(n_plus, n_minus) of a nonsingular symmetric integer matrix.

    Exact congruence diagonalization over Q: when every remaining diagonal
    entry vanishes, a row/column addition manufactures a nonzero one
    (possible whenever the block is nonsingular).
    """
    n = len(mat)
    a = [[Fraction(x) for x in row] for row in mat]
    plus = minus = 0
    for k in range(n):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][i] != 0), None)
            if swap is not None:
                a[k], a[swap] = a[swap], a[k]
                for row in a:
                    row[k], row[swap] = row[swap], row[k]
            else:
                j = next(
                    (j for j in range(k + 1, n) if a[k][j] != 0),
                    None,
                )
                if j is None:
                    raise Degenerate("symmetric matrix is singular")
                # row_k += row_j (and col_k += col_j): new diagonal 2 a_kj
                for t in range(n):
                    a[k][t] += a[j][t]
                for t in range(n):
                    a[t][k] += a[t][j]
        pivot = a[k][k]
        if pivot > 0:
            plus += 1
        else:
            minus += 1
        for i in range(k + 1, n):
            factor = a[i][k] / pivot
            if factor != 0:
                for j in range(k, n):
                    a[i][j] -= factor * a[k][j]
                for j in range(k, n):
                    a[j][i] -= factor * a[j][k]
    return plus, minus
