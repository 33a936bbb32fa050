"""Small dense linear algebra over exact rationals (or floats).

Matrices are lists of row lists.  Nothing here pivots for numerical
stability: the routines are meant for `Fraction` entries, where any
nonzero pivot is as good as any other.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import InvalidArgument, WrongBackend

Matrix = list  # list[list[Scalar]]


def is_exact_value(x) -> bool:
    return isinstance(x, (Fraction, int)) and not isinstance(x, bool)


def is_exact(M: Sequence[Sequence]) -> bool:
    return all(is_exact_value(x) for row in M for x in row)


def require_exact(M: Sequence[Sequence], what: str = "matrix") -> None:
    if not is_exact(M):
        raise WrongBackend(f"{what} must use the exact backend (Fraction entries)")


def require_square(M: Sequence[Sequence]) -> int:
    n = len(M)
    if any(len(row) != n for row in M):
        raise InvalidArgument("matrix must be square")
    return n


def to_fraction_matrix(M) -> Matrix:
    return [[Fraction(x) for x in row] for row in M]


def identity(n: int, one=Fraction(1)) -> Matrix:
    zero = one - one
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zeros(n: int, m: int, zero=Fraction(0)) -> Matrix:
    return [[zero] * m for _ in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    if len(A[0]) != len(B):
        raise InvalidArgument("inner dimensions differ")
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Matrix, x: Sequence) -> list:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def transpose(A: Matrix) -> Matrix:
    return [list(col) for col in zip(*A)]


def submatrix(A: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    return [[A[i][j] for j in cols] for i in rows]


def trace(A: Matrix):
    return sum(A[i][i] for i in range(len(A)))


def integer_row_scaled(M: Matrix) -> tuple[list[list[int]], list[int]]:
    """Return (N, d) with N[i] = d[i] * M[i] integral and d[i] > 0 minimal."""
    N, scales = [], []
    for row in M:
        d = lcm(*(Fraction(x).denominator for x in row)) if row else 1
        N.append([int(Fraction(x) * d) for x in row])
        scales.append(d)
    return N, scales


def det_bareiss(M: Matrix):
    """Determinant by fraction-free (Bareiss) elimination.

    Exact for integer and Fraction input; entries are first scaled to
    integers row by row so every intermediate division is an exact integer
    division.
    """
    n = require_square(M)
    if n == 0:
        return Fraction(1)
    require_exact(M)
    A, scales = integer_row_scaled(M)
    denom = 1
    for d in scales:
        denom *= d
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        akk = A[k][k]
        rowk = A[k]
        for i in range(k + 1, n):
            rowi = A[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (akk * rowi[j] - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = akk
    return Fraction(sign * A[n - 1][n - 1], denom)


def solve(A: Matrix, B: Matrix) -> Matrix:
    """Solve A X = B by Gauss-Jordan elimination; B is a list of rows.

    Raises ZeroDivisionError when A is singular; callers translate that
    into their own error type.
    """
    n = require_square(A)
    if len(B) != n:
        raise InvalidArgument("right-hand side has the wrong number of rows")
    m = len(B[0]) if n else 0
    aug = [list(A[i]) + list(B[i]) for i in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        if piv != c:
            aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        rowc = [x / p for x in aug[c]]
        aug[c] = rowc
        for r in range(n):
            if r != c:
                f = aug[r][c]
                if f != 0:
                    rowr = aug[r]
                    aug[r] = [x - f * y for x, y in zip(rowr, rowc)]
    return [row[n:n + m] for row in aug]


def rank(A: Matrix) -> int:
    rows = [list(r) for r in A]
    if not rows:
        return 0
    ncols = len(rows[0])
    rk = 0
    for c in range(ncols):
        piv = next((r for r in range(rk, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        p = rows[rk][c]
        for r in range(rk + 1, len(rows)):
            f = rows[r][c] / p
            if f != 0:
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rk])]
        rk += 1
    return rk


def diag_conjugate(M: Matrix, signs: Sequence[int]) -> Matrix:
    """D M D for D = diag(signs)."""
    return [[signs[i] * x * signs[j] for j, x in enumerate(row)] for i, row in enumerate(M)]
