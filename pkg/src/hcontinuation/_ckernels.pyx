# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of `_kernels_py`: same functions, same results."""

from array import array
from math import factorial

from ._kernels_py import combination_tables

BACKEND = "cython"

# n! * max|entry|**n bounds every partial sum of the Laplace recursion.
cdef object _I64_BOUND = 2 ** 62

cdef dict _flat_cache = {}


cdef tuple _flat_tables(Py_ssize_t n):
    """combination_tables flattened into int64 arrays, per order k."""
    cached = _flat_cache.get(n)
    if cached is not None:
        return cached
    combos, tables = combination_tables(n)
    flat = [None, None]
    for k in range(2, n + 1):
        last_row, drop_last, drop_col = tables[k]
        members = array("q", [j for c in combos[k] for j in c])
        dcol = array("q", [x for row in drop_col for x in row])
        flat.append((array("q", last_row), array("q", drop_last), dcol, members,
                     len(combos[k]), len(combos[k - 1])))
    out = tuple(flat)
    _flat_cache[n] = out
    return out


def fits_int64(N):
    n = len(N)
    m = max((abs(x) for row in N for x in row), default=0)
    return factorial(n) * m ** n < _I64_BOUND


def all_minors(list N):
    cdef Py_ssize_t n = len(N)
    if n == 0:
        return []
    if fits_int64(N):
        return _all_minors_i64(N, n)
    return _all_minors_obj(N, n)


cdef list _all_minors_i64(list N, Py_ssize_t n):
    cdef tuple flat = _flat_tables(n)
    cdef long long[:] mat = array("q", [x for row in N for x in row])
    cdef long long[:] prev = array("q", mat)
    cdef long long[:] cur
    cdef long long[:] last_row, drop_last, dcol, members
    cdef Py_ssize_t k, a, b, t, m, mp, base, roff, boff
    cdef long long acc, x, sign0, sign
    levels = [list(mat)]
    for k in range(2, n + 1):
        last_row, drop_last, dcol, members, m, mp = flat[k]
        out = array("q", bytes(8 * m * m))
        cur = out
        sign0 = 1 if (k - 1) % 2 == 0 else -1
        for a in range(m):
            roff = last_row[a] * n
            base = drop_last[a] * mp
            for b in range(m):
                boff = b * k
                acc = 0
                sign = sign0
                for t in range(k):
                    x = mat[roff + members[boff + t]]
                    if x != 0:
                        acc += sign * x * prev[base + dcol[boff + t]]
                    sign = -sign
                cur[a * m + b] = acc
        levels.append(out.tolist())
        prev = cur
    return levels


cdef list _all_minors_obj(list N, Py_ssize_t n):
    cdef tuple flat = _flat_tables(n)
    cdef list mat = [x for row in N for x in row]
    cdef list prev = list(mat)
    cdef list out
    cdef long long[:] last_row, drop_last, dcol, members
    cdef Py_ssize_t k, a, b, t, m, mp, base, roff, boff
    cdef int sign0, sign
    levels = [list(mat)]
    for k in range(2, n + 1):
        last_row, drop_last, dcol, members, m, mp = flat[k]
        out = [None] * (m * m)
        sign0 = 1 if (k - 1) % 2 == 0 else -1
        for a in range(m):
            roff = last_row[a] * n
            base = drop_last[a] * mp
            for b in range(m):
                boff = b * k
                acc = 0
                sign = sign0
                for t in range(k):
                    x = mat[roff + members[boff + t]]
                    if x:
                        if sign > 0:
                            acc += x * prev[base + dcol[boff + t]]
                        else:
                            acc -= x * prev[base + dcol[boff + t]]
                    sign = -sign
                out[a * m + b] = acc
        levels.append(out)
        prev = out
    return levels


def bareiss_det(N):
    """Fraction-free determinant of an integer matrix."""
    cdef Py_ssize_t n = len(N), k, i, j
    cdef int sign = 1
    if n == 0:
        return 1
    cdef list A = [list(r) for r in N]
    cdef list rk, ri
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        rk = A[k]
        akk = rk[k]
        for i in range(k + 1, n):
            ri = A[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (akk * ri[j] - aik * rk[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]
