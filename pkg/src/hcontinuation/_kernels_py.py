"""Pure-Python integer kernels; `_ckernels` is the compiled twin.

`all_minors` returns every minor of an integer matrix, grouped by order.
Level k is a flat list indexed ``a * m + b`` where a and b rank the row
and column index sets among ``itertools.combinations(range(n), k)`` and
m = C(n, k).  Each level is obtained from the previous one by Laplace
expansion along the last selected row.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

BACKEND = "python"


@lru_cache(maxsize=None)
def combination_tables(n: int):
    """Index tables for the Laplace recursion, shared by both kernels.

    For each order k >= 2 returns (last_row, drop_last, drop_col) where
    ``last_row[a]`` is the last element of row set a, ``drop_last[a]`` the
    rank of set a without its last element, and ``drop_col[b][t]`` the rank
    of set b without its t-th element, ranks taken at order k-1.
    """
    combos = [list(combinations(range(n), k)) for k in range(n + 1)]
    rank = [{c: i for i, c in enumerate(level)} for level in combos]
    tables = [None, None]
    for k in range(2, n + 1):
        last_row = tuple(c[-1] for c in combos[k])
        drop_last = tuple(rank[k - 1][c[:-1]] for c in combos[k])
        drop_col = tuple(tuple(rank[k - 1][c[:t] + c[t + 1:]] for t in range(k))
                         for c in combos[k])
        tables.append((last_row, drop_last, drop_col))
    return tuple(tuple(level) for level in combos), tuple(tables)


def all_minors(N: list[list[int]]) -> list[list[int]]:
    n = len(N)
    if n == 0:
        return []
    combos, tables = combination_tables(n)
    levels = [[N[i][j] for i in range(n) for j in range(n)]]
    for k in range(2, n + 1):
        last_row, drop_last, drop_col = tables[k]
        cols = combos[k]
        prev = levels[-1]
        mp = len(combos[k - 1])
        out = []
        for a in range(len(cols)):
            row = N[last_row[a]]
            base = drop_last[a] * mp
            for b, J in enumerate(cols):
                dc = drop_col[b]
                acc = 0
                sign = 1 if (k - 1) % 2 == 0 else -1
                for t in range(k):
                    x = row[J[t]]
                    if x:
                        acc += sign * x * prev[base + dc[t]]
                    sign = -sign
                out.append(acc)
        levels.append(out)
    return levels


def bareiss_det(N: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    n = len(N)
    if n == 0:
        return 1
    A = [list(r) for r in N]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            for j in range(k + 1, n):
                A[i][j] = (akk * A[i][j] - aik * A[k][j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]
