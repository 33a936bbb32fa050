"""Harmonic continuation of vertex values along a strip.

Cauchy data (values on columns 1 and 2) determine a harmonic field on the
whole strip: the harmonicity equation at a vertex of column k has exactly
one unknown, its right neighbor, so columns 3..C are filled in order.
`oracle_march` reaches the same field by solving the assembled linear
system without using the marching order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .errors import IllPosedStep, InternalError, InvalidArgument
from .network import PotentialField, StripNetwork, Vertex


@dataclass(frozen=True)
class CauchyData:
    col1: tuple
    col2: tuple

    def __post_init__(self):
        object.__setattr__(self, "col1", tuple(self.col1))
        object.__setattr__(self, "col2", tuple(self.col2))
        if len(self.col1) != len(self.col2):
            raise InvalidArgument("both Cauchy columns need the same length")

    @property
    def rows(self) -> int:
        return len(self.col1)

    @classmethod
    def from_vector(cls, x: Sequence) -> "CauchyData":
        """Split a 2R vector ordered (column 1 rows 1..R, column 2 rows 1..R)."""
        if len(x) % 2:
            raise InvalidArgument("Cauchy vector must have even length")
        R = len(x) // 2
        return cls(tuple(x[:R]), tuple(x[R:]))

    def as_vector(self) -> list:
        return list(self.col1) + list(self.col2)

    def combine(self, alpha, other: "CauchyData", beta) -> "CauchyData":
        return CauchyData(
            tuple(alpha * a + beta * b for a, b in zip(self.col1, other.col1)),
            tuple(alpha * a + beta * b for a, b in zip(self.col2, other.col2)),
        )


def _check(net: StripNetwork, data: CauchyData) -> None:
    if data.rows != net.rows:
        raise InvalidArgument(f"Cauchy data has {data.rows} rows, network has {net.rows}")


def continue_vertex(net: StripNetwork, u: PotentialField | dict, v: Vertex):
    """Value at v's right neighbor that makes u harmonic at v."""
    values = u.values if isinstance(u, PotentialField) else u
    c, r = v
    if c >= net.cols:
        raise IllPosedStep(f"vertex {v} has no right neighbor")
    target = (c + 1, r)
    unknown = [w for w, _ in net.neighbors(v) if w not in values]
    if v not in values or unknown != [target]:
        raise IllPosedStep(
            f"continuation at {v} needs exactly the right neighbor unknown; unknown: {unknown}")
    uv = values[v]
    flux = 0 * uv
    g_right = None
    for w, g in net.neighbors(v):
        if w == target:
            g_right = g
        else:
            flux += g * (uv - values[w])
    return uv + flux / g_right


def march(net: StripNetwork, data: CauchyData) -> PotentialField:
    _check(net, data)
    R = net.rows
    values: dict = {}
    for r in range(1, R + 1):
        values[(1, r)] = data.col1[r - 1]
        values[(2, r)] = data.col2[r - 1]
    for k in range(2, net.cols):
        for r in range(1, R + 1):
            values[(k + 1, r)] = continue_vertex(net, values, (k, r))
    return PotentialField(R, net.cols, values)


def oracle_system(net: StripNetwork) -> list[list]:
    """Square system matrix: identity rows pin columns 1-2, residual rows for columns 2..C-1.

    Row order follows the column-major vertex index of the unknowns; the
    pin for (c, r) with c <= 2 and the residual equation at (c-1, r) for
    c >= 3 share the row of vertex (c, r).
    """
    n = net.num_vertices
    zero = net.horiz[0][0] * 0
    A = [[zero] * n for _ in range(n)]
    for c in range(1, net.cols + 1):
        for r in range(1, net.rows + 1):
            i = net.index((c, r))
            if c <= 2:
                A[i][i] = zero + 1
                continue
            v = (c - 1, r)
            iv = net.index(v)
            for w, g in net.neighbors(v):
                A[i][iv] += g
                A[i][net.index(w)] -= g
    return A


def _rhs(net: StripNetwork, data: CauchyData) -> list:
    zero = net.horiz[0][0] * 0
    b = [zero] * net.num_vertices
    for r in range(1, net.rows + 1):
        b[net.index((1, r))] = zero + data.col1[r - 1]
        b[net.index((2, r))] = zero + data.col2[r - 1]
    return b


def oracle_march_many(net: StripNetwork, datas: Sequence[CauchyData]) -> list[PotentialField]:
    """oracle_march for several right-hand sides with one elimination."""
    for d in datas:
        _check(net, d)
    if not datas:
        return []
    A = oracle_system(net)
    cols = [_rhs(net, d) for d in datas]
    if net.exact:
        B = [list(row) for row in zip(*cols)]
        try:
            X = linalg.solve(A, B)
        except ZeroDivisionError:
            raise InternalError("continuation system is singular") from None
    else:
        try:
            X = np.linalg.solve(np.array(A, dtype=float), np.array(cols, dtype=float).T).tolist()
        except np.linalg.LinAlgError:
            raise InternalError("continuation system is singular") from None
    fields = []
    for j in range(len(datas)):
        fields.append(PotentialField(net.rows, net.cols,
                                     {v: X[net.index(v)][j] for v in net.vertices()}))
    return fields


def oracle_march(net: StripNetwork, data: CauchyData) -> PotentialField:
    return oracle_march_many(net, [data])[0]
