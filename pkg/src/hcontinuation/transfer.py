"""Difference charts and the transfer operator between them.

A chart at column k records the Cauchy data on columns k-1, k modulo
constants as 2R-1 signed edge differences, read bottom to top along the
zig-zag path

    slot 2(r-1)   = sigma_r * (u(k, r) - u(k-1, r))     "H-slot" of row r
    slot 2(r-1)+1 = tau_r   * (u(k, r+1) - u(k, r))     "V-slot" of row r

(slots are 0-based here).  With the herringbone signs sigma_1 = +1,
tau_r = -sigma_r, sigma_{r+1} = -sigma_r, advancing one column is a product
of elementary matrices, each the identity except for one row with positive
entries in at most three consecutive places.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import InvalidArgument
from .marching import CauchyData, march, oracle_march_many
from .network import PotentialField, StripNetwork
from .textio import Document, format_number, parse_float, parse_fraction


def herringbone_signs(R: int) -> tuple[int, ...]:
    if R < 2:
        raise InvalidArgument("charts need at least two rows")
    signs = []
    sigma = 1
    for r in range(1, R + 1):
        signs.append(sigma)
        if r < R:
            tau = -sigma
            signs.append(tau)
            sigma = -sigma
    return tuple(signs)


@dataclass(frozen=True)
class Chart:
    rows: int
    column: int
    signs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        if len(self.signs) != 2 * self.rows - 1 or any(s not in (1, -1) for s in self.signs):
            raise InvalidArgument(f"a {self.rows}-row chart needs {2 * self.rows - 1} signs of +-1")
        if self.column < 2:
            raise InvalidArgument("chart column must be at least 2")

    @property
    def dim(self) -> int:
        return 2 * self.rows - 1

    def sigma(self, r: int) -> int:
        return self.signs[2 * (r - 1)]

    def tau(self, r: int) -> int:
        return self.signs[2 * (r - 1) + 1]

    @property
    def is_herringbone(self) -> bool:
        return self.signs == herringbone_signs(self.rows)

    def at(self, column: int) -> "Chart":
        return Chart(self.rows, column, self.signs)

    def evaluate(self, u: PotentialField) -> list:
        k = self.column
        out = []
        for r in range(1, self.rows + 1):
            out.append(self.sigma(r) * (u[(k, r)] - u[(k - 1, r)]))
            if r < self.rows:
                out.append(self.tau(r) * (u[(k, r + 1)] - u[(k, r)]))
        return out

    def to_cauchy(self, slots: Sequence, pin=Fraction(0)) -> CauchyData:
        """Values on columns k-1, k with u(k-1, 1) = pin reproducing the given slots.

        Only meaningful for k = 2, where those columns are the Cauchy data.
        """
        if len(slots) != self.dim:
            raise InvalidArgument(f"expected {self.dim} slot values")
        right = [pin + self.sigma(1) * slots[0]]
        for r in range(1, self.rows):
            right.append(right[-1] + self.tau(r) * slots[2 * r - 1])
        left = [right[r - 1] - self.sigma(r) * slots[2 * (r - 1)] for r in range(1, self.rows + 1)]
        return CauchyData(tuple(left), tuple(right))


def herringbone_chart(R: int, k: int) -> Chart:
    return Chart(R, k, herringbone_signs(R))


@dataclass(frozen=True)
class StepMatrix:
    """Identity except row `row`, whose nonzero entries are `entries` (0-based slots)."""

    dim: int
    row: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "entries", dict(sorted(self.entries.items())))
        if not 0 <= self.row < self.dim or any(not 0 <= j < self.dim for j in self.entries):
            raise InvalidArgument("step index out of range")

    def dense(self) -> list[list]:
        one = next(iter(self.entries.values()), Fraction(1)) ** 0
        M = linalg.identity(self.dim, one)
        zero = one - one
        M[self.row] = [self.entries.get(j, zero) for j in range(self.dim)]
        return M

    def determinant(self):
        return self.entries.get(self.row, 0)

    def has_step_shape(self) -> bool:
        """Positive entries, consecutive support of width <= 3 containing the diagonal."""
        idx = [j for j, x in self.entries.items() if x != 0]
        if self.row not in idx or any(not self.entries[j] > 0 for j in idx):
            return False
        return len(idx) <= 3 and idx == list(range(idx[0], idx[-1] + 1))

    def apply_left(self, M: list[list]) -> None:
        """M <- S M, in place; only one row changes."""
        ncols = len(M[0])
        new = [0 * M[0][0]] * ncols
        for j, e in self.entries.items():
            src = M[j]
            new = [a + e * b for a, b in zip(new, src)]
        M[self.row] = new

    def apply(self, x: Sequence) -> list:
        y = list(x)
        y[self.row] = sum((e * x[j] for j, e in self.entries.items()), start=0 * x[0])
        return y

    def describe(self) -> str:
        parts = " ".join(f"{j + 1}:{format_number(e)}" for j, e in self.entries.items())
        return f"{self.row + 1} {parts}"


def horizontal_step(net: StripNetwork, k: int, r: int, chart: Chart) -> StepMatrix:
    """Rewrite the H-slot of row r using the harmonicity equation at (k, r)."""
    R = net.rows
    if not (2 <= k <= net.cols - 1 and 1 <= r <= R):
        raise InvalidArgument(f"no horizontal step at vertex ({k}, {r}) of a {R}x{net.cols} strip")
    if chart.rows != R:
        raise InvalidArgument("chart and network disagree on the number of rows")
    g_right = net.gamma_h(k, r)
    h = 2 * (r - 1)
    sigma = chart.sigma(r)
    entries = {h: net.gamma_h(k - 1, r) / g_right}
    if r > 1:
        entries[h - 1] = sigma * chart.tau(r - 1) * net.gamma_v(k, r - 1) / g_right
    if r < R:
        entries[h + 1] = -sigma * chart.tau(r) * net.gamma_v(k, r) / g_right
    return StepMatrix(chart.dim, h, entries)


def vertical_update_step(r: int, chart: Chart) -> StepMatrix:
    """Rewrite the V-slot of row r from the two freshly advanced H-slots around it."""
    if not 1 <= r <= chart.rows - 1:
        raise InvalidArgument(f"no vertical slot for row {r} in a {chart.rows}-row chart")
    v = 2 * (r - 1) + 1
    tau = chart.tau(r)
    one = Fraction(1)
    entries = {
        v - 1: -tau * chart.sigma(r) * one,
        v: one,
        v + 1: tau * chart.sigma(r + 1) * one,
    }
    return StepMatrix(chart.dim, v, entries)


def advance(net: StripNetwork, k: int, chart: Chart | None = None) -> list[StepMatrix]:
    """Steps carrying the chart at column k to the chart at column k+1."""
    chart = herringbone_chart(net.rows, k) if chart is None else chart
    steps = [horizontal_step(net, k, r, chart) for r in range(1, net.rows + 1)]
    steps += [vertical_update_step(r, chart) for r in range(1, net.rows)]
    if not net.exact:
        steps = [_float_step(s) for s in steps]
    return steps


def _float_step(step: StepMatrix) -> StepMatrix:
    return StepMatrix(step.dim, step.row, {j: float(e) for j, e in step.entries.items()})


def product(steps: Sequence[StepMatrix], dim: int, exact: bool = True) -> list[list]:
    """Exact product with the last step leftmost."""
    M = linalg.identity(dim, Fraction(1) if exact else 1.0)
    for step in steps:
        step.apply_left(M)
    return M


@dataclass(frozen=True)
class TransferOperator:
    shift: int
    matrix: list
    steps: tuple
    from_chart: Chart
    to_chart: Chart

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @property
    def exact(self) -> bool:
        return linalg.is_exact(self.matrix)

    def determinant(self):
        """det(H) as the product of the steps' diagonal entries."""
        d = Fraction(1) if self.exact else 1.0
        for s in self.steps:
            d *= s.determinant()
        return d

    def to_document(self, doc: Document | None = None) -> Document:
        doc = doc if doc is not None else Document("transfer operator")
        sec = doc.section("transfer")
        sec.set("backend", "exact" if self.exact else "float")
        sec.set("rows", self.from_chart.rows).set("shift", self.shift).set("dim", self.dim)
        sec.set("from_column", self.from_chart.column).set("to_column", self.to_chart.column)
        sec.set("signs", ["+" if s > 0 else "-" for s in self.from_chart.signs])
        sec.table("matrix", self.matrix)
        sec.table("steps", [s.describe().split() for s in self.steps])
        return doc

    @classmethod
    def from_document(cls, doc: Document) -> "TransferOperator":
        sec = doc["transfer"]
        rows, shift, dim = int(sec.get("rows")), int(sec.get("shift")), int(sec.get("dim"))
        signs = tuple(1 if t == "+" else -1 for t in sec.get("signs").split())
        conv = parse_fraction if sec.get("backend") == "exact" else parse_float
        matrix = [[conv(x) for x in row] for row in sec.get_table("matrix")]
        steps = []
        for tokens in sec.get_table("steps"):
            entries = {}
            for tok in tokens[1:]:
                j, _, val = tok.partition(":")
                entries[int(j) - 1] = conv(val)
            steps.append(StepMatrix(dim, int(tokens[0]) - 1, entries))
        return cls(shift, matrix, tuple(steps),
                   Chart(rows, int(sec.get("from_column")), signs),
                   Chart(rows, int(sec.get("to_column")), signs))


def _check_shift(net: StripNetwork, s: int) -> None:
    if not (isinstance(s, int) and 0 <= s <= net.cols - 2):
        raise InvalidArgument(f"shift must lie in 0..{net.cols - 2} for {net.cols} columns, got {s}")


def modified_h(net: StripNetwork, s: int) -> TransferOperator:
    """Transfer operator from the chart at column 2 to the chart at column 2+s."""
    _check_shift(net, s)
    start = herringbone_chart(net.rows, 2)
    steps: list[StepMatrix] = []
    for k in range(2, s + 2):
        steps.extend(advance(net, k, start.at(k)))
    matrix = product(steps, start.dim, net.exact)
    return TransferOperator(s, matrix, tuple(steps), start, start.at(2 + s))


def oracle_modified_h(net: StripNetwork, s: int) -> list[list]:
    """Same matrix as `modified_h`, built from dense solves and no step matrices."""
    _check_shift(net, s)
    chart = herringbone_chart(net.rows, 2)
    n = chart.dim
    one = Fraction(1) if net.exact else 1.0
    basis = [[one if i == j else 0 * one for i in range(n)] for j in range(n)]
    fields = oracle_march_many(net, [chart.to_cauchy(e, pin=0 * one) for e in basis])
    target = chart.at(2 + s)
    columns = [target.evaluate(u) for u in fields]
    return linalg.transpose(columns)


def value_transfer(net: StripNetwork, s: int) -> list[list]:
    """2R x 2R map from values on columns (1, 2) to values on columns (1+s, 2+s)."""
    _check_shift(net, s)
    R = net.rows
    one = Fraction(1) if net.exact else 1.0
    columns = []
    for j in range(2 * R):
        e = [one if i == j else 0 * one for i in range(2 * R)]
        u = march(net, CauchyData.from_vector(e))
        columns.append(u.column(1 + s) + u.column(2 + s))
    return linalg.transpose(columns)


def sign_pattern_search(net: StripNetwork, s: int) -> list[tuple[int, ...]]:
    """All chart sign patterns under which every advance step is entrywise nonnegative."""
    _check_shift(net, s)
    if net.rows > 6:
        raise InvalidArgument("sign search is limited to R <= 6")
    found = []
    for signs in itertools.product((1, -1), repeat=2 * net.rows - 1):
        ok = True
        for k in range(2, s + 2):
            chart = Chart(net.rows, k, signs)
            if any(not e >= 0 for st in advance(net, k, chart) for e in st.entries.values()):
                ok = False
                break
        if ok:
            found.append(signs)
    return found
