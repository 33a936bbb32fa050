"""Rectangular conductivity strips and the discrete harmonicity equation.

Vertices are addressed as ``(col, row)``, both 1-based, with columns
increasing in the direction of continuation.  Conductivities live in two
row-major tables:

* ``horiz[r-1][c-1]`` -- edge (c, r)--(c+1, r), for 1 <= c <= C-1
* ``vert[r-1][c-1]``  -- edge (c, r)--(c, r+1), for 1 <= r <= R-1

Exact networks hold `Fraction` values, floating networks hold `float`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor
from typing import Iterable, Iterator, Mapping

from .errors import InvalidArgument, MissingData
from .textio import Document, parse_fraction, parse_float

Vertex = tuple[int, int]

#: Largest denominator used for random exact conductivities.
RANDOM_MAX_DENOMINATOR = 64


def _coerce(x, exact: bool):
    if exact:
        if isinstance(x, float):
            raise InvalidArgument("float conductivity on the exact backend")
        return Fraction(x)
    return float(x)


@dataclass(frozen=True)
class StripNetwork:
    rows: int
    cols: int
    horiz: tuple[tuple, ...]
    vert: tuple[tuple, ...]
    exact: bool = True

    def __post_init__(self):
        R, C = self.rows, self.cols
        if not (isinstance(R, int) and isinstance(C, int)) or R < 2 or C < 2:
            raise InvalidArgument(f"strip needs rows >= 2 and cols >= 2, got {R}x{C}")
        if len(self.horiz) != R or any(len(t) != C - 1 for t in self.horiz):
            raise InvalidArgument(f"horizontal table must be {R}x{C - 1}")
        if len(self.vert) != R - 1 or any(len(t) != C for t in self.vert):
            raise InvalidArgument(f"vertical table must be {R - 1}x{C}")
        h = tuple(tuple(_coerce(x, self.exact) for x in t) for t in self.horiz)
        v = tuple(tuple(_coerce(x, self.exact) for x in t) for t in self.vert)
        for g in (x for t in h + v for x in t):
            if not g > 0:
                raise InvalidArgument(f"conductivities must be strictly positive, got {g}")
        object.__setattr__(self, "horiz", h)
        object.__setattr__(self, "vert", v)

    # -- edges ---------------------------------------------------------
    def gamma_h(self, c: int, r: int):
        """Conductivity of (c, r)--(c+1, r)."""
        return self.horiz[r - 1][c - 1]

    def gamma_v(self, c: int, r: int):
        """Conductivity of (c, r)--(c, r+1)."""
        return self.vert[r - 1][c - 1]

    @property
    def num_vertices(self) -> int:
        return self.rows * self.cols

    @property
    def num_edges(self) -> int:
        return self.rows * (self.cols - 1) + (self.rows - 1) * self.cols

    def vertices(self) -> Iterator[Vertex]:
        for c in range(1, self.cols + 1):
            for r in range(1, self.rows + 1):
                yield (c, r)

    def index(self, v: Vertex) -> int:
        """Column-major vertex index used by dense systems."""
        c, r = v
        return (c - 1) * self.rows + (r - 1)

    def contains(self, v: Vertex) -> bool:
        c, r = v
        return 1 <= c <= self.cols and 1 <= r <= self.rows

    def neighbors(self, v: Vertex) -> list[tuple[Vertex, object]]:
        """Neighbors of v with edge conductivities, ordered left, down, up, right."""
        if not self.contains(v):
            raise InvalidArgument(f"vertex {v} outside the {self.rows}x{self.cols} strip")
        c, r = v
        out = []
        if c > 1:
            out.append(((c - 1, r), self.gamma_h(c - 1, r)))
        if r > 1:
            out.append(((c, r - 1), self.gamma_v(c, r - 1)))
        if r < self.rows:
            out.append(((c, r + 1), self.gamma_v(c, r)))
        if c < self.cols:
            out.append(((c + 1, r), self.gamma_h(c, r)))
        return out

    def edges(self) -> Iterator[tuple[int, int, object]]:
        """(i, j, gamma) over all edges, in vertex-index terms."""
        for r in range(1, self.rows + 1):
            for c in range(1, self.cols):
                yield self.index((c, r)), self.index((c + 1, r)), self.gamma_h(c, r)
        for r in range(1, self.rows):
            for c in range(1, self.cols + 1):
                yield self.index((c, r)), self.index((c, r + 1)), self.gamma_v(c, r)

    def outer_vertices(self) -> list[Vertex]:
        """Boundary vertices in counter-clockwise order starting at (1, 1)."""
        R, C = self.rows, self.cols
        ring = [(c, 1) for c in range(1, C + 1)]
        ring += [(C, r) for r in range(2, R + 1)]
        ring += [(c, R) for c in range(C - 1, 0, -1)]
        ring += [(1, r) for r in range(R - 1, 1, -1)]
        return ring

    # -- derived networks ----------------------------------------------
    def columns(self, first: int, last: int | None = None) -> "StripNetwork":
        """Sub-strip on columns first..last, renumbered from 1."""
        last = self.cols if last is None else last
        if not 1 <= first < last <= self.cols:
            raise InvalidArgument(f"bad column range {first}..{last}")
        h = tuple(t[first - 1:last - 1] for t in self.horiz)
        v = tuple(t[first - 1:last] for t in self.vert)
        return StripNetwork(self.rows, last - first + 1, h, v, self.exact)

    def scaled(self, t) -> "StripNetwork":
        h = tuple(tuple(t * x for x in row) for row in self.horiz)
        v = tuple(tuple(t * x for x in row) for row in self.vert)
        return StripNetwork(self.rows, self.cols, h, v, self.exact)

    def to_float(self) -> "StripNetwork":
        if not self.exact:
            return self
        return StripNetwork(self.rows, self.cols, self.horiz, self.vert, exact=False)

    # -- serialization ---------------------------------------------------
    def to_document(self, doc: Document | None = None) -> Document:
        doc = doc if doc is not None else Document("strip network")
        sec = doc.section("network")
        sec.set("rows", self.rows).set("cols", self.cols)
        sec.set("backend", "exact" if self.exact else "float")
        sec.table("horiz", self.horiz)
        sec.table("vert", self.vert)
        return doc

    def to_text(self) -> str:
        return self.to_document().render()

    @classmethod
    def from_document(cls, doc: Document) -> "StripNetwork":
        sec = doc["network"]
        rows = int(sec.get("rows"))
        cols = int(sec.get("cols"))
        exact = sec.fields.get("backend", "exact") == "exact"
        conv = parse_fraction if exact else parse_float
        h = [[conv(x) for x in row] for row in sec.get_table("horiz")]
        v = [[conv(x) for x in row] for row in sec.get_table("vert")]
        return cls(rows, cols, tuple(map(tuple, h)), tuple(map(tuple, v)), exact)

    @classmethod
    def from_text(cls, text: str) -> "StripNetwork":
        return cls.from_document(Document.parse(text))


def build_uniform(R: int, C: int, g=1, exact: bool = True) -> StripNetwork:
    if not g > 0:
        raise InvalidArgument(f"conductivity must be positive, got {g}")
    if R < 2 or C < 2:
        raise InvalidArgument(f"strip needs rows >= 2 and cols >= 2, got {R}x{C}")
    g = _coerce(g, exact)
    h = tuple((g,) * (C - 1) for _ in range(R))
    v = tuple((g,) * C for _ in range(R - 1))
    return StripNetwork(R, C, h, v, exact)


def random_rational(rng: random.Random, lo: Fraction, hi: Fraction,
                    max_den: int = RANDOM_MAX_DENOMINATOR) -> Fraction:
    """Draw a rational in [lo, hi] with denominator at most max_den."""
    while True:
        q = rng.randint(1, max_den)
        a, b = ceil(lo * q), floor(hi * q)
        if a <= b:
            return Fraction(rng.randint(a, b), q)


def build_random(R: int, C: int, seed: int, lo=Fraction(1, 8), hi=Fraction(8),
                 exact: bool = True) -> StripNetwork:
    """Seeded random strip; the same seed always gives the same network.

    The float backend draws the same rationals and converts them, so exact
    and float networks from one seed describe the same conductivities.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if lo <= 0 or hi < lo:
        raise InvalidArgument(f"need 0 < lo <= hi, got lo={lo}, hi={hi}")
    rng = random.Random(seed)
    h = [[random_rational(rng, lo, hi) for _ in range(C - 1)] for _ in range(R)]
    v = [[random_rational(rng, lo, hi) for _ in range(C)] for _ in range(R - 1)]
    net = StripNetwork(R, C, tuple(map(tuple, h)), tuple(map(tuple, v)))
    return net if exact else net.to_float()


@dataclass(frozen=True)
class PotentialField:
    """Vertex values on a strip; may be partial."""

    rows: int
    cols: int
    values: Mapping[Vertex, object] = field(default_factory=dict)

    def __post_init__(self):
        for (c, r) in self.values:
            if not (1 <= c <= self.cols and 1 <= r <= self.rows):
                raise InvalidArgument(f"value at {(c, r)} lies outside the strip")
        object.__setattr__(self, "values", dict(self.values))

    @classmethod
    def from_function(cls, rows: int, cols: int, f) -> "PotentialField":
        return cls(rows, cols, {(c, r): f(c, r) for c in range(1, cols + 1)
                                for r in range(1, rows + 1)})

    @property
    def defined(self) -> frozenset:
        return frozenset(self.values)

    @property
    def is_complete(self) -> bool:
        return len(self.values) == self.rows * self.cols

    def __getitem__(self, v: Vertex):
        try:
            return self.values[v]
        except KeyError:
            raise MissingData(f"no value at vertex {v}") from None

    def __contains__(self, v: Vertex) -> bool:
        return v in self.values

    def column(self, c: int) -> list:
        return [self[(c, r)] for r in range(1, self.rows + 1)]

    def with_value(self, v: Vertex, x) -> "PotentialField":
        vals = dict(self.values)
        vals[v] = x
        return PotentialField(self.rows, self.cols, vals)

    def __add__(self, other: "PotentialField") -> "PotentialField":
        keys = self.defined & other.defined
        return PotentialField(self.rows, self.cols, {k: self.values[k] + other.values[k] for k in keys})

    def scale(self, a) -> "PotentialField":
        return PotentialField(self.rows, self.cols, {k: a * x for k, x in self.values.items()})

    def to_document(self, doc: Document | None = None) -> Document:
        """Dense column-major table: one line per column, rows 1..R."""
        if not self.is_complete:
            raise MissingData("only complete fields are serialized")
        doc = doc if doc is not None else Document("potential field")
        sec = doc.section("field")
        sec.set("rows", self.rows).set("cols", self.cols)
        sec.table("values", [self.column(c) for c in range(1, self.cols + 1)])
        return doc

    @classmethod
    def from_document(cls, doc: Document, exact: bool = True) -> "PotentialField":
        sec = doc["field"]
        rows, cols = int(sec.get("rows")), int(sec.get("cols"))
        conv = parse_fraction if exact else parse_float
        table = sec.get_table("values")
        return cls(rows, cols, {(c, r): conv(table[c - 1][r - 1])
                                for c in range(1, cols + 1) for r in range(1, rows + 1)})


def residual(net: StripNetwork, u: PotentialField, v: Vertex):
    """Sum over neighbors j of gamma_vj * (u_v - u_j); zero iff u is harmonic at v."""
    uv = u[v]
    return sum((g * (uv - u[w]) for w, g in net.neighbors(v)), start=0 * uv)


def max_defect(net: StripNetwork, u: PotentialField, vs: Iterable[Vertex]):
    return max((abs(residual(net, u, v)) for v in vs), default=0)


def interior_columns(net: StripNetwork) -> list[Vertex]:
    """Vertices in columns 2..C-1, where marching imposes harmonicity."""
    return [(c, r) for c in range(2, net.cols) for r in range(1, net.rows + 1)]
