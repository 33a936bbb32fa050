"""Kirchhoff matrices and Dirichlet-to-Neumann maps of resistor networks.

The DtN map of a network with boundary B and interior I is the Schur
complement of its Kirchhoff matrix K onto B:

    Lambda = K_BB - K_BI K_II^{-1} K_IB

It sends boundary potentials to the boundary currents of the harmonic
extension.  Strips use all outer vertices as the default boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .errors import InvalidArgument, SingularInterior
from .network import StripNetwork, Vertex
from .spectral import SpectrumReport, certify_spectrum
from .textio import Document, parse_fraction
from .transfer import modified_h


@dataclass(frozen=True)
class ResistorGraph:
    """Any finite graph with positive edge conductivities; vertices are 0..n-1."""

    num_vertices: int
    edge_list: tuple  # (i, j, gamma)

    def __post_init__(self):
        edges = tuple((int(i), int(j), Fraction(g)) for i, j, g in self.edge_list)
        for i, j, g in edges:
            if not (0 <= i < self.num_vertices and 0 <= j < self.num_vertices) or i == j:
                raise InvalidArgument(f"bad edge ({i}, {j})")
            if g <= 0:
                raise InvalidArgument(f"conductivity must be positive, got {g}")
        object.__setattr__(self, "edge_list", edges)

    def edges(self):
        return iter(self.edge_list)


def single_edge(g) -> ResistorGraph:
    return ResistorGraph(2, ((0, 1, g),))


def star(leaves: int, g=1) -> ResistorGraph:
    """Center vertex 0 joined to leaves 1..leaves."""
    return ResistorGraph(leaves + 1, tuple((0, i, g) for i in range(1, leaves + 1)))


def kirchhoff(net) -> list[list[Fraction]]:
    """Weighted graph Laplacian: K_vv = sum of incident gamma, K_vw = -gamma_vw."""
    n = net.num_vertices
    K = linalg.zeros(n, n)
    for i, j, g in net.edges():
        g = Fraction(g)
        K[i][i] += g
        K[j][j] += g
        K[i][j] -= g
        K[j][i] -= g
    return K


def _boundary_indices(net, boundary: Iterable | None) -> list[int]:
    if boundary is None:
        if not isinstance(net, StripNetwork):
            raise InvalidArgument("general graphs need an explicit boundary")
        boundary = net.outer_vertices()
    out = []
    for b in boundary:
        i = net.index(b) if isinstance(net, StripNetwork) and isinstance(b, tuple) else int(b)
        if not 0 <= i < net.num_vertices:
            raise InvalidArgument(f"boundary vertex {b} out of range")
        out.append(i)
    if not out:
        raise InvalidArgument("boundary must be nonempty")
    if len(set(out)) != len(out):
        raise InvalidArgument("boundary lists a vertex twice")
    return out


def schur_complement(K, bidx: Sequence[int]) -> list[list[Fraction]]:
    n = len(K)
    iidx = [i for i in range(n) if i not in set(bidx)]
    KBB = linalg.submatrix(K, bidx, bidx)
    if not iidx:
        return KBB
    KII = linalg.submatrix(K, iidx, iidx)
    KIB = linalg.submatrix(K, iidx, bidx)
    KBI = linalg.submatrix(K, bidx, iidx)
    try:
        X = linalg.solve(KII, KIB)
    except ZeroDivisionError:
        raise SingularInterior("an interior component does not touch the boundary") from None
    corr = linalg.matmul(KBI, X)
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(KBB, corr)]


@dataclass(frozen=True)
class DtNMap:
    boundary: tuple  # vertex labels, in matrix order
    matrix: list

    @property
    def size(self) -> int:
        return len(self.matrix)

    def to_document(self, doc: Document | None = None, name: str = "dtn") -> Document:
        doc = doc if doc is not None else Document("Dirichlet-to-Neumann map")
        sec = doc.section(name)
        sec.set("size", self.size)
        sec.set("boundary", [_label(b) for b in self.boundary])
        sec.table("matrix", self.matrix)
        return doc

    @classmethod
    def from_document(cls, doc: Document, name: str = "dtn") -> "DtNMap":
        sec = doc[name]
        boundary = tuple(_unlabel(t) for t in sec.get("boundary").split())
        matrix = [[parse_fraction(x) for x in row] for row in sec.get_table("matrix")]
        return cls(boundary, matrix)


def _label(b) -> str:
    return f"{b[0]},{b[1]}" if isinstance(b, tuple) else str(b)


def _unlabel(t: str):
    if "," in t:
        c, r = t.split(",")
        return (int(c), int(r))
    return int(t)


def dtn_map(net, boundary: Iterable | None = None) -> DtNMap:
    """Exact DtN map; `boundary` holds vertices (strip) or indices (graph)."""
    if isinstance(net, StripNetwork) and not net.exact:
        raise InvalidArgument("DtN maps are computed on the exact backend")
    labels = list(boundary) if boundary is not None else (
        net.outer_vertices() if isinstance(net, StripNetwork) else None)
    bidx = _boundary_indices(net, labels)
    return DtNMap(tuple(labels), schur_complement(kirchhoff(net), bidx))


def boundary_current(net, boundary: Sequence, p: int, q: int) -> Fraction:
    """Current at boundary vertex q when p is held at 1 and the rest of B at 0.

    Solves the full Dirichlet problem by dense elimination over all vertices,
    independent of the Schur complement route.
    """
    bidx = _boundary_indices(net, boundary)
    K = kirchhoff(net)
    n = len(K)
    bset = set(bidx)
    A, rhs = [], []
    for i in range(n):
        if i in bset:
            A.append([Fraction(int(i == j)) for j in range(n)])
            rhs.append([Fraction(int(i == bidx[p]))])
        else:
            A.append(list(K[i]))
            rhs.append([Fraction(0)])
    try:
        u = [row[0] for row in linalg.solve(A, rhs)]
    except ZeroDivisionError:
        raise SingularInterior("Dirichlet problem is singular") from None
    return sum((K[bidx[q]][j] * u[j] for j in range(n)), Fraction(0))


@dataclass(frozen=True)
class ProbeReport:
    """Continuation spectrum and DtN map of one strip, side by side.

    No relation between the two is asserted; this is raw data.
    """

    rows: int
    cols: int
    shift: int
    spectrum: SpectrumReport
    dtn: DtNMap

    def to_document(self) -> Document:
        doc = Document("continuation spectrum and DtN map")
        sec = doc.section("probe")
        sec.set("rows", self.rows).set("cols", self.cols).set("shift", self.shift)
        sec.set("relation", "none asserted")
        self.spectrum.to_document(doc)
        self.dtn.to_document(doc)
        return doc

    @classmethod
    def from_document(cls, doc: Document) -> "ProbeReport":
        sec = doc["probe"]
        return cls(int(sec.get("rows")), int(sec.get("cols")), int(sec.get("shift")),
                   SpectrumReport.from_document(doc), DtNMap.from_document(doc))


def dtn_spectrum_probe(net: StripNetwork, s: int) -> ProbeReport:
    H = modified_h(net, s)
    return ProbeReport(net.rows, net.cols, s, certify_spectrum(H.matrix), dtn_map(net))
