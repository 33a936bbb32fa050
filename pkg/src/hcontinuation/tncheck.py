"""Exact total-nonnegativity certificates and Cauchy-Binet checks."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Optional

from . import kernels, linalg
from .errors import BudgetExceeded, InternalError, InvalidArgument
from .textio import Document, parse_fraction
from .transfer import StepMatrix

MAX_DIM = 10


@dataclass(frozen=True)
class MinorCertificate:
    dim: int
    minors_checked: int
    min_minor: Fraction
    verdict: str  # "TNN" or "NOT_TNN"
    witness: Optional[tuple[tuple[int, ...], tuple[int, ...], Fraction]] = None
    determinant: Optional[Fraction] = None

    @property
    def is_tnn(self) -> bool:
        return self.verdict == "TNN"

    def to_document(self, doc: Document | None = None) -> Document:
        doc = doc if doc is not None else Document("minor certificate")
        sec = doc.section("minors")
        sec.set("dim", self.dim).set("minors_checked", self.minors_checked)
        sec.set("min_minor", self.min_minor).set("determinant", self.determinant)
        sec.set("verdict", self.verdict)
        if self.witness is None:
            sec.set("witness", "none")
        else:
            rows, cols, value = self.witness
            sec.set("witness_rows", [i + 1 for i in rows])
            sec.set("witness_cols", [j + 1 for j in cols])
            sec.set("witness_minor", value)
        return doc

    @classmethod
    def from_document(cls, doc: Document) -> "MinorCertificate":
        sec = doc["minors"]
        witness = None
        if "witness_rows" in sec.fields:
            witness = (tuple(int(x) - 1 for x in sec.get("witness_rows").split()),
                       tuple(int(x) - 1 for x in sec.get("witness_cols").split()),
                       parse_fraction(sec.get("witness_minor")))
        return cls(int(sec.get("dim")), int(sec.get("minors_checked")),
                   parse_fraction(sec.get("min_minor")), sec.get("verdict"), witness,
                   parse_fraction(sec.get("determinant")))


def minor(M, rows, cols) -> Fraction:
    """One minor, evaluated by Bareiss elimination."""
    return linalg.det_bareiss(linalg.submatrix(M, rows, cols))


def all_minors_nonneg(M) -> MinorCertificate:
    """Evaluate every square minor of M exactly.

    Index sets are visited by order k, then row set, then column set, each
    in lexicographic order; the witness is the first negative minor met.
    """
    n = linalg.require_square(M)
    linalg.require_exact(M)
    if n > MAX_DIM:
        raise BudgetExceeded(f"exhaustive minors limited to dimension {MAX_DIM}, got {n}")
    if n == 0:
        raise InvalidArgument("empty matrix")
    # Row scaling by positive integers keeps every minor's sign.
    N, scales = linalg.integer_row_scaled(M)
    combos, _ = kernels.combination_tables(n)
    levels = kernels.all_minors(N)
    checked = 0
    min_minor = None
    witness = None
    for k, level in enumerate(levels, start=1):
        sets = combos[k]
        m = len(sets)
        checked += m * m
        for a, I in enumerate(sets):
            chunk = level[a * m:(a + 1) * m]
            lo = min(chunk)
            denom = 1
            for i in I:
                denom *= scales[i]
            value = Fraction(lo, denom)
            if min_minor is None or value < min_minor:
                min_minor = value
            if witness is None and lo < 0:
                b = next(j for j, x in enumerate(chunk) if x < 0)
                witness = (I, sets[b], Fraction(chunk[b], denom))
    det = Fraction(levels[-1][0], _prod(scales))
    if det != linalg.det_bareiss(M):
        raise InternalError("minor kernel disagrees with Bareiss on the determinant")
    if witness is not None:
        # re-derive the witness minor independently of the kernel
        if minor(M, witness[0], witness[1]) != witness[2]:
            raise InternalError("minor kernel disagrees with Bareiss on the witness")
    if checked != comb(2 * n, n) - 1:
        raise InternalError(f"enumerated {checked} minors for dimension {n}")
    return MinorCertificate(n, checked, min_minor, "TNN" if witness is None else "NOT_TNN",
                            witness, det)


def _prod(xs) -> int:
    p = 1
    for x in xs:
        p *= x
    return p


def is_elementary_nonneg(S) -> bool:
    """Structural step check, confirmed by the dense minor certificate."""
    if isinstance(S, StepMatrix):
        structural = S.has_step_shape()
        dense = S.dense()
    else:
        dense = [list(r) for r in S]
        structural = _dense_step_shape(dense)
    if not linalg.is_exact(dense):
        dense = linalg.to_fraction_matrix(dense)
    if not structural:
        return False
    cert = all_minors_nonneg(dense)
    if not cert.is_tnn:
        raise InternalError("step passes the shape check but has a negative minor")
    return True


def _dense_step_shape(M) -> bool:
    n = len(M)
    off = [i for i in range(n) for j in range(n) if (M[i][j] != (1 if i == j else 0))]
    rows = sorted(set(off))
    if not rows:
        return True
    if len(rows) != 1:
        return False
    i = rows[0]
    return StepMatrix(n, i, {j: x for j, x in enumerate(M[i]) if x != 0}).has_step_shape()


def cauchy_binet_check(A, B, samples: int = 20, seed: int = 0) -> bool:
    """det(AB) = det(A) det(B), plus sampled Cauchy-Binet minor expansions."""
    n = linalg.require_square(A)
    if linalg.require_square(B) != n:
        raise InvalidArgument("Cauchy-Binet check needs matrices of equal size")
    linalg.require_exact(A)
    linalg.require_exact(B)
    AB = linalg.matmul(A, B)
    if linalg.det_bareiss(AB) != linalg.det_bareiss(A) * linalg.det_bareiss(B):
        return False
    rng = random.Random(seed)
    for _ in range(samples):
        k = rng.randint(1, n)
        I = tuple(sorted(rng.sample(range(n), k)))
        J = tuple(sorted(rng.sample(range(n), k)))
        rhs = sum(minor(A, I, K) * minor(B, K, J) for K in combinations(range(n), k))
        if minor(AB, I, J) != rhs:
            return False
    return True
