"""Exact positive-spectrum certificates.

Polynomials are coefficient lists, highest degree first, with `Fraction`
entries: ``[1, -5, 5, -1]`` is x**3 - 5x**2 + 5x - 1.  Positivity is decided
only from the exact characteristic polynomial (square-free decomposition,
then Sturm sequences); float eigenvalues are carried along for reporting.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg
from .errors import InvalidArgument, NumericFailure
from .textio import Document, parse_complex, parse_float, parse_fraction

#: Isolating intervals are bisected until at most this wide.
INTERVAL_WIDTH = Fraction(1, 10**12)

Poly = list  # list[Fraction], highest degree first


# -- polynomial arithmetic ----------------------------------------------------

def _strip(p: Sequence) -> Poly:
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return [Fraction(x) for x in p[i:]] if p else [Fraction(0)]


def is_zero(p: Sequence) -> bool:
    return all(x == 0 for x in p)


def degree(p: Sequence) -> int:
    p = _strip(p)
    return -1 if is_zero(p) else len(p) - 1


def poly_eval(p: Sequence, x):
    acc = 0 * x
    for c in p:
        acc = acc * x + c
    return acc


def poly_mul(p: Sequence, q: Sequence) -> Poly:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _strip(out)


def derivative(p: Sequence) -> Poly:
    n = len(p) - 1
    if n <= 0:
        return [Fraction(0)]
    return _strip([c * (n - i) for i, c in enumerate(p[:-1])])


def poly_divmod(p: Sequence, q: Sequence) -> tuple[Poly, Poly]:
    p, q = _strip(p), _strip(q)
    if is_zero(q):
        raise ZeroDivisionError("polynomial division by zero")
    if len(p) < len(q):
        return [Fraction(0)], p
    rem = list(p)
    quot = []
    lead = q[0]
    for i in range(len(p) - len(q) + 1):
        f = rem[i] / lead
        quot.append(f)
        if f:
            for j, c in enumerate(q):
                rem[i + j] -= f * c
    return _strip(quot), _strip(rem[len(p) - len(q) + 1:] or [0])


def monic(p: Sequence) -> Poly:
    p = _strip(p)
    return [c / p[0] for c in p]


def poly_gcd(p: Sequence, q: Sequence) -> Poly:
    a, b = _strip(p), _strip(q)
    while not is_zero(b):
        a, b = b, poly_divmod(a, b)[1]
    return monic(a)


def squarefree_decomposition(p: Sequence) -> list[tuple[Poly, int]]:
    """Yun's algorithm: p = lead * prod f_i**i with each f_i square-free and coprime."""
    p = _strip(p)
    if is_zero(p):
        raise InvalidArgument("zero polynomial")
    if degree(p) == 0:
        return []
    dp = derivative(p)
    a = poly_gcd(p, dp)
    b = poly_divmod(p, a)[0]
    c = poly_divmod(dp, a)[0]
    d = _sub(c, derivative(b))
    out = []
    i = 1
    while degree(b) > 0:
        a = poly_gcd(b, d)
        if degree(a) > 0:
            out.append((monic(a), i))
        b = poly_divmod(b, a)[0]
        c = poly_divmod(d, a)[0]
        d = _sub(c, derivative(b))
        i += 1
    return out


def _sub(p: Sequence, q: Sequence) -> Poly:
    n = max(len(p), len(q))
    p = [Fraction(0)] * (n - len(p)) + list(p)
    q = [Fraction(0)] * (n - len(q)) + list(q)
    return _strip([a - b for a, b in zip(p, q)])


# -- characteristic polynomial --------------------------------------------------

def charpoly_exact(M) -> Poly:
    """Monic det(x I - M) by Berkowitz's division-free recursion."""
    n = linalg.require_square(M)
    linalg.require_exact(M)
    A = [[Fraction(x) for x in row] for row in M]
    p = [Fraction(1)]
    for k in range(1, n + 1):
        a = A[k - 1][k - 1]
        r = A[k - 1][:k - 1]
        col = [A[i][k - 1] for i in range(k - 1)]
        # Toeplitz column: 1, -a, -r c, -r A c, ..., -r A^(k-2) c
        t = [Fraction(1), -a]
        v = col
        for _ in range(k - 1):
            t.append(-sum((x * y for x, y in zip(r, v)), Fraction(0)))
            v = [sum((A[i][j] * v[j] for j in range(k - 1)), Fraction(0)) for i in range(k - 1)]
        p = [sum((t[i - j] * p[j] for j in range(min(i, k - 1) + 1)), Fraction(0))
             for i in range(k + 1)]
    return p


# -- Sturm isolation ----------------------------------------------------------------

def sturm_sequence(p: Sequence) -> list[Poly]:
    seq = [_strip(p), derivative(p)]
    while not is_zero(seq[-1]):
        rem = poly_divmod(seq[-2], seq[-1])[1]
        if is_zero(rem):
            break
        seq.append([-c for c in rem])
    return seq


def sign_variations(seq: Sequence[Sequence], x) -> int:
    signs = [v > 0 for v in (poly_eval(q, x) for q in seq) if v != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def count_roots(seq: Sequence[Sequence], a, b) -> int:
    """Distinct real roots in (a, b] of the square-free seq[0]."""
    return sign_variations(seq, a) - sign_variations(seq, b)


def root_bound(p: Sequence) -> Fraction:
    """Cauchy bound: every root has modulus below it."""
    p = _strip(p)
    return 1 + max((abs(c / p[0]) for c in p[1:]), default=Fraction(0))


def _refine(seq, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    p = seq[0]
    while hi - lo > width:
        if poly_eval(p, hi) == 0:
            return hi, hi
        mid = (lo + hi) / 2
        if count_roots(seq, lo, mid) == 1:
            hi = mid
        else:
            lo = mid
    if poly_eval(p, hi) == 0:
        return hi, hi
    # a rational root with a small denominator is recovered exactly
    guess = ((lo + hi) / 2).limit_denominator(10**6)
    if lo < guess <= hi and poly_eval(p, guess) == 0:
        return guess, guess
    return lo, hi


def isolate_real_roots(p: Sequence, width: Fraction = INTERVAL_WIDTH) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals (lo, hi] for the distinct real roots of a square-free p.

    The search ranges are (-B, 0] and (0, B], so a root's sign is settled by
    which range it came from: an interval with lo >= 0 holds a strictly
    positive root.  An exact root is returned as a degenerate [x, x].
    """
    seq = sturm_sequence(p)
    B = root_bound(p)
    found = []
    stack = [(Fraction(0), B), (-B, Fraction(0))]
    while stack:
        lo, hi = stack.pop()
        n = count_roots(seq, lo, hi)
        if n == 0:
            continue
        if n == 1:
            found.append(_refine(seq, lo, hi, width))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    return sorted(found)


@dataclass(frozen=True)
class RootIsolation:
    intervals: list  # (lo, hi) per real root, repeated by multiplicity
    degree: int
    verdict: str  # ALL_POSITIVE | NOT_ALL_POSITIVE
    positive_count: int
    zero_root: bool


def isolate_positive_roots(p: Sequence, width: Fraction = INTERVAL_WIDTH) -> RootIsolation:
    p = _strip(p)
    if is_zero(p):
        raise InvalidArgument("zero polynomial has no isolated roots")
    intervals = []
    for f, mult in squarefree_decomposition(p):
        for iv in isolate_real_roots(f, width):
            intervals.extend([iv] * mult)
    intervals.sort()
    zero_root = poly_eval(p, Fraction(0)) == 0
    # intervals never straddle 0, so hi > 0 means the root itself is positive
    positive = sum(1 for _, hi in intervals if hi > 0)
    n = degree(p)
    ok = len(intervals) == n and positive == n and not zero_root
    return RootIsolation(intervals, n, "ALL_POSITIVE" if ok else "NOT_ALL_POSITIVE",
                         positive, zero_root)


# -- floating eigenvalues -----------------------------------------------------------

def float_eigen(M) -> list[complex]:
    """Eigenvalues by LAPACK's dense nonsymmetric solver, sorted by (real, imag)."""
    n = linalg.require_square(M)
    if n == 0:
        return []
    A = np.array([[float(x) for x in row] for row in M], dtype=float)
    try:
        ev = np.linalg.eigvals(A)
    except np.linalg.LinAlgError as exc:
        raise NumericFailure(f"eigenvalue iteration failed: {exc}") from exc
    if not np.all(np.isfinite(ev)):
        raise NumericFailure("non-finite eigenvalue")
    return sorted((complex(z) for z in ev), key=lambda z: (z.real, z.imag))


# -- report ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectrumReport:
    dim: int
    charpoly: list
    isolating_intervals: list
    float_eigenvalues: list
    verdict: str
    positive_count: int
    float_max_deviation: float = 0.0
    notes: tuple = field(default=())

    @property
    def all_positive(self) -> bool:
        return self.verdict == "ALL_POSITIVE"

    @property
    def min_root_lower_bound(self):
        return min((lo for lo, _ in self.isolating_intervals), default=None)

    def to_document(self, doc: Document | None = None) -> Document:
        doc = doc if doc is not None else Document("spectrum certificate")
        sec = doc.section("spectrum")
        sec.set("dim", self.dim)
        sec.set("charpoly", self.charpoly)
        sec.set("verdict", self.verdict)
        sec.set("positive_count", self.positive_count)
        sec.set("min_root_lower_bound", "none" if self.min_root_lower_bound is None
                else self.min_root_lower_bound)
        sec.set("float_max_deviation", self.float_max_deviation)
        sec.table("isolating_intervals", self.isolating_intervals)
        sec.table("float_eigenvalues", [[z] for z in self.float_eigenvalues])
        for i, note in enumerate(self.notes):
            sec.set(f"note{i + 1}", note)
        return doc

    @classmethod
    def from_document(cls, doc: Document, name: str = "spectrum") -> "SpectrumReport":
        sec = doc[name]
        notes = tuple(sec.fields[k] for k in sec._order if k.startswith("note"))
        return cls(
            int(sec.get("dim")),
            [parse_fraction(x) for x in sec.get("charpoly").split()],
            [(parse_fraction(lo), parse_fraction(hi)) for lo, hi in sec.get_table("isolating_intervals")],
            [parse_complex(row[0]) for row in sec.get_table("float_eigenvalues")],
            sec.get("verdict"),
            int(sec.get("positive_count")),
            parse_float(sec.get("float_max_deviation")),
            notes,
        )


def float_deviation(eigs: Sequence[complex], intervals: Sequence[tuple]) -> float:
    """Largest distance from a float eigenvalue to the nearest interval midpoint."""
    if not eigs:
        return 0.0
    mids = [float((lo + hi) / 2) for lo, hi in intervals]
    if not mids:
        return float("inf")
    return max(min(abs(z - m) for m in mids) for z in eigs)


def certify_spectrum(M) -> SpectrumReport:
    n = linalg.require_square(M)
    linalg.require_exact(M)
    p = charpoly_exact(M)
    iso = isolate_positive_roots(p)
    eigs = float_eigen(M)
    notes = ("root 0 detected",) if iso.zero_root else ()
    if len(iso.intervals) < n:
        notes += (f"{n - len(iso.intervals)} non-real roots",)
    return SpectrumReport(n, p, iso.intervals, eigs, iso.verdict, iso.positive_count,
                          float_deviation(eigs, iso.intervals), notes)
