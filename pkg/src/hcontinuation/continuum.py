"""Grid-refinement study of the shifted continuation operator.

A rectangle [0, length] x [0, height] with conductivity gamma(x, y) is
discretized at cell size h by the 5-point finite-volume stencil: each
lattice edge gets gamma at its midpoint.  With square cells the factors of
h cancel from the harmonicity equation, so the lattice is an ordinary
StripNetwork with R = height/h + 1 rows and C = length/h + 1 columns.  At
each level the transfer operator over shift/h columns is formed on the
float backend and its eigenvalues recorded; the coarsest level is also
certified exactly when gamma is rational there.

The study gives numerical evidence for positivity of the spectrum; it does
not prove anything about the continuous problem.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InvalidConfig, NumericFailure
from .network import StripNetwork
from .spectral import SpectrumReport, certify_spectrum, float_eigen
from .textio import Document, format_number, parse_fraction
from .transfer import modified_h

IMAG_REL_TOL = 1e-9
MIN_EIGENVALUE = 1e-10
BACKEND_REL_TOL = 1e-9

EVIDENCE_NOTE = "empirical support for positivity at these grid levels; not a proof"


def _number(s: str):
    """Fraction when the text is rational-looking, float otherwise."""
    s = s.strip()
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return float(s)
    except ValueError:
        raise InvalidConfig(f"not a number: {s!r}") from None


@dataclass(frozen=True)
class Gamma:
    """Conductivity preset: uniform(g), linear(a, b, c) or bump(a, b)."""

    kind: str
    params: tuple

    ARITY = {"uniform": 1, "linear": 3, "bump": 2}

    def __post_init__(self):
        if self.kind not in self.ARITY:
            raise InvalidConfig(f"unknown conductivity preset {self.kind!r}")
        if len(self.params) != self.ARITY[self.kind]:
            raise InvalidConfig(f"{self.kind} takes {self.ARITY[self.kind]} parameters")

    @classmethod
    def parse(cls, text: str) -> "Gamma":
        kind, _, rest = text.strip().partition(":")
        params = tuple(_number(p) for p in rest.split(",")) if rest else ()
        return cls(kind.strip(), params)

    def __str__(self) -> str:
        return f"{self.kind}:" + ",".join(format_number(p) for p in self.params)

    @property
    def rational(self) -> bool:
        return all(isinstance(p, (int, Fraction)) for p in self.params)

    def __call__(self, x, y):
        p = self.params
        if self.kind == "uniform":
            return p[0] + 0 * x
        if self.kind == "linear":
            return p[0] + p[1] * x + p[2] * y
        return p[0] + p[1] * x * x * y * y


@dataclass(frozen=True)
class ContinuumConfig:
    height: Fraction
    length: Fraction
    shift: Fraction
    gamma: Gamma
    levels: tuple

    def __post_init__(self):
        for name in ("height", "length", "shift"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        object.__setattr__(self, "levels", tuple(Fraction(h) for h in self.levels))
        if self.height <= 0 or self.length <= 0 or self.shift < 0:
            raise InvalidConfig("need height > 0, length > 0, shift >= 0")
        if not self.levels:
            raise InvalidConfig("at least one level is required")
        if list(self.levels) != sorted(self.levels, reverse=True) or len(set(self.levels)) != len(self.levels):
            raise InvalidConfig("levels must be distinct and ordered coarse to fine")
        for h in self.levels:
            if h <= 0:
                raise InvalidConfig("cell sizes must be positive")
            for name in ("height", "length", "shift"):
                if (getattr(self, name) / h).denominator != 1:
                    raise InvalidConfig(f"cell size {h} does not divide {name} {getattr(self, name)}")
            if self.shift > self.length - h:
                raise InvalidConfig(f"shift {self.shift} leaves no room to continue at h={h}")

    def dims(self, level: int) -> tuple[int, int, int]:
        """(R, C, s) at one level."""
        h = self.levels[level]
        return (int(self.height / h) + 1, int(self.length / h) + 1, int(self.shift / h))

    def to_document(self, doc: Document | None = None) -> Document:
        doc = doc if doc is not None else Document("continuum study config")
        sec = doc.section("config")
        sec.set("height", self.height).set("length", self.length).set("shift", self.shift)
        sec.set("gamma", str(self.gamma))
        sec.set("levels", list(self.levels))
        return doc

    @classmethod
    def from_text(cls, text: str) -> "ContinuumConfig":
        """Parse ``key = value`` lines: height, length, shift, gamma, levels."""
        doc = Document.parse(text)
        fields: dict[str, str] = {}
        for sec in doc.sections:
            fields.update(sec.fields)
        try:
            levels = [parse_fraction(t) for t in fields["levels"].replace(",", " ").split()]
            return cls(parse_fraction(fields["height"]), parse_fraction(fields["length"]),
                       parse_fraction(fields["shift"]), Gamma.parse(fields["gamma"]), tuple(levels))
        except KeyError as exc:
            raise InvalidConfig(f"config is missing {exc.args[0]!r}") from None


def discretize(cfg: ContinuumConfig, level: int, exact: bool | None = None) -> StripNetwork:
    """Finite-volume lattice at one level; exact whenever gamma is rational."""
    h = cfg.levels[level]
    R, C, _ = cfg.dims(level)
    exact = cfg.gamma.rational if exact is None else exact
    if exact and not cfg.gamma.rational:
        raise InvalidConfig("exact discretization needs rational gamma parameters")

    def sample(x, y):
        g = cfg.gamma(x, y)
        if not g > 0:
            raise InvalidConfig(f"gamma({format_number(x)}, {format_number(y)}) = {format_number(g)} is not positive")
        return g if exact else float(g)

    horiz = tuple(tuple(sample((c - Fraction(1, 2)) * h, (r - 1) * h) for c in range(1, C))
                  for r in range(1, R + 1))
    vert = tuple(tuple(sample((c - 1) * h, (r - Fraction(1, 2)) * h) for c in range(1, C + 1))
                 for r in range(1, R))
    return StripNetwork(R, C, horiz, vert, exact)


@dataclass(frozen=True)
class LevelResult:
    h: Fraction
    rows: int
    cols: int
    shift: int
    eigenvalues: list
    min_real: float
    max_imag: float
    spectral_radius: float
    positive: bool

    @property
    def chart_dim(self) -> int:
        return 2 * self.rows - 1


def level_verdict(eigs: Sequence[complex]) -> tuple[float, float, float, bool]:
    rho = max((abs(z) for z in eigs), default=0.0)
    min_real = min((z.real for z in eigs), default=float("inf"))
    max_imag = max((abs(z.imag) for z in eigs), default=0.0)
    return min_real, max_imag, rho, (max_imag <= IMAG_REL_TOL * rho and min_real > MIN_EIGENVALUE)


@dataclass(frozen=True)
class RefinementStudy:
    config: ContinuumConfig
    levels: list
    exact_certificate: SpectrumReport | None = None
    backend_rel_deviation: float | None = None
    notes: tuple = field(default=(EVIDENCE_NOTE,))

    @property
    def positive(self) -> bool:
        return all(lv.positive for lv in self.levels)

    @property
    def exact_consistent(self) -> bool | None:
        if self.backend_rel_deviation is None:
            return None
        return self.backend_rel_deviation <= BACKEND_REL_TOL

    def csv_rows(self) -> list[list]:
        return [[i, format_number(lv.h), lv.rows, lv.shift, repr(lv.min_real), repr(lv.max_imag),
                 "POSITIVE" if lv.positive else "NOT_POSITIVE"]
                for i, lv in enumerate(self.levels)]

    def to_document(self) -> Document:
        doc = Document("continuation spectrum refinement study")
        self.config.to_document(doc)
        sec = doc.section("study")
        sec.set("verdict", "POSITIVE" if self.positive else "NOT_POSITIVE")
        sec.set("levels", len(self.levels))
        if self.exact_certificate is not None:
            sec.set("coarsest_exact_verdict", self.exact_certificate.verdict)
            sec.set("backend_rel_deviation", self.backend_rel_deviation)
        else:
            sec.set("coarsest_exact_verdict", "not run (irrational gamma)")
        for i, note in enumerate(self.notes):
            sec.set(f"note{i + 1}", note)
        for i, lv in enumerate(self.levels):
            ls = doc.section(f"level {i}")
            ls.set("h", lv.h).set("rows", lv.rows).set("cols", lv.cols).set("shift", lv.shift)
            ls.set("chart_dim", lv.chart_dim)
            ls.set("min_real", lv.min_real).set("max_imag", lv.max_imag)
            ls.set("spectral_radius", lv.spectral_radius)
            ls.set("verdict", "POSITIVE" if lv.positive else "NOT_POSITIVE")
            ls.table("eigenvalues", [[z] for z in lv.eigenvalues])
        if self.exact_certificate is not None:
            self.exact_certificate.to_document(doc)
        return doc


def _run_level(cfg: ContinuumConfig, i: int) -> LevelResult:
    R, C, s = cfg.dims(i)
    net = discretize(cfg, i, exact=False)
    H = modified_h(net, s)
    if len(H.matrix) != 2 * R - 1 or len(H.matrix) != 2 * int(cfg.height / cfg.levels[i]) + 1:
        raise NumericFailure(f"level {i}: chart dimension bookkeeping is off")
    try:
        eigs = float_eigen(H.matrix)
    except NumericFailure as exc:
        raise NumericFailure(f"level {i} (h={cfg.levels[i]}): {exc}") from exc
    min_real, max_imag, rho, ok = level_verdict(eigs)
    return LevelResult(cfg.levels[i], R, C, s, eigs, min_real, max_imag, rho, ok)


def refinement_study(cfg: ContinuumConfig) -> RefinementStudy:
    results = [_run_level(cfg, i) for i in range(len(cfg.levels))]
    cert = None
    deviation = None
    if cfg.gamma.rational:
        R, C, s = cfg.dims(0)
        cert = certify_spectrum(modified_h(discretize(cfg, 0, exact=True), s).matrix)
        mids = [float((lo + hi) / 2) for lo, hi in cert.isolating_intervals]
        if mids and len(mids) == len(results[0].eigenvalues):
            deviation = max(min(abs(z - m) / max(abs(m), 1e-300) for m in mids) for z in results[0].eigenvalues)
        else:
            deviation = float("inf")
    return RefinementStudy(cfg, results, cert, deviation)
