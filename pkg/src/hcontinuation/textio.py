"""Plain-text documents for networks, fields and reports.

Layout::

    # comment
    [section]
    key = value
    table:
      1 1/2 3
      4 5 6

A ``key:`` line with nothing after the colon opens a table whose rows are
the following indented lines.  Numbers are written with ``format_number``
so exact values appear as ``p/q`` (or ``p`` when integral) and floats use
``repr`` for a lossless round trip.
"""

from __future__ import annotations

from fractions import Fraction
from math import copysign
from typing import Iterable, Sequence

from .errors import InvalidConfig


def format_number(x) -> str:
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    if isinstance(x, complex):
        return _format_complex(x)
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _format_complex(z: complex) -> str:
    sign = "-" if copysign(1.0, z.imag) < 0 else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}j"


def parse_fraction(s: str) -> Fraction:
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidConfig(f"not a rational number: {s!r}") from exc


def parse_float(s: str) -> float:
    try:
        return float(s)
    except ValueError as exc:
        raise InvalidConfig(f"not a number: {s!r}") from exc


def parse_complex(s: str) -> complex:
    try:
        return complex(s.strip())
    except ValueError as exc:
        raise InvalidConfig(f"not a complex number: {s!r}") from exc


class Section:
    """One ``[name]`` block: ordered scalar fields plus tables."""

    def __init__(self, name: str):
        self.name = name
        self.fields: dict[str, str] = {}
        self.tables: dict[str, list[list[str]]] = {}
        self._order: list[str] = []

    def set(self, key: str, value) -> "Section":
        if isinstance(value, (list, tuple)):
            value = " ".join(format_number(v) for v in value)
        else:
            value = format_number(value)
        if key not in self.fields and key not in self.tables:
            self._order.append(key)
        self.fields[key] = value
        return self

    def table(self, key: str, rows: Iterable[Sequence]) -> "Section":
        if key not in self.fields and key not in self.tables:
            self._order.append(key)
        self.tables[key] = [[format_number(x) for x in row] for row in rows]
        return self

    def get(self, key: str) -> str:
        try:
            return self.fields[key]
        except KeyError:
            raise InvalidConfig(f"[{self.name}] missing field {key!r}") from None

    def get_table(self, key: str) -> list[list[str]]:
        try:
            return self.tables[key]
        except KeyError:
            raise InvalidConfig(f"[{self.name}] missing table {key!r}") from None

    def render(self) -> list[str]:
        out = [f"[{self.name}]"]
        for key in self._order:
            if key in self.tables:
                out.append(f"{key}:")
                rows = self.tables[key]
                if not rows:
                    out.append("  -")
                for row in rows:
                    out.append("  " + " ".join(row))
            else:
                out.append(f"{key} = {self.fields[key]}")
        return out


class Document:
    def __init__(self, title: str | None = None):
        self.title = title
        self.sections: list[Section] = []

    def section(self, name: str) -> Section:
        sec = Section(name)
        self.sections.append(sec)
        return sec

    def __getitem__(self, name: str) -> Section:
        for sec in self.sections:
            if sec.name == name:
                return sec
        raise InvalidConfig(f"missing section [{name}]")

    def find_all(self, name: str) -> list[Section]:
        return [s for s in self.sections if s.name == name]

    def render(self) -> str:
        lines = []
        if self.title:
            lines.append(f"# {self.title}")
        for i, sec in enumerate(self.sections):
            if i or lines:
                lines.append("")
            lines.extend(sec.render())
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "Document":
        doc = cls()
        sec: Section | None = None
        open_table: str | None = None
        for lineno, raw in enumerate(text.splitlines(), 1):
            stripped = raw.strip()
            if not stripped or stripped.startswith("#"):
                if stripped.startswith("#") and doc.title is None and not doc.sections:
                    doc.title = stripped[1:].strip()
                continue
            if raw[:1] in (" ", "\t") and open_table is not None:
                if stripped != "-":
                    sec.tables[open_table].append(stripped.split())
                continue
            open_table = None
            if stripped.startswith("[") and stripped.endswith("]"):
                sec = doc.section(stripped[1:-1].strip())
                continue
            if sec is None:
                sec = doc.section("")
            if "=" in stripped:
                key, _, value = stripped.partition("=")
                key = key.strip()
                sec.fields[key] = value.strip()
                sec._order.append(key)
            elif stripped.endswith(":"):
                key = stripped[:-1].strip()
                sec.tables[key] = []
                sec._order.append(key)
                open_table = key
            else:
                raise InvalidConfig(f"line {lineno}: cannot parse {raw!r}")
        return doc
