from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hcontinuation.errors import InvalidConfig
from hcontinuation.textio import (Document, format_number, parse_complex, parse_float,
                                  parse_fraction)


def test_format_number():
    assert format_number(Fraction(3, 4)) == "3/4"
    assert format_number(5) == "5"
    assert format_number(0.1) == "0.1"
    assert format_number(True) == "true"
    assert format_number(complex(1.5, -2.0)) == "1.5-2.0j"
    assert format_number(complex(1.0, -0.0)) == "1.0-0.0j"
    assert format_number("abc") == "abc"


@given(st.fractions())
def test_fraction_round_trip(x):
    assert parse_fraction(format_number(x)) == x


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_float_round_trip(x):
    assert parse_float(format_number(x)) == x


@given(st.complex_numbers(allow_nan=False, allow_infinity=False))
def test_complex_round_trip(z):
    assert parse_complex(format_number(z)) == z


def test_parse_errors():
    for fn in (parse_fraction, parse_float, parse_complex):
        with pytest.raises(InvalidConfig):
            fn("x/y")
    with pytest.raises(InvalidConfig):
        parse_fraction("1/0")


def test_document_round_trip():
    doc = Document("demo")
    doc.section("a").set("x", Fraction(1, 3)).set("v", [1, 2]).table("t", [[1, Fraction(1, 2)], [3, 4]])
    doc.section("b").table("empty", [])
    text = doc.render()
    assert text == "# demo\n\n[a]\nx = 1/3\nv = 1 2\nt:\n  1 1/2\n  3 4\n\n[b]\nempty:\n  -\n"
    again = Document.parse(text)
    assert again.title == "demo"
    assert again.render() == text
    assert again["a"].get_table("t") == [["1", "1/2"], ["3", "4"]]
    assert again["b"].get_table("empty") == []


def test_document_errors():
    doc = Document.parse("[a]\nx = 1\n")
    with pytest.raises(InvalidConfig):
        doc["b"]
    with pytest.raises(InvalidConfig):
        doc["a"].get("y")
    with pytest.raises(InvalidConfig):
        doc["a"].get_table("x")
    with pytest.raises(InvalidConfig):
        Document.parse("[a]\nnonsense\n")


def test_fields_before_any_section():
    doc = Document.parse("height = 1\n")
    assert doc.sections[0].get("height") == "1"
