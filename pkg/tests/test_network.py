from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hcontinuation.errors import InvalidArgument, MissingData
from hcontinuation.network import (PotentialField, StripNetwork, build_random, build_uniform,
                                   interior_columns, max_defect, residual)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=30)


def test_uniform_edge_counts():
    net = build_uniform(2, 3, 1)
    assert sum(len(t) for t in net.horiz) == 4
    assert sum(len(t) for t in net.vert) == 3
    assert net.num_edges == 7
    assert {g for t in net.horiz + net.vert for g in t} == {1}
    assert build_uniform(3, 4, 1).num_edges == 9 + 8


@pytest.mark.parametrize("R, C, g", [(2, 2, 0), (2, 2, -1), (1, 3, 1), (3, 1, 1)])
def test_uniform_rejects_bad_input(R, C, g):
    with pytest.raises(InvalidArgument):
        build_uniform(R, C, g)


def test_random_is_deterministic():
    a = build_random(3, 5, 42, Fraction(1, 8), 8)
    b = build_random(3, 5, 42, Fraction(1, 8), 8)
    c = build_random(3, 5, 43, Fraction(1, 8), 8)
    assert a == b
    assert a != c
    values = [g for t in a.horiz + a.vert for g in t]
    assert all(Fraction(1, 8) <= g <= 8 and g.denominator <= 64 for g in values)


def test_random_rejects_nonpositive_lower_bound():
    with pytest.raises(InvalidArgument):
        build_random(2, 2, 0, -1, 1)


def test_random_float_backend_matches_exact():
    a = build_random(3, 4, 5)
    b = build_random(3, 4, 5, exact=False)
    assert not b.exact
    assert [float(x) for t in a.horiz for x in t] == [x for t in b.horiz for x in t]


def test_network_rejects_zero_conductivity():
    with pytest.raises(InvalidArgument):
        StripNetwork(2, 2, ((1,), (0,)), ((1, 1),))


def test_network_rejects_missing_edges():
    with pytest.raises(InvalidArgument):
        StripNetwork(2, 3, ((1, 1), (1,)), ((1, 1, 1),))


def test_neighbors_and_degrees():
    net = build_uniform(3, 4)
    assert len(net.neighbors((1, 1))) == 2
    assert len(net.neighbors((2, 1))) == 3
    assert len(net.neighbors((2, 2))) == 4
    with pytest.raises(InvalidArgument):
        net.neighbors((5, 1))


def test_residual_examples():
    net = build_uniform(3, 3)
    const = PotentialField.from_function(3, 3, lambda c, r: Fraction(5))
    assert all(residual(net, const, v) == 0 for v in net.vertices())
    lin = PotentialField.from_function(3, 3, lambda c, r: Fraction(c))
    assert residual(net, lin, (2, 2)) == 0
    u = PotentialField(3, 3, {(2, 2): 2, (1, 2): 1, (2, 1): 2, (2, 3): 3, (3, 2): 4})
    assert residual(net, u, (2, 2)) == -2


def test_residual_missing_neighbor():
    net = build_uniform(2, 2)
    with pytest.raises(MissingData):
        residual(net, PotentialField(2, 2, {(1, 1): 0, (2, 1): 1}), (1, 1))


def test_max_defect_examples():
    net = build_uniform(3, 3)
    const = PotentialField.from_function(3, 3, lambda c, r: Fraction(7))
    assert max_defect(net, const, list(net.vertices())) == 0
    bilinear = PotentialField.from_function(3, 3, lambda c, r: Fraction(c * r))
    assert max_defect(net, bilinear, [(2, 2)]) == 0
    assert interior_columns(net) == [(2, 1), (2, 2), (2, 3)]


@given(st.integers(0, 10**6), st.lists(rationals, min_size=12, max_size=12),
       st.lists(rationals, min_size=12, max_size=12), rationals)
def test_residual_is_linear(seed, xs, ys, alpha):
    net = build_random(3, 4, seed)
    u = PotentialField.from_function(3, 4, lambda c, r: xs[(c - 1) * 3 + r - 1])
    w = PotentialField.from_function(3, 4, lambda c, r: ys[(c - 1) * 3 + r - 1])
    for v in net.vertices():
        assert residual(net, u + w, v) == residual(net, u, v) + residual(net, w, v)
        assert residual(net, u.scale(alpha), v) == alpha * residual(net, u, v)


@given(st.integers(0, 10**6), rationals)
def test_constants_are_harmonic(seed, k):
    net = build_random(3, 3, seed)
    u = PotentialField.from_function(3, 3, lambda c, r: k)
    assert all(residual(net, u, v) == 0 for v in net.vertices())


@given(st.integers(0, 10**6), st.fractions(min_value=Fraction(1, 100), max_value=100))
def test_harmonicity_survives_conductivity_scaling(seed, t):
    from hcontinuation.marching import CauchyData, march

    net = build_random(3, 5, seed)
    u = march(net, CauchyData((1, 2, 3), (0, 5, -1)))
    scaled = net.scaled(t)
    assert all(residual(scaled, u, v) == 0 for v in interior_columns(net))


def test_serialization_round_trip():
    net = build_random(3, 5, 11)
    text = net.to_text()
    assert StripNetwork.from_text(text) == net
    assert "/" in text
    fnet = build_random(2, 3, 1, exact=False)
    assert StripNetwork.from_text(fnet.to_text()) == fnet


def test_field_round_trip():
    from hcontinuation.textio import Document

    u = PotentialField.from_function(2, 3, lambda c, r: Fraction(c, r + 2))
    assert PotentialField.from_document(Document.parse(u.to_document().render())) == u


def test_columns_subnetwork():
    net = build_random(2, 5, 3)
    sub = net.columns(2, 4)
    assert sub.cols == 3
    assert sub.gamma_h(1, 1) == net.gamma_h(2, 1)
    assert sub.gamma_v(3, 1) == net.gamma_v(4, 1)
