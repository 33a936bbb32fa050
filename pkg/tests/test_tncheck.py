import itertools
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from hcontinuation import linalg
from hcontinuation.errors import BudgetExceeded, InvalidArgument, WrongBackend
from hcontinuation.network import build_random, build_uniform
from hcontinuation.textio import Document
from hcontinuation.tncheck import (MinorCertificate, all_minors_nonneg, cauchy_binet_check,
                                   is_elementary_nonneg, minor)
from hcontinuation.transfer import StepMatrix, modified_h

F = Fraction
small = st.fractions(min_value=-6, max_value=6, max_denominator=7)
nonneg = st.fractions(min_value=0, max_value=6, max_denominator=7)


def leibniz(M):
    n = len(M)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        p = Fraction(1)
        for i in range(n):
            p *= M[i][perm[i]]
        total += -p if inv % 2 else p
    return total


def brute_min_and_witness(M):
    n = len(M)
    best, witness = None, None
    for k in range(1, n + 1):
        for I in itertools.combinations(range(n), k):
            for J in itertools.combinations(range(n), k):
                v = leibniz([[M[i][j] for j in J] for i in I])
                best = v if best is None or v < best else best
                if witness is None and v < 0:
                    witness = (I, J, v)
    return best, witness


def matrices(n, elems=small):
    return st.lists(st.lists(elems, min_size=n, max_size=n), min_size=n, max_size=n)


def test_examples():
    cert = all_minors_nonneg([[F(1), F(1)], [F(1), F(2)]])
    assert cert.is_tnn and cert.minors_checked == 5 and cert.determinant == 1 and cert.min_minor == 1
    cert = all_minors_nonneg([[F(0), F(1)], [F(1), F(0)]])
    assert not cert.is_tnn and cert.witness == ((0, 1), (0, 1), -1) and cert.min_minor == -1
    W = [[F(x) for x in r] for r in [[1, 1, 0], [1, 3, 1], [0, 1, 1]]]
    cert = all_minors_nonneg(W)
    assert cert.is_tnn and cert.minors_checked == 19 and cert.min_minor == 0 and cert.determinant == 1


@given(st.integers(1, 4).flatmap(matrices))
def test_matches_brute_force(M):
    cert = all_minors_nonneg(M)
    best, witness = brute_min_and_witness(M)
    n = len(M)
    assert cert.minors_checked == comb(2 * n, n) - 1
    assert cert.min_minor == best
    assert cert.witness == witness
    assert cert.determinant == leibniz(M)
    assert cert.is_tnn == (best >= 0)


@given(st.integers(1, 4).flatmap(lambda n: matrices(n, nonneg)), st.data())
def test_positive_diagonal_scaling_keeps_verdict(M, data):
    n = len(M)
    d = [data.draw(st.fractions(min_value=F(1, 9), max_value=9)) for _ in range(n)]
    scaled = [[d[i] * M[i][j] for j in range(n)] for i in range(n)]
    assert all_minors_nonneg(scaled).is_tnn == all_minors_nonneg(M).is_tnn


@given(st.integers(2, 3), st.integers(1, 3), st.integers(0, 10**6))
def test_products_of_steps_are_tnn(R, s, seed):
    H = modified_h(build_random(R, s + 2, seed), s)
    cert = all_minors_nonneg(H.matrix)
    assert cert.is_tnn and cert.determinant > 0


def test_witness_is_a_real_minor():
    H = modified_h(build_uniform(3, 3), 1).matrix
    M = linalg.diag_conjugate(H, (1, 1, -1, 1, 1))
    cert = all_minors_nonneg(M)
    assert not cert.is_tnn
    I, J, v = cert.witness
    assert v < 0 and minor(M, I, J) == v


def test_errors():
    with pytest.raises(WrongBackend):
        all_minors_nonneg([[1.0]])
    with pytest.raises(BudgetExceeded):
        all_minors_nonneg(linalg.identity(11))
    with pytest.raises(InvalidArgument):
        all_minors_nonneg([[F(1), F(2)]])


def test_elementary_step_check():
    assert is_elementary_nonneg(StepMatrix(3, 1, {0: F(1, 2), 1: F(1), 2: F(3)}))
    assert not is_elementary_nonneg(StepMatrix(3, 1, {0: F(-1), 1: F(1), 2: F(1)}))
    assert is_elementary_nonneg([[F(1), 0, 0], [F(2), F(5), F(1)], [0, 0, F(1)]])
    assert not is_elementary_nonneg([[F(1), F(1), 0], [F(1), F(1), F(1)], [0, 0, F(1)]])


def test_certificate_round_trip():
    for M in ([[F(0), F(1)], [F(1), F(0)]], [[F(2), F(1, 3)], [F(1), F(1)]]):
        cert = all_minors_nonneg(M)
        assert MinorCertificate.from_document(Document.parse(cert.to_document().render())) == cert


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(matrices(n), matrices(n))))
def test_cauchy_binet_holds(AB):
    A, B = AB
    assert cauchy_binet_check(A, B, samples=5)


def test_cauchy_binet_shape_error():
    with pytest.raises(InvalidArgument):
        cauchy_binet_check(linalg.identity(2), linalg.identity(3))
