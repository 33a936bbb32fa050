from fractions import Fraction

import pytest

from hcontinuation import linalg
from hcontinuation.continuum import (EVIDENCE_NOTE, ContinuumConfig, Gamma, discretize,
                                     level_verdict, refinement_study)
from hcontinuation.errors import InvalidConfig
from hcontinuation.network import build_uniform
from hcontinuation.transfer import modified_h

F = Fraction


def cfg(gamma="uniform:1", height=1, length=4, shift=F(1, 2), levels=(F(1, 2), F(1, 4))):
    return ContinuumConfig(height, length, shift, Gamma.parse(gamma), tuple(levels))


def test_gamma_presets():
    assert Gamma.parse("linear:1,1,0")(F(1, 4), 0) == F(5, 4)
    assert Gamma.parse("bump:1,2")(F(1, 2), 1) == F(3, 2)
    assert Gamma.parse("uniform:2.5") == Gamma("uniform", (F(5, 2),))  # decimals are exact
    assert Gamma("uniform", (2.5,)).rational is False
    assert str(Gamma.parse("linear:1,1/2,0")) == "linear:1,1/2,0"
    with pytest.raises(InvalidConfig):
        Gamma.parse("cubic:1")
    with pytest.raises(InvalidConfig):
        Gamma.parse("linear:1,2")


def test_uniform_discretizes_to_uniform():
    c = cfg()
    assert discretize(c, 1) == build_uniform(5, 17)


def test_linear_midpoint_sample():
    c = cfg("linear:1,1,0", length=1, shift=F(1, 2), levels=(F(1, 2),))
    net = discretize(c, 0)
    assert net.gamma_h(1, 1) == F(5, 4)
    assert net.gamma_v(1, 1) == 1
    assert net.gamma_v(2, 1) == F(3, 2)


def test_bump_nonpositive_is_rejected():
    c = cfg("bump:1,-2", length=1, shift=F(1, 2), levels=(F(1, 2),))
    with pytest.raises(InvalidConfig):
        discretize(c, 0)


def test_config_validation():
    with pytest.raises(InvalidConfig):
        cfg(levels=(F(1, 4), F(1, 2)))
    with pytest.raises(InvalidConfig):
        cfg(levels=(F(1, 3),))
    with pytest.raises(InvalidConfig):
        cfg(shift=F(1, 3))
    with pytest.raises(InvalidConfig):
        cfg(height=0)
    with pytest.raises(InvalidConfig):
        cfg(levels=())


def test_config_text_round_trip():
    c = cfg("linear:1,1,1")
    assert ContinuumConfig.from_text(c.to_document().render()) == c
    text = "height = 1\nlength = 4\nshift = 1/2\ngamma = bump:1,1\nlevels = 1/2 1/4\n"
    assert ContinuumConfig.from_text(text) == cfg("bump:1,1")
    with pytest.raises(InvalidConfig):
        ContinuumConfig.from_text("height = 1\n")


def test_zero_shift_gives_identity():
    study = refinement_study(cfg(shift=0))
    for lv in study.levels:
        assert all(z == 1 for z in lv.eigenvalues)
    assert study.positive


def test_bookkeeping():
    study = refinement_study(cfg(levels=(F(1, 2), F(1, 4), F(1, 8))))
    for lv in study.levels:
        assert lv.rows == 1 / lv.h + 1
        assert lv.chart_dim == 2 / lv.h + 1 == len(lv.eigenvalues)
        assert lv.shift == F(1, 2) / lv.h


def test_uniform_independent_of_g():
    a, b = cfg("uniform:1"), cfg("uniform:7/3")
    for i in range(2):
        s = a.dims(i)[2]
        assert modified_h(discretize(a, i), s).matrix == modified_h(discretize(b, i), s).matrix


def test_uniform_study_certified():
    study = refinement_study(cfg())
    assert study.positive
    assert study.exact_certificate.all_positive
    assert study.exact_consistent
    assert EVIDENCE_NOTE in study.to_document().render()


def test_irrational_gamma_skips_exact():
    c = ContinuumConfig(1, 4, F(1, 2), Gamma("linear", (1.5, 0.25, 2 ** -0.5)), (F(1, 2), F(1, 4)))
    study = refinement_study(c)
    assert study.exact_certificate is None and study.exact_consistent is None
    assert study.positive


def test_level_verdict():
    assert level_verdict([1.0, 2.0])[3]
    assert not level_verdict([complex(1, 1e-3), complex(1, -1e-3)])[3]
    assert not level_verdict([1e-12, 1.0])[3]
    assert not level_verdict([-1.0, 2.0])[3]


def test_csv_rows():
    rows = refinement_study(cfg()).csv_rows()
    assert [r[0] for r in rows] == [0, 1]
    assert rows[0][1] == "1/2" and rows[0][2] == 3 and rows[0][3] == 1
    assert rows[0][-1] == "POSITIVE"
