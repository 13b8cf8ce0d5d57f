# SPDX-License-Identifier: Apache-2.0

"""The tail bound and the selector constants."""

from fractions import Fraction

import pytest

from threshold_lab import bound
from threshold_lab import rational
from threshold_lab.configt import SelectorConfig
from threshold_lab.errors import DegenerateInput

def test_geometric_sum():
    assert bound.geometric_sum(Fraction(1, 2), 3) == Fraction(7, 8)
    assert bound.geometric_sum(1, 4) == 4
    assert bound.geometric_sum(3, 0) == 0
    assert bound.geometric_sum(2, 3) == 14

def test_config_defaults():
    cfg = SelectorConfig(1, Fraction(1, 100), 20)
    assert cfg.C == (2 * rational.E_UPPER) ** 2
    assert cfg.J == 10 * cfg.C
    assert cfg.real_m == 5 * cfg.C * Fraction(1, 100) * 20
    assert rational.ceil(cfg.real_m) == 30
    assert cfg.m == 20 and cfg.capped()
    assert cfg.c == Fraction(1, 2)
    assert SelectorConfig(3, Fraction(1, 2), 4).c == Fraction(5, 6)

def test_config_caps_m():
    cfg = SelectorConfig(2, Fraction(1, 2), 6)
    assert cfg.m == 6 and cfg.capped()
    with pytest.raises(ValueError):
        SelectorConfig(1, Fraction(1, 2), 6, m=7)
    with pytest.raises(ValueError):
        SelectorConfig(0, Fraction(1, 2), 6)

def test_small_example():
    cfg = SelectorConfig(1, Fraction(1, 1000), 20, m=10)
    value, vacuous = bound.bmm_bound(cfg)
    assert float(cfg.C) == pytest.approx(29.5562, abs=1e-4)
    assert float(cfg.C * 20 * cfg.p / 10) == pytest.approx(0.0591, abs=1e-4)
    assert float(value) == pytest.approx(0.1256, abs=1e-3)
    assert not vacuous

def test_vacuous():
    cfg = SelectorConfig(1, Fraction(1, 100), 20, m=10)
    value, vacuous = bound.bmm_bound(cfg)
    assert vacuous and value > 2

@pytest.mark.parametrize('r', [1, 2, 3])
@pytest.mark.parametrize('p', [Fraction(1, 10), Fraction(1, 1000), Fraction(1, 10**6)])
def test_real_sample_size_envelope(r, p):
    for n in range(1, 101):
        cfg = SelectorConfig(r, p, n)
        value, vacuous = bound.bmm_bound(cfg, cfg.real_m)
        assert value == (1 - Fraction(1, 5**n)) / 2
        assert value < Fraction(1, 2) and not vacuous

def test_sample_size_must_be_positive():
    cfg = SelectorConfig(1, Fraction(1, 2), 4, m=0)
    with pytest.raises(DegenerateInput):
        bound.bmm_bound(cfg)
    with pytest.raises(DegenerateInput):
        bound.bmm_bound(SelectorConfig(1, Fraction(1, 2), 4), -1)
