import math

import pytest
from scipy import special

from src.eavesdrop_features.specfun import (
    e1,
    e1_scaled,
    scaled_exponential_integral,
    upper_gamma_nonpos,
    upper_gamma_nonpos_scaled,
)
from src.exceptions import DomainError

X_VALUES = [1e-10, 1e-4, 0.1, 0.5, 0.999, 1.0, 1.001, 2.0, 7.5, 30.0, 150.0, 600.0]


@pytest.mark.parametrize("x", X_VALUES)
def test_e1_matches_scipy(x):
    assert e1(x) == pytest.approx(special.exp1(x), rel=1e-12)


@pytest.mark.parametrize("x", X_VALUES)
def test_e1_is_minus_ei_of_minus_x(x):
    assert e1(x) == pytest.approx(-special.expi(-x), rel=1e-12)


@pytest.mark.parametrize("x", [1e-6, 0.3, 1.0, 5.0, 50.0, 700.0])
def test_e1_scaled_matches_scipy(x):
    assert e1_scaled(x) == pytest.approx(special.exp1(x) * math.exp(x), rel=1e-12)


def test_e1_scaled_large_argument_asymptotics():
    x = 1e6
    assert e1_scaled(x) == pytest.approx(1.0 / x - 1.0 / x**2, rel=1e-11)


def test_e1_scaled_does_not_overflow_or_underflow():
    value = e1_scaled(1e8)
    assert 0.0 < value < 1e-7


@pytest.mark.parametrize("j", [1, 2, 3, 5, 8, 12])
@pytest.mark.parametrize("x", [1e-3, 0.2, 1.0, 1.5, 4.0, 25.0])
def test_upper_gamma_nonpos_matches_expn(j, x):
    expected = x ** (1 - j) * special.expn(j, x)
    assert upper_gamma_nonpos(j, x) == pytest.approx(expected, rel=1e-11)


@pytest.mark.parametrize("j", [1, 4, 11])
@pytest.mark.parametrize("x", [0.05, 0.9, 3.0, 40.0])
def test_scaled_variants_are_consistent(j, x):
    assert upper_gamma_nonpos_scaled(j, x) == pytest.approx(math.exp(x) * upper_gamma_nonpos(j, x), rel=1e-11)
    assert scaled_exponential_integral(j, x) == pytest.approx(math.exp(x) * special.expn(j, x), rel=1e-11)


@pytest.mark.parametrize("x", [0.01, 0.5, 2.0, 10.0])
def test_order_one_is_e1(x):
    assert upper_gamma_nonpos(1, x) == pytest.approx(e1(x), rel=1e-14)


def test_high_order_uses_quadrature_fallback():
    x = 0.5
    expected = x ** (1 - 70) * special.expn(70, x)
    assert upper_gamma_nonpos(70, x) == pytest.approx(expected, rel=1e-8)


@pytest.mark.parametrize("x", [0.0, -1.0, float("nan")])
def test_nonpositive_argument_is_rejected(x):
    with pytest.raises(DomainError):
        e1(x)
    with pytest.raises(DomainError):
        e1_scaled(x)
    with pytest.raises(DomainError):
        upper_gamma_nonpos(2, x)


def test_order_below_one_is_rejected():
    with pytest.raises(DomainError):
        upper_gamma_nonpos(0, 1.0)
