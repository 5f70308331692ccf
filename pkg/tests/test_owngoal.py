import pytest

from src.eavesdrop_features.owngoal import rho_multi_sum, rho_quadrature, rho_two_channel
from src.exceptions import DomainError, PreconditionError
from src.models import OwnGoalMethod


@pytest.mark.parametrize("q", [0.01, 1.0, 100.0, 1e4])
def test_two_channel_closed_form_matches_quadrature(two_channel_params, q):
    closed = rho_two_channel(two_channel_params, q)
    numeric = rho_quadrature(two_channel_params.with_budget(q), 1)
    assert closed.method == OwnGoalMethod.CLOSED_FORM_TWO_CHANNEL
    assert numeric.method == OwnGoalMethod.QUADRATURE
    assert closed.rho == pytest.approx(numeric.rho, rel=1e-9, abs=1e-12)


def test_two_channel_closed_form_matches_double_sum(two_channel_params):
    closed = rho_two_channel(two_channel_params, 100.0).rho
    assert rho_multi_sum(two_channel_params, 1).rho == pytest.approx(closed, rel=1e-12)


@pytest.mark.parametrize("n_channels", range(2, 13))
@pytest.mark.parametrize("q", [0.01, 1.0, 100.0, 1e4])
def test_double_sum_matches_quadrature(one_way_params, n_channels, q):
    params = one_way_params.with_channels(n_channels).with_budget(q)
    for n in range(1, n_channels):
        closed = rho_multi_sum(params, n)
        assert closed.method == OwnGoalMethod.CLOSED_FORM_SUM
        assert closed.rho == pytest.approx(rho_quadrature(params, n).rho, rel=1e-8, abs=1e-12)


def test_rho_limits(one_way_params):
    tiny = one_way_params.with_budget(1e-9)
    huge = one_way_params.with_budget(1e12)
    for n in (1, 4, 7):
        assert rho_quadrature(tiny, n).rho == pytest.approx(n / 8, abs=1e-6)
        assert rho_quadrature(huge, n).rho <= 1e-6


def test_two_channel_limits(two_channel_params):
    assert rho_two_channel(two_channel_params, 1e-9).rho == pytest.approx(0.5, abs=1e-6)
    assert rho_two_channel(two_channel_params, 1e12).rho == pytest.approx(0.0, abs=1e-6)


def test_zero_budget_gives_uniform_choice(one_way_params):
    params = one_way_params.with_budget(0.0)
    for n in range(1, 8):
        assert rho_quadrature(params, n).rho == pytest.approx(n / 8, rel=1e-10)


def test_rho_increases_with_jammed_channels(one_way_params):
    values = [rho_quadrature(one_way_params, n).rho for n in range(1, 8)]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_rho_decreases_with_budget(one_way_params):
    values = [rho_quadrature(one_way_params.with_budget(q), 3).rho for q in (0.1, 1.0, 10.0, 100.0, 1e3)]
    assert all(b < a for a, b in zip(values, values[1:]))


def test_own_goal_preconditions(one_way_params, two_channel_params):
    with pytest.raises(PreconditionError):
        rho_two_channel(one_way_params, 100.0)
    with pytest.raises(DomainError):
        rho_two_channel(two_channel_params, 0.0)
    with pytest.raises(PreconditionError):
        rho_multi_sum(one_way_params.with_channels(13), 3)
    with pytest.raises(DomainError):
        rho_multi_sum(one_way_params.with_budget(0.0), 3)
    for n in (0, 8):
        with pytest.raises(DomainError):
            rho_quadrature(one_way_params, n)
        with pytest.raises(DomainError):
            rho_multi_sum(one_way_params, n)
