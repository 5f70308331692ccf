import math

import numpy as np
import pytest

from src.eavesdrop_features.rates import (
    jammed_rate,
    outage_probability,
    passive_rate,
    passive_threshold,
    threshold_from_rate,
)
from src.eavesdrop_features.scenario import equal_split_strategy
from src.exceptions import DomainError
from src.models import JammingStrategy, ScenarioParams


def test_passive_rate_closed_form(one_way_params):
    delta = one_way_params.outage_target
    u = 10.0 * -math.log(1.0 - delta ** (1.0 / 8))
    assert passive_threshold(one_way_params, 8) == pytest.approx(u, rel=1e-14)
    assert passive_rate(one_way_params, 8) == pytest.approx(math.log2(1.0 + u), rel=1e-14)


def test_passive_rate_grows_with_channels(one_way_params):
    rates = [passive_rate(one_way_params, k) for k in range(1, 9)]
    assert all(b > a for a, b in zip(rates, rates[1:]))


def test_passive_rate_meets_outage_target(one_way_params):
    rate = passive_rate(one_way_params, 8)
    achieved = outage_probability(one_way_params, JammingStrategy.passive(), rate)
    assert achieved == pytest.approx(one_way_params.outage_target, rel=1e-12)


def test_passive_rate_rejects_zero_channels(one_way_params):
    with pytest.raises(DomainError):
        passive_rate(one_way_params, 0)


@pytest.mark.parametrize("n", range(1, 8))
def test_jammed_rate_residual_and_bracket(one_way_params, n):
    strategy = equal_split_strategy(one_way_params, n)
    solution = jammed_rate(one_way_params, strategy)
    assert abs(solution.residual) <= 1e-10
    assert passive_rate(one_way_params, 8 - n) - 1e-8 <= solution.rate <= passive_rate(one_way_params, 8) + 1e-8
    achieved = outage_probability(one_way_params, strategy, solution.rate)
    assert achieved == pytest.approx(one_way_params.outage_target, abs=1e-9)


def test_jammed_rate_decreases_with_jammed_channels(one_way_params):
    rates = [jammed_rate(one_way_params, equal_split_strategy(one_way_params, n)).rate for n in range(1, 8)]
    assert all(b < a for a, b in zip(rates, rates[1:]))


def test_jammed_rate_limits(one_way_params):
    n = 3
    low = one_way_params.with_budget(1e-9)
    high = one_way_params.with_budget(1e12)
    assert jammed_rate(low, equal_split_strategy(low, n)).rate == pytest.approx(
        passive_rate(one_way_params, 8), abs=1e-6
    )
    assert jammed_rate(high, equal_split_strategy(high, n)).rate == pytest.approx(
        passive_rate(one_way_params, 8 - n), abs=1e-6
    )


def test_jammed_rate_for_passive_strategy(one_way_params):
    solution = jammed_rate(one_way_params, JammingStrategy.passive())
    assert solution.rate == pytest.approx(passive_rate(one_way_params, 8), rel=1e-14)
    assert solution.iterations == 0


def test_jammed_rate_with_unequal_powers(one_way_params):
    strategy = JammingStrategy(jammed_count=2, powers=(90.0, 10.0))
    solution = jammed_rate(one_way_params, strategy)
    assert abs(solution.residual) <= 1e-10
    assert threshold_from_rate(solution.rate) > 0


def test_jammed_rate_rejects_invalid_strategy(one_way_params):
    with pytest.raises(DomainError):
        jammed_rate(one_way_params, JammingStrategy.equal_split(8, 100.0))
    with pytest.raises(DomainError):
        jammed_rate(one_way_params, JammingStrategy(jammed_count=1, powers=(200.0,)))


def test_jammed_rate_on_random_scenarios():
    rng = np.random.default_rng(20170601)
    for _ in range(1000):
        n_channels = int(rng.integers(2, 13))
        params = ScenarioParams(
            n_channels=n_channels,
            lambda_a=float(10.0 ** rng.uniform(-0.7, 0.7)),
            lambda_b=float(10.0 ** rng.uniform(-0.7, 0.7)),
            lambda_c=float(10.0 ** rng.uniform(-0.7, 0.7)),
            tx_power=float(10.0 ** rng.uniform(0.0, 2.0)),
            jam_budget=float(10.0 ** rng.uniform(-1.0, 4.0)),
            noise_sr=1.0,
            noise_monitor=1.0,
            outage_target=float(rng.uniform(0.01, 0.2)),
        )
        n = int(rng.integers(1, n_channels))
        strategy = equal_split_strategy(params, n)
        solution = jammed_rate(params, strategy)
        achieved = outage_probability(params, strategy, solution.rate)
        assert abs(achieved - params.outage_target) <= 1e-10
        assert abs(solution.residual) <= 1e-10
        assert passive_rate(params, n_channels - n) - 1e-9 <= solution.rate <= passive_rate(params, n_channels) + 1e-9
