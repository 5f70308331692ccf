import pytest
from pydantic import ValidationError

from src.eavesdrop_features.objective import optimize_two_way, phi_jamming, phi_passive
from src.eavesdrop_features.scenario import (
    check_strategy,
    equal_split_strategy,
    from_db,
    lambdas_from_placement,
    params_with_placement,
    swap_direction,
    to_db,
)
from src.exceptions import DomainError, ScenarioError
from src.models import JammingStrategy, Placement


def test_db_conversion():
    assert from_db(10.0) == pytest.approx(10.0)
    assert from_db(20.0) == pytest.approx(100.0)
    assert from_db(-10.0) == pytest.approx(0.1)
    assert to_db(1000.0) == pytest.approx(30.0)
    assert to_db(from_db(4.0)) == pytest.approx(4.0)


def test_db_conversion_rejects_invalid_values():
    with pytest.raises(DomainError):
        from_db(float("inf"))
    with pytest.raises(DomainError):
        to_db(0.0)


def test_lambdas_from_placement_uses_squared_distances():
    placement = Placement(st_pos=(3.0, 4.5), sr_pos=(7.0, 4.5), monitor_pos=(7.0, 5.0))
    assert lambdas_from_placement(placement) == pytest.approx((16.0, 16.25, 0.25))


def test_coincident_placement_is_rejected():
    with pytest.raises(ValidationError):
        Placement(st_pos=(0.0, 0.0), sr_pos=(1.0, 0.0), monitor_pos=(1.0, 0.0))
    unchecked = Placement.model_construct(st_pos=(0.0, 0.0), sr_pos=(0.0, 0.0), monitor_pos=(1.0, 0.0))
    with pytest.raises(ScenarioError):
        lambdas_from_placement(unchecked)


def test_params_with_placement(one_way_params):
    placement = Placement(st_pos=(1.0, 1.0), sr_pos=(3.0, 1.0), monitor_pos=(2.0, 0.0))
    params = params_with_placement(one_way_params, placement)
    assert (params.lambda_a, params.lambda_b, params.lambda_c) == pytest.approx((4.0, 2.0, 2.0))
    assert params.jam_budget == one_way_params.jam_budget


def test_swap_direction_exchanges_monitor_links(two_way_params):
    swapped = swap_direction(two_way_params)
    assert (swapped.lambda_a, swapped.lambda_b, swapped.lambda_c) == (5.0, 4.0, 1.0)
    assert swapped.jam_budget == two_way_params.jam_budget
    assert swap_direction(swapped) == two_way_params


def test_scenario_params_are_hashable_and_frozen(one_way_params):
    assert hash(one_way_params) == hash(one_way_params.with_budget(100.0))
    with pytest.raises(ValidationError):
        one_way_params.n_channels = 3


def test_scenario_params_validation(one_way_params):
    with pytest.raises(ValidationError):
        one_way_params.with_channels(1)
    with pytest.raises(ValidationError):
        one_way_params.with_budget(-1.0)
    with pytest.raises(ValidationError):
        one_way_params.model_copy().with_lambdas(0.0, 1.0, 1.0)


def test_equal_split_strategy(one_way_params):
    strategy = equal_split_strategy(one_way_params, 4)
    assert strategy.jammed_count == 4
    assert strategy.powers == (25.0, 25.0, 25.0, 25.0)
    assert equal_split_strategy(one_way_params, 0) == JammingStrategy.passive()
    with pytest.raises(DomainError):
        equal_split_strategy(one_way_params, 8)


def test_strategy_length_must_match():
    with pytest.raises(ValidationError):
        JammingStrategy(jammed_count=2, powers=(1.0,))
    with pytest.raises(ValidationError):
        JammingStrategy(jammed_count=1, powers=(-1.0,))


def test_check_strategy(one_way_params):
    check_strategy(one_way_params, JammingStrategy(jammed_count=2, powers=(60.0, 40.0)))
    with pytest.raises(DomainError):
        check_strategy(one_way_params, JammingStrategy(jammed_count=2, powers=(60.0, 41.0)))
    with pytest.raises(DomainError):
        check_strategy(one_way_params, JammingStrategy.equal_split(8, 100.0))
    with pytest.raises(DomainError):
        check_strategy(one_way_params, JammingStrategy.passive(), allow_passive=False)


def test_noise_at_transmitter_is_only_stored(one_way_params):
    noisy = one_way_params.model_copy(update={"noise_st": 100.0})
    assert swap_direction(noisy).noise_st == 100.0
    for n in (0, 3):
        quiet_eval = phi_passive(one_way_params) if n == 0 else phi_jamming(one_way_params, n)
        noisy_eval = phi_passive(noisy) if n == 0 else phi_jamming(noisy, n)
        assert noisy_eval == quiet_eval
    assert optimize_two_way(noisy).n_star == optimize_two_way(one_way_params).n_star
