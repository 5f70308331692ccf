import math

import numpy as np
import pytest
from scipy import optimize

from src.eavesdrop_features.objective import (
    limit_phi_high_budget,
    limit_phi_low_budget,
    optimize_one_way,
    optimize_two_way,
    phi_jamming,
    phi_passive,
    phi_two_channel,
    q_threshold,
    regime_thresholds,
)
from src.eavesdrop_features.scenario import from_db, swap_direction
from src.exceptions import DomainError, PreconditionError
from src.models import Regime, Scheme


def test_one_way_profile_peaks_at_five(one_way_params):
    outcome = optimize_one_way(one_way_params)
    assert outcome.chosen_scheme == Scheme.JAMMING
    assert outcome.n_star == 5
    assert outcome.n_jam_best == 5
    phis = [evaluation.phi for evaluation in outcome.profile]
    peak = phis.index(max(phis))
    assert peak == 4
    assert all(b > a for a, b in zip(phis[: peak + 1], phis[1 : peak + 1]))
    assert all(b < a for a, b in zip(phis[peak:], phis[peak + 1 :]))
    assert outcome.phi_star > outcome.phi_passive


def test_profile_trade_off(one_way_params):
    profile = optimize_one_way(one_way_params).profile
    rhos = [evaluation.rho for evaluation in profile]
    non_outage = [evaluation.non_outage_monitor for evaluation in profile]
    assert all(b > a for a, b in zip(rhos, rhos[1:]))
    assert all(b > a for a, b in zip(non_outage, non_outage[1:]))


def _jamming_margin(params, q):
    """最良のジャミング本数の φ と受動盗聴の φ の差"""
    budgeted = params.with_budget(q)
    best = max(phi_jamming(budgeted, n).phi for n in range(1, budgeted.n_channels))
    return best - phi_passive(budgeted).phi


def _crossover_budget(params):
    log_q = optimize.brentq(
        lambda t: _jamming_margin(params, math.exp(t)), math.log(1e-3), math.log(from_db(4.0)), xtol=1e-12
    )
    return math.exp(log_q)


def test_four_db_is_a_near_tie(one_way_params):
    params = one_way_params.with_budget(from_db(4.0))
    assert abs(phi_jamming(params, 1).phi - phi_passive(params).phi) < 2e-4
    outcome = optimize_one_way(params)
    assert outcome.n_jam_best == 1
    assert abs(outcome.phi_star - outcome.phi_passive) < 2e-4


def test_passive_below_crossover_budget(one_way_params):
    crossover = _crossover_budget(one_way_params)
    assert 1e-3 < crossover <= from_db(4.0)
    for q in (crossover * 0.99, crossover / 2.0, from_db(-10.0), 1e-3):
        outcome = optimize_one_way(one_way_params.with_budget(q))
        assert outcome.chosen_scheme == Scheme.PASSIVE
        assert outcome.n_star is None
        assert outcome.phi_star == outcome.phi_passive
    above = optimize_one_way(one_way_params.with_budget(crossover * 1.01))
    assert above.chosen_scheme == Scheme.JAMMING


def test_high_budget_jams_all_but_one(one_way_params):
    outcome = optimize_one_way(one_way_params.with_budget(from_db(40.0)))
    assert outcome.chosen_scheme == Scheme.JAMMING
    assert outcome.n_star == 7


def test_passive_evaluation(one_way_params):
    passive = phi_passive(one_way_params)
    assert passive.n == 0
    assert passive.rho == 0.0
    assert passive.phi == pytest.approx(passive.non_outage_monitor)


def test_two_way_balances_directions(two_way_params):
    outcome = optimize_two_way(two_way_params)
    assert outcome.one_way_ab.n_jam_best == 2
    assert outcome.one_way_ba.n_jam_best == 6
    assert outcome.chosen_scheme == Scheme.JAMMING
    assert outcome.n_star == 5
    best = min(outcome.profile_ab[4].phi, outcome.profile_ba[4].phi)
    assert outcome.phi_minmax == pytest.approx(best)
    for ab, ba in zip(outcome.profile_ab, outcome.profile_ba):
        assert min(ab.phi, ba.phi) <= outcome.phi_minmax


def test_two_way_is_symmetric_under_swap(two_way_params):
    forward = optimize_two_way(two_way_params)
    backward = optimize_two_way(swap_direction(two_way_params))
    assert forward.n_star == backward.n_star
    assert forward.phi_minmax == pytest.approx(backward.phi_minmax, rel=1e-14)


def test_two_way_with_identical_directions(one_way_params):
    params = one_way_params.with_lambdas(1.0, 3.0, 3.0)
    assert optimize_two_way(params).n_star == optimize_one_way(params).n_star


def test_two_way_weights(two_way_params):
    weighted = optimize_two_way(two_way_params, weight_ab=1e6)
    assert weighted.n_star == weighted.one_way_ba.n_star
    assert weighted.weight_ab == 1e6
    with pytest.raises(DomainError):
        optimize_two_way(two_way_params, weight_ab=0.0)
    with pytest.raises(DomainError):
        optimize_two_way(two_way_params, weight_ba=-1.0)


def test_two_way_regimes(two_way_params):
    low = optimize_two_way(two_way_params.with_budget(1e-6), classify_regime=True)
    assert low.regime == Regime.LOW_BUDGET
    assert low.n_star is None
    high = optimize_two_way(two_way_params.with_budget(1e8), classify_regime=True)
    assert high.regime == Regime.HIGH_BUDGET
    assert high.n_star == 7
    assert high.thresholds.q_lower <= high.thresholds.q_upper
    assert optimize_two_way(two_way_params).regime is None


def test_regime_thresholds_are_crossings(two_way_params):
    thresholds = regime_thresholds(two_way_params)
    assert thresholds.q_lower == min(thresholds.q_lower_ab, thresholds.q_lower_ba)
    assert thresholds.q_upper == max(thresholds.q_upper_ab, thresholds.q_upper_ba)
    at_lower = two_way_params.with_budget(thresholds.q_lower_ab)
    assert abs(phi_jamming(at_lower, 1).phi - phi_jamming(at_lower, 2).phi) <= 1e-9
    at_upper = swap_direction(two_way_params).with_budget(thresholds.q_upper_ba)
    assert abs(phi_jamming(at_upper, 6).phi - phi_jamming(at_upper, 7).phi) <= 1e-9


def test_q_threshold_matches_grid_scan(two_channel_params):
    threshold = q_threshold(two_channel_params)
    passive = phi_passive(two_channel_params).phi
    assert phi_two_channel(two_channel_params, threshold).phi == pytest.approx(passive, abs=1e-9)

    grid = np.geomspace(threshold / 100.0, threshold * 100.0, 200)
    gaps = [phi_two_channel(two_channel_params, float(q)).phi - passive for q in grid]
    crossing = next(i for i, gap in enumerate(gaps) if gap > 0)
    assert grid[crossing - 1] <= threshold <= grid[crossing]
    assert all(gap > 0 for gap in gaps[crossing:])


def test_two_channel_matches_general_evaluation(two_channel_params):
    closed = phi_two_channel(two_channel_params, 100.0)
    general = phi_jamming(two_channel_params, 1)
    assert closed.phi == pytest.approx(general.phi, rel=1e-8)
    assert closed.rate == pytest.approx(general.rate, rel=1e-12)


def test_phi_increases_with_budget(one_way_params):
    values = [phi_jamming(one_way_params.with_budget(q), 3).phi for q in (1.0, 10.0, 100.0, 1e3, 1e4)]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_budget_limits(one_way_params):
    low = one_way_params.with_budget(1e-9)
    high = one_way_params.with_budget(1e12)
    for n in range(1, 8):
        assert phi_jamming(low, n).phi == pytest.approx(limit_phi_low_budget(one_way_params, n), abs=1e-8)
        assert phi_jamming(high, n).phi == pytest.approx(limit_phi_high_budget(one_way_params, n), abs=1e-6)
        assert phi_jamming(high, n).rho <= 1e-6
    assert optimize_one_way(low).n_jam_best == 1
    assert optimize_one_way(high).n_star == 7
    assert limit_phi_low_budget(one_way_params, 0) == pytest.approx(phi_passive(one_way_params).phi)


def test_two_channel_monotone_in_budget(two_channel_params):
    evaluations = [phi_jamming(two_channel_params.with_budget(float(q)), 1) for q in np.geomspace(1e-2, 1e4, 30)]
    rhos = [evaluation.rho for evaluation in evaluations]
    rates = [evaluation.rate for evaluation in evaluations]
    phis = [evaluation.phi for evaluation in evaluations]
    assert all(b < a for a, b in zip(rhos, rhos[1:]))
    assert all(b < a for a, b in zip(rates, rates[1:]))
    assert all(b > a for a, b in zip(phis, phis[1:]))


@pytest.mark.parametrize("n", range(1, 8))
def test_unused_budget_is_dominated(one_way_params, n):
    full = phi_jamming(one_way_params, n).phi
    for q in (0.1, 1.0, 10.0, 50.0, 99.0):
        assert phi_jamming(one_way_params.with_budget(q), n).phi <= full


def test_objective_preconditions(one_way_params, two_channel_params):
    with pytest.raises(PreconditionError):
        q_threshold(one_way_params)
    with pytest.raises(PreconditionError):
        regime_thresholds(two_channel_params)
    with pytest.raises(PreconditionError):
        phi_two_channel(one_way_params, 10.0)
    for n in (0, 8):
        with pytest.raises(DomainError):
            phi_jamming(one_way_params, n)
