"""
目的関数モジュール

非アウテージ盗聴確率 φ を受動・ジャミングの両方式について評価し、
片方向・双方向の最適なジャミング本数を選択します。
予算の閾値（N = 2 の方式切替点、N ≥ 3 の領域境界）も求めます。
"""

import math
import logging
from functools import lru_cache
from typing import Callable, Optional, Tuple

from scipy import optimize

from ..exceptions import DomainError, NumericalError, PreconditionError
from ..models import (
    LinkEvaluation,
    OptimizationOutcome,
    Regime,
    RegimeThresholds,
    ScenarioParams,
    Scheme,
    TwoWayOutcome,
)
from .owngoal import rho_quadrature, rho_two_channel
from .rates import jammed_rate, passive_rate, threshold_from_rate
from .scenario import equal_split_strategy, swap_direction

# ロガーの設定
logger = logging.getLogger(__name__)

# 予算探索の範囲（送信電力に対する倍率）
BUDGET_SEARCH_MIN_RATIO = 1e-9
BUDGET_SEARCH_MAX_RATIO = 1e12
BRACKET_STEP = math.log(1e3)
CROSSING_TOLERANCE = 1e-9


def _non_outage_monitor(params: ScenarioParams, rate: float) -> float:
    """モニターがレート R を復号できる確率 exp(-λ_b σ_b² (2^R - 1) / P)"""
    threshold = threshold_from_rate(rate)
    return math.exp(-params.lambda_b * params.noise_monitor * threshold / params.tx_power)


def _evaluation(n: int, rho: float, rate: float, params: ScenarioParams) -> LinkEvaluation:
    non_outage = _non_outage_monitor(params, rate)
    return LinkEvaluation(n=n, rho=rho, rate=rate, non_outage_monitor=non_outage, phi=(1.0 - rho) * non_outage)


@lru_cache(maxsize=4096)
def phi_passive(params: ScenarioParams) -> LinkEvaluation:
    """受動盗聴時の評価 (n = 0, ρ = 0)"""
    rate = passive_rate(params, params.n_channels)
    return _evaluation(0, 0.0, rate, params)


@lru_cache(maxsize=4096)
def phi_jamming(params: ScenarioParams, n: int) -> LinkEvaluation:
    """予算を n 本に等分配したジャミング時の評価

    Args:
        params (ScenarioParams): シナリオ
        n (int): ジャミング本数（1..N-1）

    Returns:
        LinkEvaluation: ρ、レート、モニターの非アウテージ確率、φ

    Raises:
        DomainError: n が範囲外の場合
        NumericalError: 積分・求根が失敗した場合
    """
    if n < 1 or n > params.n_channels - 1:
        raise DomainError(f"ジャミング本数 n は 1..{params.n_channels - 1} の範囲で指定してください: {n}")
    strategy = equal_split_strategy(params, n)
    rho = rho_quadrature(params, n).rho
    rate = jammed_rate(params, strategy).rate
    return _evaluation(n, rho, rate, params)


def phi_two_channel(params: ScenarioParams, q: float) -> LinkEvaluation:
    """N = 2 で1本を電力 q でジャミングしたときの評価（閉形式のρを使用）"""
    if params.n_channels != 2:
        raise PreconditionError(f"2チャネル専用の計算です (N={params.n_channels})")
    budget_params = params.with_budget(q)
    rho = rho_two_channel(params, q).rho
    rate = jammed_rate(budget_params, equal_split_strategy(budget_params, 1)).rate
    return _evaluation(1, rho, rate, params)


def limit_phi_low_budget(params: ScenarioParams, n: int) -> float:
    """Q_max → 0 の極限: (1 - n/N)·(1 - δ^{1/N})^{λ_b σ_b² / λ_a σ_a²}"""
    if n < 0 or n > params.n_channels - 1:
        raise DomainError(f"ジャミング本数 n は 0..{params.n_channels - 1} の範囲で指定してください: {n}")
    exponent = params.lambda_b * params.noise_monitor / (params.lambda_a * params.noise_sr)
    root = params.outage_target ** (1.0 / params.n_channels)
    return (1.0 - n / params.n_channels) * math.exp(exponent * math.log1p(-root))


def limit_phi_high_budget(params: ScenarioParams, n: int) -> float:
    """Q_max → ∞ の極限: (1 - δ^{1/(N-n)})^{λ_b σ_b² / λ_a σ_a²}"""
    if n < 0 or n > params.n_channels - 1:
        raise DomainError(f"ジャミング本数 n は 0..{params.n_channels - 1} の範囲で指定してください: {n}")
    exponent = params.lambda_b * params.noise_monitor / (params.lambda_a * params.noise_sr)
    root = params.outage_target ** (1.0 / (params.n_channels - n))
    return math.exp(exponent * math.log1p(-root))


def optimize_one_way(params: ScenarioParams) -> OptimizationOutcome:
    """片方向の最適な盗聴方式とジャミング本数を選ぶ

    n = 1..N-1 を全探索する。同値の場合は小さい n、
    受動とジャミングが同値の場合は受動を選ぶ。
    """
    passive = phi_passive(params)
    profile = [phi_jamming(params, n) for n in range(1, params.n_channels)]

    best = profile[0]
    for evaluation in profile[1:]:
        if evaluation.phi > best.phi:
            best = evaluation

    if best.phi > passive.phi:
        scheme, n_star, phi_star = Scheme.JAMMING, best.n, best.phi
    else:
        scheme, n_star, phi_star = Scheme.PASSIVE, None, passive.phi

    logger.debug(f"片方向最適化: 方式={scheme.value}, n*={n_star}, φ*={phi_star:.6g}")
    return OptimizationOutcome(
        chosen_scheme=scheme,
        n_star=n_star,
        phi_star=phi_star,
        phi_passive=passive.phi,
        passive=passive,
        profile=profile,
        n_jam_best=best.n,
    )


def _expand_log_bracket(
    gap: Callable[[float], float], reference: float, label: str
) -> Tuple[float, float]:
    """log Q 上で符号が変わる区間を、基準値から両側に広げながら探す"""
    center = math.log(reference)
    floor = math.log(reference * BUDGET_SEARCH_MIN_RATIO)
    ceiling = math.log(reference * BUDGET_SEARCH_MAX_RATIO)

    low = max(center - BRACKET_STEP, floor)
    high = min(center + BRACKET_STEP, ceiling)
    f_low, f_high = gap(low), gap(high)
    while f_low * f_high > 0:
        if low <= floor and high >= ceiling:
            side = "前者" if f_low > 0 else "後者"
            raise NumericalError(f"{label}: 探索範囲全体で常に{side}が優位で、交点がありません")
        if low > floor:
            low = max(low - BRACKET_STEP, floor)
            f_low = gap(low)
        if high < ceiling:
            high = min(high + BRACKET_STEP, ceiling)
            f_high = gap(high)
    return low, high


def _solve_log_budget(gap: Callable[[float], float], reference: float, label: str) -> float:
    """gap(log Q) = 0 となる予算 Q を求める"""
    low, high = _expand_log_bracket(gap, reference, label)
    if gap(low) == 0.0:
        return math.exp(low)
    if gap(high) == 0.0:
        return math.exp(high)
    root, info = optimize.brentq(gap, low, high, xtol=1e-13, rtol=1e-13, maxiter=200, full_output=True, disp=False)
    if not info.converged:
        raise NumericalError(f"{label}: 求根が収束しませんでした ({info.flag})")
    if abs(gap(root)) > CROSSING_TOLERANCE:
        raise NumericalError(f"{label}: 交点での差が大きすぎます ({gap(root):.3g})")
    return math.exp(root)


def q_threshold(params: ScenarioParams) -> float:
    """N = 2 で受動とジャミングの φ が一致する予算 Q_th

    Q > Q_th ではジャミング、Q < Q_th では受動盗聴が有利。

    Raises:
        PreconditionError: N ≠ 2 の場合
        NumericalError: 探索範囲に交点がない場合
    """
    if params.n_channels != 2:
        raise PreconditionError(f"予算閾値は N = 2 でのみ定義されます (N={params.n_channels})")
    passive = phi_passive(params).phi

    def gap(log_q: float) -> float:
        return phi_two_channel(params, math.exp(log_q)).phi - passive

    threshold = _solve_log_budget(gap, params.tx_power, "ジャミングと受動の切替点")
    logger.info(f"予算閾値 Q_th = {threshold:.12g}")
    return threshold


def _crossing_budget(params: ScenarioParams, n_first: int, n_second: int, label: str) -> float:
    def gap(log_q: float) -> float:
        budget_params = params.with_budget(math.exp(log_q))
        return phi_jamming(budget_params, n_first).phi - phi_jamming(budget_params, n_second).phi

    return _solve_log_budget(gap, params.tx_power, label)


def regime_thresholds(params: ScenarioParams) -> RegimeThresholds:
    """双方向最適化の予算領域の境界

    各方向で φ(1) = φ(2) となる予算と φ(N-2) = φ(N-1) となる予算を求め、
    q_lower はその最小、q_upper は最大とする。

    Raises:
        PreconditionError: N < 3 の場合
        NumericalError: どちらかの方向で交点がない場合
    """
    n_channels = params.n_channels
    if n_channels < 3:
        raise PreconditionError(f"予算領域は N ≥ 3 でのみ定義されます (N={n_channels})")

    crossings = {}
    for direction, direction_params in (("ab", params), ("ba", swap_direction(params))):
        crossings[f"q_lower_{direction}"] = _crossing_budget(
            direction_params, 1, 2, f"{direction.upper()} 方向の φ(1)=φ(2)"
        )
        crossings[f"q_upper_{direction}"] = _crossing_budget(
            direction_params, n_channels - 2, n_channels - 1,
            f"{direction.upper()} 方向の φ({n_channels - 2})=φ({n_channels - 1})",
        )

    return RegimeThresholds(
        q_lower=min(crossings["q_lower_ab"], crossings["q_lower_ba"]),
        q_upper=max(crossings["q_upper_ab"], crossings["q_upper_ba"]),
        **crossings,
    )


def optimize_two_way(
    params: ScenarioParams,
    weight_ab: float = 1.0,
    weight_ba: float = 1.0,
    classify_regime: bool = False,
) -> TwoWayOutcome:
    """双方向通信で両方向の φ の最小値を最大化する

    両方向は同じ予算・同じ n を共有する。重みは比較にのみ使い、
    報告する φ は重みなしの値とする。

    Args:
        params (ScenarioParams): A→B 方向のシナリオ
        weight_ab (float, optional): A→B 方向の重み。デフォルトは1。
        weight_ba (float, optional): B→A 方向の重み。デフォルトは1。
        classify_regime (bool, optional): 予算領域を判定するか（N ≥ 3 のみ）

    Returns:
        TwoWayOutcome: 最適化結果
    """
    if not (weight_ab > 0 and weight_ba > 0):
        raise DomainError(f"重みは正である必要があります: ({weight_ab}, {weight_ba})")

    one_way_ab = optimize_one_way(params)
    one_way_ba = optimize_one_way(swap_direction(params))
    profile_ab, profile_ba = one_way_ab.profile, one_way_ba.profile

    best_index: Optional[int] = None
    best_score = -math.inf
    for index, (ab, ba) in enumerate(zip(profile_ab, profile_ba)):
        score = min(weight_ab * ab.phi, weight_ba * ba.phi)
        if score > best_score:
            best_index, best_score = index, score

    passive_score = min(weight_ab * one_way_ab.passive.phi, weight_ba * one_way_ba.passive.phi)
    if best_index is not None and best_score > passive_score:
        chosen = Scheme.JAMMING
        n_star: Optional[int] = profile_ab[best_index].n
        phi_minmax = min(profile_ab[best_index].phi, profile_ba[best_index].phi)
    else:
        chosen = Scheme.PASSIVE
        n_star = None
        phi_minmax = min(one_way_ab.passive.phi, one_way_ba.passive.phi)

    regime: Optional[Regime] = None
    thresholds: Optional[RegimeThresholds] = None
    if classify_regime and params.n_channels >= 3:
        thresholds = regime_thresholds(params)
        if params.jam_budget < thresholds.q_lower:
            regime = Regime.LOW_BUDGET
        elif params.jam_budget > thresholds.q_upper:
            regime = Regime.HIGH_BUDGET
        else:
            regime = Regime.INTERIOR

    logger.debug(f"双方向最適化: 方式={chosen.value}, n*={n_star}, φ_minmax={phi_minmax:.6g}")
    return TwoWayOutcome(
        chosen_scheme=chosen,
        n_star=n_star,
        phi_minmax=phi_minmax,
        passive_ab=one_way_ab.passive,
        passive_ba=one_way_ba.passive,
        profile_ab=profile_ab,
        profile_ba=profile_ba,
        one_way_ab=one_way_ab,
        one_way_ba=one_way_ba,
        weight_ab=weight_ab,
        weight_ba=weight_ba,
        regime=regime,
        thresholds=thresholds,
    )

