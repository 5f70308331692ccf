"""
レートモジュール

アウテージ目標 δ を満たす送信レートを、受動盗聴時は閉形式で、
ジャミング時は最良チャネルSINRのCDFの求根で求めます。
"""

import math
import logging

from scipy import optimize

from ..exceptions import DomainError, NumericalError
from ..models import JammingStrategy, RateSolution, ScenarioParams
from .fading import cdf_best_overall
from .scenario import check_strategy

# ロガーの設定
logger = logging.getLogger(__name__)

ROOT_MAX_ITERATIONS = 200
ROOT_RELATIVE_TOLERANCE = 1e-13
RESIDUAL_TOLERANCE = 1e-10
# 求根区間の端点を少しだけ広げる
BRACKET_INFLATION = 1e-9


def passive_threshold(params: ScenarioParams, effective_n: int) -> float:
    """k 本の無ジャミングチャネルに対するSINR閾値 u

    F_SNR(u)^k = δ を満たす u = (P / λ_a σ_a²)·(-ln(1 - δ^{1/k}))。
    """
    if effective_n < 1:
        raise DomainError(f"有効チャネル数は1以上である必要があります: {effective_n}")
    root = params.outage_target ** (1.0 / effective_n)
    return params.tx_power / (params.lambda_a * params.noise_sr) * -math.log1p(-root)


def rate_from_threshold(threshold: float) -> float:
    """SINR閾値 u からレート log2(1 + u) を求める"""
    return math.log1p(threshold) / math.log(2.0)


def threshold_from_rate(rate: float) -> float:
    """レート R からSINR閾値 2^R - 1 を求める"""
    return math.expm1(rate * math.log(2.0))


def passive_rate(params: ScenarioParams, effective_n: int) -> float:
    """受動盗聴時のアウテージレート

    Args:
        params (ScenarioParams): シナリオ
        effective_n (int): 選択対象の無ジャミングチャネル数 k（1以上）

    Returns:
        float: bit/s/Hz
    """
    return rate_from_threshold(passive_threshold(params, effective_n))


def outage_probability(params: ScenarioParams, strategy: JammingStrategy, rate: float) -> float:
    """レート R で送信したときのアウテージ確率 F_best(2^R - 1)"""
    if not rate >= 0:
        raise DomainError(f"レートは0以上である必要があります: {rate}")
    return cdf_best_overall(params, strategy, threshold_from_rate(rate))


def jammed_rate(params: ScenarioParams, strategy: JammingStrategy) -> RateSolution:
    """ジャミング下でアウテージ目標を満たすレートを求根で求める

    根は [u(N-n), u(N)] に挟まれる（ジャミングが最大でも N-n 本分は残るため）。
    jammed_count が 0 の場合は受動盗聴のレートを返す。

    Args:
        params (ScenarioParams): シナリオ
        strategy (JammingStrategy): ジャミング戦略

    Returns:
        RateSolution: レート、残差、反復回数

    Raises:
        DomainError: 戦略が不正な場合
        NumericalError: 求根が収束しない、または残差が大きすぎる場合
    """
    check_strategy(params, strategy)
    n = strategy.jammed_count
    delta = params.outage_target

    if n == 0:
        threshold = passive_threshold(params, params.n_channels)
        residual = cdf_best_overall(params, strategy, threshold) - delta
        return RateSolution(rate=rate_from_threshold(threshold), residual=residual, iterations=0)

    lower = passive_threshold(params, params.n_channels - n) * (1.0 - BRACKET_INFLATION)
    upper = passive_threshold(params, params.n_channels) * (1.0 + BRACKET_INFLATION)

    def outage_gap(u: float) -> float:
        return cdf_best_overall(params, strategy, u) - delta

    f_lower = outage_gap(lower)
    f_upper = outage_gap(upper)
    if f_lower > 0 or f_upper < 0:
        logger.error(f"求根区間が根を挟んでいません: f({lower:.6g})={f_lower:.3g}, f({upper:.6g})={f_upper:.3g}")
        raise NumericalError("ジャミング時レートの求根区間が根を挟んでいません")

    if f_lower == 0.0:
        root, iterations = lower, 0
    elif f_upper == 0.0:
        root, iterations = upper, 0
    else:
        root, info = optimize.brentq(
            outage_gap,
            lower,
            upper,
            xtol=max(lower * ROOT_RELATIVE_TOLERANCE, 1e-300),
            rtol=ROOT_RELATIVE_TOLERANCE,
            maxiter=ROOT_MAX_ITERATIONS,
            full_output=True,
            disp=False,
        )
        if not info.converged:
            logger.error(f"ジャミング時レートの求根が収束しませんでした: {info.flag}")
            raise NumericalError(f"ジャミング時レートの求根が収束しませんでした: {info.flag}")
        iterations = info.iterations

    residual = outage_gap(root)
    if abs(residual) > RESIDUAL_TOLERANCE:
        raise NumericalError(f"ジャミング時レートの残差が大きすぎます: {residual:.3g}")

    logger.debug(f"ジャミング時レートを求めました (n={n}): u={root:.12g}, 反復={iterations}")
    return RateSolution(rate=rate_from_threshold(root), residual=residual, iterations=iterations)
