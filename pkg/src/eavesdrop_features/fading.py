"""
フェージングモジュール

レイリーフェージング下のSNR/SINRの分布関数と、
最良チャネル選択後のSINRの分布関数を提供します。
"""

import math
import logging
from typing import Optional

from ..exceptions import DomainError
from ..models import JammingStrategy, ScenarioParams

# ロガーの設定
logger = logging.getLogger(__name__)

# これより多いチャネル数では積を対数領域で計算する
LOG_SPACE_MIN_CHANNELS = 16


def _check_gamma(gamma: float) -> None:
    if not gamma >= 0 or math.isinf(gamma):
        raise DomainError(f"SINR閾値は0以上の有限値である必要があります: {gamma}")


def _check_power(q_i: float) -> None:
    if not q_i >= 0 or math.isinf(q_i):
        raise DomainError(f"ジャミング電力は0以上の有限値である必要があります: {q_i}")


def _snr_exponent(params: ScenarioParams, gamma: float) -> float:
    return params.lambda_a * params.noise_sr * gamma / params.tx_power


def cdf_snr(params: ScenarioParams, gamma: float) -> float:
    """ジャミングされていないチャネルのSNRのCDF: 1 - exp(-λ_a σ_a² γ / P)"""
    _check_gamma(gamma)
    return -math.expm1(-_snr_exponent(params, gamma))


def _survival_sinr_jammed(params: ScenarioParams, q_i: float, gamma: float) -> float:
    scale = params.lambda_c * params.tx_power
    return scale / (scale + params.lambda_a * q_i * gamma) * math.exp(-_snr_exponent(params, gamma))


def cdf_sinr_jammed(params: ScenarioParams, q_i: float, gamma: float) -> float:
    """電力 q_i でジャミングされたチャネルのSINRのCDF

    Args:
        params (ScenarioParams): シナリオ
        q_i (float): このチャネルへのジャミング電力（0なら cdf_snr と一致）
        gamma (float): SINR閾値

    Returns:
        float: P(SINR < γ)
    """
    _check_power(q_i)
    _check_gamma(gamma)
    return 1.0 - _survival_sinr_jammed(params, q_i, gamma)


def pdf_sinr_jammed(params: ScenarioParams, q_i: float, gamma: float) -> float:
    """ジャミングされたチャネルのSINRの確率密度"""
    _check_power(q_i)
    _check_gamma(gamma)
    p = params.tx_power
    la, lc = params.lambda_a, params.lambda_c
    sigma_sq = params.noise_sr
    denominator = lc * p + la * q_i * gamma
    numerator = la * lc * (lc * p * sigma_sq + p * q_i + la * q_i * sigma_sq * gamma)
    return numerator / (denominator * denominator) * math.exp(-_snr_exponent(params, gamma))


def cdf_best_unjammed(params: ScenarioParams, gamma: float, exponent: Optional[int] = None) -> float:
    """ジャミングなしで最良チャネルを選んだときのSINRのCDF: F_SNR(γ)^k

    Args:
        params (ScenarioParams): シナリオ
        gamma (float): SINR閾値
        exponent (Optional[int], optional): チャネル本数 k。デフォルトは N。
    """
    k = params.n_channels if exponent is None else exponent
    if k < 1:
        raise DomainError(f"チャネル本数は1以上である必要があります: {k}")
    return cdf_snr(params, gamma) ** k


def cdf_best_overall(params: ScenarioParams, strategy: JammingStrategy, gamma: float) -> float:
    """ジャミング下で最良チャネルを選んだときのSINRのCDF

    ジャミングされたチャネルのCDFと、残りの N-n 本のSNR CDFの積。

    Raises:
        DomainError: ジャミング本数が N を超える場合
    """
    _check_gamma(gamma)
    n = strategy.jammed_count
    if n > params.n_channels:
        raise DomainError(f"ジャミング本数 {n} がチャネル数 {params.n_channels} を超えています")
    if gamma == 0.0:
        return 0.0

    unjammed = params.n_channels - n
    if params.n_channels <= LOG_SPACE_MIN_CHANNELS:
        product = cdf_snr(params, gamma) ** unjammed
        for q_i in strategy.powers:
            product *= cdf_sinr_jammed(params, q_i, gamma)
        return product

    # 多チャネルでは積が桁落ちしないよう対数の和で計算
    base = cdf_snr(params, gamma)
    if unjammed and base == 0.0:
        # γ が非正規化数のとき 1-exp(-x) が 0 に丸められる
        return 0.0
    log_total = unjammed * math.log(base) if unjammed else 0.0
    for q_i in strategy.powers:
        _check_power(q_i)
        survival = _survival_sinr_jammed(params, q_i, gamma)
        if survival >= 1.0:
            return 0.0
        log_total += math.log1p(-survival)
    return math.exp(log_total)
