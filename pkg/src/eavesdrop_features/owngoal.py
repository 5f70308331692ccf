"""
オウンゴールモジュール

ジャミングによって正規受信者がジャミングされたチャネルを最良として選んでしまう確率
（オウンゴール確率 ρ）を、閉形式と数値積分の両方で計算します。
"""

import math
import logging
from typing import List

from scipy import integrate

from ..exceptions import DomainError, NumericalError, PreconditionError
from ..models import OwnGoalMethod, OwnGoalValue, ScenarioParams
from .specfun import e1_scaled, upper_gamma_nonpos_scaled

# ロガーの設定
logger = logging.getLogger(__name__)

# 閉形式の和を使うチャネル数の上限
CLOSED_FORM_MAX_CHANNELS = 12
# e^{-T} が倍精度の丸め誤差を下回る打ち切り点
TRUNCATION_POINT = 40.0
QUADRATURE_ABS_TOLERANCE = 1e-15
QUADRATURE_REL_TOLERANCE = 1e-11
QUADRATURE_MAX_ERROR = 1e-10
QUADRATURE_LIMIT = 200


def _clamp_probability(value: float) -> float:
    return min(max(value, 0.0), 1.0)


def _check_jammed_count(params: ScenarioParams, n: int) -> None:
    if n < 1 or n > params.n_channels - 1:
        raise DomainError(f"ジャミング本数 n は 1..{params.n_channels - 1} の範囲で指定してください: {n}")


def rho_two_channel(params: ScenarioParams, q: float) -> OwnGoalValue:
    """N = 2 で1本を電力 q でジャミングしたときのオウンゴール確率

    ρ = (λ_c σ_a² / Q)·e^{s}·E1(s),  s = 2 λ_c σ_a² / Q

    Raises:
        PreconditionError: N ≠ 2 の場合
        DomainError: q ≤ 0 の場合
    """
    if params.n_channels != 2:
        raise PreconditionError(f"2チャネル専用の計算です (N={params.n_channels})")
    if not q > 0 or math.isinf(q):
        raise DomainError(f"ジャミング電力は正の有限値である必要があります: {q}")
    half = params.lambda_c * params.noise_sr / q
    rho = half * e1_scaled(2.0 * half)
    return OwnGoalValue(rho=_clamp_probability(rho), method=OwnGoalMethod.CLOSED_FORM_TWO_CHANNEL)


def rho_multi_sum(params: ScenarioParams, n: int) -> OwnGoalValue:
    """予算を n 本に等分配したときのオウンゴール確率（閉形式の二重和）

    各項は ∫ e^{-(1+i+j) a x}/(1 + b x)^j dx = (1/b)·e^{s}E_j(s),  s = (1+i+j)a/b
    に帰着する。交代和なので math.fsum で丸め誤差を抑える。

    Raises:
        DomainError: n が範囲外、または Q_max ≤ 0 の場合
        PreconditionError: N が閉形式の上限を超える場合
    """
    _check_jammed_count(params, n)
    if params.n_channels > CLOSED_FORM_MAX_CHANNELS:
        raise PreconditionError(
            f"閉形式の和は N ≤ {CLOSED_FORM_MAX_CHANNELS} でのみ使用できます (N={params.n_channels})"
        )
    if not params.jam_budget > 0:
        raise DomainError("閉形式の和にはジャミング予算 Q_max > 0 が必要です")

    unjammed = params.n_channels - n
    # a/b: 減衰率とジャミング項の比
    ratio = n * params.lambda_c * params.noise_sr / params.jam_budget

    terms: List[float] = []
    for i in range(unjammed):
        for j in range(1, n + 1):
            s = (1 + i + j) * ratio
            sign = -1.0 if (i + j) % 2 == 0 else 1.0
            weight = math.comb(unjammed - 1, i) * math.comb(n, j)
            terms.append(sign * weight * s ** (j - 1) * upper_gamma_nonpos_scaled(j, s))

    rho = unjammed * ratio * math.fsum(terms)
    return OwnGoalValue(rho=_clamp_probability(rho), method=OwnGoalMethod.CLOSED_FORM_SUM)


def _own_goal_integrand(t: float, n: int, unjammed: int, coupling: float) -> float:
    # [1 - (1 - e^{-t}/(1 + c t))^n]·e^{-t}·(1 - e^{-t})^{N-n-1}
    decay = math.exp(-t)
    beaten = decay / (1.0 + coupling * t)
    if beaten >= 1.0:
        any_jammed_wins = 1.0
    else:
        any_jammed_wins = -math.expm1(n * math.log1p(-beaten))
    return any_jammed_wins * decay * (-math.expm1(-t)) ** (unjammed - 1)


def rho_quadrature(params: ScenarioParams, n: int) -> OwnGoalValue:
    """予算を n 本に等分配したときのオウンゴール確率（数値積分）

    無次元化した積分を [0, T] で計算する。c が大きいと t ≈ 1/c 付近で
    被積分関数が急変するため、10^k / c に分割点を置く。
    Q_max = 0 の場合はジャミングの影響がなく ρ = n/N となる。

    Raises:
        DomainError: n が範囲外の場合
        NumericalError: 積分誤差が許容値を超えた場合
    """
    _check_jammed_count(params, n)
    unjammed = params.n_channels - n
    coupling = params.jam_budget / (n * params.lambda_c * params.noise_sr)

    points = []
    if coupling > 1.0:
        breakpoint = 1.0 / coupling
        while breakpoint < TRUNCATION_POINT:
            points.append(breakpoint)
            breakpoint *= 10.0

    result = integrate.quad(
        _own_goal_integrand,
        0.0,
        TRUNCATION_POINT,
        args=(n, unjammed, coupling),
        points=points or None,
        epsabs=QUADRATURE_ABS_TOLERANCE,
        epsrel=QUADRATURE_REL_TOLERANCE,
        limit=QUADRATURE_LIMIT,
        full_output=1,
    )
    value, abserr = result[0], result[1]
    # 打ち切り誤差: 被積分関数 ≤ n e^{-2t}
    tail = n * math.exp(-2.0 * TRUNCATION_POINT) / 2.0
    total_error = unjammed * (abserr + tail)
    if total_error > QUADRATURE_MAX_ERROR:
        logger.error(f"オウンゴール確率の積分誤差が大きすぎます (n={n}): {total_error:.3g}")
        raise NumericalError(f"オウンゴール確率の積分誤差が大きすぎます: {total_error:.3g}")

    rho = unjammed * value
    return OwnGoalValue(rho=_clamp_probability(rho), method=OwnGoalMethod.QUADRATURE)
