"""
特殊関数モジュール

指数積分 E1、スケール版 e^x·E1(x)、非正次数の上側不完全ガンマ関数 Γ(1-j, x) を提供します。
x ≤ 1 では級数と下向き漸化式、x > 1 では修正Lentz法による連分数を用います。
"""

import math
import logging

from scipy import integrate

from ..exceptions import DomainError, NumericalError

# ロガーの設定
logger = logging.getLogger(__name__)

EULER_GAMMA = 0.57721566490153286061
SERIES_MAX_TERMS = 200
CF_MAX_ITERATIONS = 10000
CF_TOLERANCE = 1e-15
CF_TINY = 1e-300
# これを超える次数では漸化式ではなく数値積分を使う
RECURRENCE_MAX_ORDER = 64


def _require_positive(x: float) -> None:
    if not (x > 0) or math.isinf(x):
        raise DomainError(f"x は正の有限値である必要があります: {x}")


def _require_order(j: int) -> None:
    if j < 1:
        raise DomainError(f"次数 j は1以上である必要があります: {j}")


def _e1_series(x: float) -> float:
    """E1(x) = -γ - ln x - Σ_{k≥1} (-x)^k / (k·k!)  (0 < x ≤ 1)"""
    total = 0.0
    power_over_factorial = 1.0
    for k in range(1, SERIES_MAX_TERMS):
        power_over_factorial *= -x / k
        term = power_over_factorial / k
        total += term
        if abs(term) <= abs(total) * 1e-17:
            break
    return -EULER_GAMMA - math.log(x) - total


def _scaled_en_continued_fraction(order: int, x: float) -> float:
    """e^x·E_n(x) を連分数で計算 (x > 1)"""
    b = x + order
    c = 1.0 / CF_TINY
    d = 1.0 / b
    h = d
    for i in range(1, CF_MAX_ITERATIONS):
        an = -i * (order - 1 + i)
        b += 2.0
        d = 1.0 / (an * d + b)
        c = b + an / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < CF_TOLERANCE:
            return h
    logger.error(f"E_{order}({x}) の連分数が収束しませんでした")
    raise NumericalError(f"E_{order}({x}) の連分数が {CF_MAX_ITERATIONS} 回で収束しませんでした")


def e1(x: float) -> float:
    """指数積分 E1(x) = ∫_x^∞ e^{-t}/t dt

    Raises:
        DomainError: x ≤ 0 の場合
    """
    _require_positive(x)
    if x <= 1.0:
        return _e1_series(x)
    return _scaled_en_continued_fraction(1, x) * math.exp(-x)


def e1_scaled(x: float) -> float:
    """e^x·E1(x)

    x が大きくても桁あふれせず、漸近的に 1/x - 1/x² + ... に一致する。

    Raises:
        DomainError: x ≤ 0 の場合
    """
    _require_positive(x)
    if x <= 1.0:
        return math.exp(x) * _e1_series(x)
    return _scaled_en_continued_fraction(1, x)


def _scaled_gamma_by_quadrature(j: int, x: float) -> float:
    # e^x Γ(1-j, x) = x^{1-j} ∫_1^∞ s^{-j} e^{-x(s-1)} ds
    value, abserr = integrate.quad(
        lambda s: s ** (-j) * math.exp(-x * (s - 1.0)), 1.0, math.inf, epsabs=0.0, epsrel=1e-12, limit=200
    )
    if abserr > 1e-9 * max(value, 1e-300):
        raise NumericalError(f"Γ(1-{j}, {x}) の数値積分の誤差が大きすぎます: {abserr:.3g}")
    return value * x ** (1 - j)


def upper_gamma_nonpos_scaled(j: int, x: float) -> float:
    """e^x·Γ(1-j, x)

    Args:
        j (int): 次数（1以上）
        x (float): 下端（正）

    Returns:
        float: e^x·Γ(1-j, x) = e^x·x^{1-j}·E_j(x)

    Raises:
        DomainError: j < 1 または x ≤ 0 の場合
    """
    _require_order(j)
    _require_positive(x)
    if x > 1.0:
        return x ** (1 - j) * _scaled_en_continued_fraction(j, x)
    if j > RECURRENCE_MAX_ORDER:
        return _scaled_gamma_by_quadrature(j, x)

    # Γ(a-1, x) = (x^{a-1} e^{-x} - Γ(a, x)) / (1 - a) を a = 0, -1, ... と下る
    value = e1_scaled(x)
    power = 1.0 / x
    for step in range(1, j):
        value = (power - value) / step
        power /= x
    return value


def upper_gamma_nonpos(j: int, x: float) -> float:
    """上側不完全ガンマ関数 Γ(1-j, x) = ∫_x^∞ t^{-j} e^{-t} dt

    j = 1 のとき E1(x) に一致する。

    Raises:
        DomainError: j < 1 または x ≤ 0 の場合
    """
    _require_order(j)
    _require_positive(x)
    if x > 1.0:
        return x ** (1 - j) * _scaled_en_continued_fraction(j, x) * math.exp(-x)
    return upper_gamma_nonpos_scaled(j, x) * math.exp(-x)


def scaled_exponential_integral(j: int, x: float) -> float:
    """e^x·E_j(x) = x^{j-1}·e^x·Γ(1-j, x)"""
    _require_order(j)
    _require_positive(x)
    if x > 1.0:
        return _scaled_en_continued_fraction(j, x)
    return x ** (j - 1) * upper_gamma_nonpos_scaled(j, x)
