"""
シナリオモジュール

dB変換、ノード配置からの利得レート算出、双方向通信における向きの反転、
およびジャミング戦略の妥当性検査を提供します。
"""

import math
import logging
from typing import Tuple

from ..exceptions import DomainError, ScenarioError
from ..models import JammingStrategy, Placement, Point, ScenarioParams

# ロガーの設定
logger = logging.getLogger(__name__)

# 予算超過判定の許容誤差
BUDGET_SLACK = 1e-12


def from_db(value_db: float) -> float:
    """dB値を線形値に変換 (10^(x/10))"""
    if not math.isfinite(value_db):
        raise DomainError(f"dB値が有限ではありません: {value_db}")
    return 10.0 ** (value_db / 10.0)


def to_db(value: float) -> float:
    """線形値をdB値に変換"""
    if not value > 0:
        raise DomainError(f"dB変換には正の値が必要です: {value}")
    return 10.0 * math.log10(value)


def _squared_distance(first: Point, second: Point) -> float:
    dx = first[0] - second[0]
    dy = first[1] - second[1]
    return dx * dx + dy * dy


def lambdas_from_placement(placement: Placement) -> Tuple[float, float, float]:
    """配置から逆二乗パスロスで利得レートを算出

    平均利得は 1/d² なので、レートは距離の2乗になる。

    Args:
        placement (Placement): ST・SR・モニターの座標

    Returns:
        Tuple[float, float, float]: (λ_a, λ_b, λ_c) = (d²_ST-SR, d²_ST-モニター, d²_モニター-SR)

    Raises:
        ScenarioError: 2点が一致している場合
    """
    pairs = {
        "ST-SR": (placement.st_pos, placement.sr_pos),
        "ST-モニター": (placement.st_pos, placement.monitor_pos),
        "モニター-SR": (placement.monitor_pos, placement.sr_pos),
    }
    lambdas = []
    for name, (first, second) in pairs.items():
        distance_sq = _squared_distance(first, second)
        if not distance_sq > 0:
            raise ScenarioError(f"配置の2点が一致しています ({name})")
        lambdas.append(distance_sq)
    return lambdas[0], lambdas[1], lambdas[2]


def params_with_placement(params: ScenarioParams, placement: Placement) -> ScenarioParams:
    """配置から算出した利得レートでパラメータを置き換える"""
    lambda_a, lambda_b, lambda_c = lambdas_from_placement(placement)
    return params.with_lambdas(lambda_a, lambda_b, lambda_c)


def swap_direction(params: ScenarioParams) -> ScenarioParams:
    """逆方向（SR→ST）のパラメータを返す

    正規受信者とモニターの関係が入れ替わるため λ_b と λ_c を交換する。
    λ_a・電力・予算・雑音・チャネル数はそのまま共有する。
    """
    return params.with_lambdas(params.lambda_a, params.lambda_c, params.lambda_b)


def check_strategy(params: ScenarioParams, strategy: JammingStrategy, allow_passive: bool = True) -> None:
    """ジャミング戦略がシナリオに対して妥当か検査

    Raises:
        DomainError: ジャミング本数が範囲外、または予算を超過している場合
    """
    n = strategy.jammed_count
    if n > params.n_channels - 1:
        raise DomainError(f"ジャミング本数 {n} が上限 N-1 = {params.n_channels - 1} を超えています")
    if n == 0 and not allow_passive:
        raise DomainError("ジャミング本数は1以上である必要があります")
    if strategy.total_power > params.jam_budget + BUDGET_SLACK:
        raise DomainError(
            f"ジャミング電力の合計 {strategy.total_power:.6g} が予算 {params.jam_budget:.6g} を超えています"
        )


def equal_split_strategy(params: ScenarioParams, n: int) -> JammingStrategy:
    """予算を n 本に等分配した戦略を作成

    Raises:
        DomainError: n が 0..N-1 の範囲外の場合
    """
    if n < 0 or n > params.n_channels - 1:
        raise DomainError(f"ジャミング本数 n は 0..{params.n_channels - 1} の範囲で指定してください: {n}")
    return JammingStrategy.equal_split(n, params.jam_budget)
