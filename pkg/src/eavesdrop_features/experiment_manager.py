"""
実験マネージャーモジュール

φ の予算依存性、ジャミング本数プロファイル、双方向プロファイル、平均利得依存性、
モニター配置の2次元格子、双方向の移動経路といったパラメータスイープを実行し、
表形式の結果を返します。モンテカルロ検証列の付加と、解析値とモンテカルロ推定値の
比較レポートの作成も担当します。
"""

import math
import logging
from typing import Any, Dict, List, NamedTuple, Optional, Tuple

from ..exceptions import DomainError, EavesdropError
from ..models import (
    AxisSpec,
    GridScale,
    OracleCheck,
    OracleReport,
    Placement,
    ScenarioParams,
    SweepKind,
    SweepSpec,
    SweepTable,
)
from .montecarlo_manager import MonteCarloManager
from .objective import optimize_one_way, optimize_two_way, phi_jamming, phi_passive, q_threshold
from .owngoal import rho_quadrature
from .parallel_handler import ParallelHandler
from .rates import jammed_rate
from .scenario import equal_split_strategy, from_db, params_with_placement, swap_direction, to_db

# ロガーの設定
logger = logging.getLogger(__name__)

# 種類ごとの列の並び（status と error は常に末尾）
SWEEP_COLUMNS: Dict[SweepKind, List[str]] = {
    SweepKind.PHI_VS_Q: [
        "q", "q_db", "n", "rho", "rate", "non_outage_monitor", "phi",
        "phi_passive", "chosen_scheme", "n_star", "phi_star",
    ],
    SweepKind.PROFILE_VS_N: [
        "q_db", "n", "rho", "rate", "non_outage_monitor", "phi", "chosen_scheme", "n_star",
    ],
    SweepKind.TWOWAY_PROFILE: [
        "n", "rho_ab", "rate_ab", "phi_ab", "rho_ba", "rate_ba", "phi_ba", "phi_min",
        "chosen_scheme", "n_star", "n_star_ab", "n_star_ba",
    ],
    SweepKind.PHI_VS_GAIN: [
        "n_channels", "mean_gain", "phi_passive", "phi_jamming_best", "n_jam_best",
        "chosen_scheme", "n_star", "phi_star",
    ],
    SweepKind.PLACEMENT_GRID: [
        "x", "y", "lambda_a", "lambda_b", "lambda_c", "phi_passive", "phi_jamming_best",
        "n_jam_best", "chosen_scheme", "n_star", "phi_star",
    ],
    SweepKind.TWOWAY_PATH: [
        "x", "y", "lambda_b", "lambda_c", "chosen_scheme", "n_star", "phi_minmax",
        "n_star_ab", "n_star_ba", "phi_bench_ab", "phi_bench_ba",
    ],
}
STATUS_COLUMNS = ["status", "error"]

# sweep_preset で使える名前
PRESET_NAMES = (
    "two_channel_budget",
    "profile",
    "twoway_profile",
    "profile_budgets",
    "gain",
    "placement",
    "twoway_path",
)

# モンテカルロ検証の対象 (列名の接頭辞)
VALIDATION_TARGETS: Dict[SweepKind, List[str]] = {
    SweepKind.PHI_VS_Q: ["phi"],
    SweepKind.PROFILE_VS_N: ["phi"],
    SweepKind.TWOWAY_PROFILE: ["phi_ab", "phi_ba"],
    SweepKind.PHI_VS_GAIN: ["phi_star"],
    SweepKind.PLACEMENT_GRID: ["phi_star"],
    SweepKind.TWOWAY_PATH: ["phi_ab", "phi_ba"],
}


class SweepPoint(NamedTuple):
    """1つの格子点の評価タスク"""
    spec: SweepSpec
    coords: Tuple[Any, ...]
    strict: bool


def sweep_columns(spec: SweepSpec) -> List[str]:
    """スイープの出力列を返す"""
    columns = list(SWEEP_COLUMNS[spec.kind])
    if spec.validation:
        for target in VALIDATION_TARGETS[spec.kind]:
            columns += [f"mc_{target}", f"mc_{target}_se"]
    return columns + STATUS_COLUMNS


def _n_star_value(n_star: Optional[int]) -> int:
    # 受動盗聴は 0 として出力
    return 0 if n_star is None else n_star


def _one_way_row(params: ScenarioParams) -> Tuple[Dict[str, Any], int]:
    outcome = optimize_one_way(params)
    best_jamming = outcome.profile[outcome.n_jam_best - 1]
    row = {
        "phi_passive": outcome.phi_passive,
        "phi_jamming_best": best_jamming.phi,
        "n_jam_best": outcome.n_jam_best,
        "chosen_scheme": outcome.chosen_scheme.value,
        "n_star": _n_star_value(outcome.n_star),
        "phi_star": outcome.phi_star,
    }
    return row, _n_star_value(outcome.n_star)


def _two_way_row(params: ScenarioParams) -> Tuple[Dict[str, Any], int]:
    outcome = optimize_two_way(params)
    params_ba = swap_direction(params)
    benchmarks = {}
    for direction, one_way in (("ab", outcome.one_way_ab), ("ba", outcome.one_way_ba)):
        n_bench = one_way.n_jam_best
        benchmarks[f"n_star_{direction}"] = n_bench
        benchmarks[f"phi_bench_{direction}"] = _two_way_min(params, params_ba, n_bench)
    row = {
        "chosen_scheme": outcome.chosen_scheme.value,
        "n_star": _n_star_value(outcome.n_star),
        "phi_minmax": outcome.phi_minmax,
        **benchmarks,
    }
    return row, _n_star_value(outcome.n_star)


def _evaluate(params: ScenarioParams, n: int):
    return phi_passive(params) if n == 0 else phi_jamming(params, n)


def _two_way_min(params_ab: ScenarioParams, params_ba: ScenarioParams, n: int) -> float:
    """同じ n を両方向に使ったときの φ の最小値"""
    return min(_evaluate(params_ab, n).phi, _evaluate(params_ba, n).phi)


def _placement(first: Tuple[float, float], second: Tuple[float, float], monitor: Tuple[float, float]) -> Placement:
    try:
        return Placement(st_pos=first, sr_pos=second, monitor_pos=monitor)
    except ValueError as e:
        raise DomainError(f"配置が不正です: {e}")


def _evaluate_point(spec: SweepSpec, coords: Tuple[Any, ...]) -> Tuple[Dict[str, Any], List[Tuple[str, ScenarioParams, int]]]:
    """格子点を評価し、行とモンテカルロ検証の対象を返す"""
    kind = spec.kind
    base = spec.base

    if kind == SweepKind.PHI_VS_Q:
        (q,) = coords
        params = base.with_budget(q)
        evaluation = phi_jamming(params, spec.fixed_n)
        decision, _ = _one_way_row(params)
        row = {"q": q, "q_db": to_db(q) if q > 0 else None, **evaluation.model_dump(), **decision}
        return row, [("phi", params, spec.fixed_n)]

    if kind == SweepKind.PROFILE_VS_N:
        q_db, n = coords
        params = base.with_budget(from_db(q_db))
        evaluation = _evaluate(params, n)
        outcome = optimize_one_way(params)
        row = {
            "q_db": q_db,
            **evaluation.model_dump(),
            "chosen_scheme": outcome.chosen_scheme.value,
            "n_star": _n_star_value(outcome.n_star),
        }
        return row, [("phi", params, n)]

    if kind == SweepKind.TWOWAY_PROFILE:
        (n,) = coords
        params_ba = swap_direction(base)
        ab, ba = _evaluate(base, n), _evaluate(params_ba, n)
        outcome = optimize_two_way(base)
        row = {
            "n": n,
            "rho_ab": ab.rho, "rate_ab": ab.rate, "phi_ab": ab.phi,
            "rho_ba": ba.rho, "rate_ba": ba.rate, "phi_ba": ba.phi,
            "phi_min": min(ab.phi, ba.phi),
            "chosen_scheme": outcome.chosen_scheme.value,
            "n_star": _n_star_value(outcome.n_star),
            "n_star_ab": outcome.one_way_ab.n_jam_best,
            "n_star_ba": outcome.one_way_ba.n_jam_best,
        }
        return row, [("phi_ab", base, n), ("phi_ba", params_ba, n)]

    if kind == SweepKind.PHI_VS_GAIN:
        n_channels, gain = coords
        params = base.with_channels(n_channels).with_lambdas(base.lambda_a, 1.0 / gain, 1.0 / gain)
        decision, n_star = _one_way_row(params)
        row = {"n_channels": n_channels, "mean_gain": gain, **decision}
        return row, [("phi_star", params, n_star)]

    if kind == SweepKind.PLACEMENT_GRID:
        x, y = coords
        params = params_with_placement(base, _placement(spec.endpoint_a, spec.endpoint_b, (x, y)))
        decision, n_star = _one_way_row(params)
        row = {
            "x": x, "y": y,
            "lambda_a": params.lambda_a, "lambda_b": params.lambda_b, "lambda_c": params.lambda_c,
            **decision,
        }
        return row, [("phi_star", params, n_star)]

    # TWOWAY_PATH: A→B 方向では A が ST、B が SR
    (x,) = coords
    y = spec.path_y
    params = params_with_placement(base, _placement(spec.endpoint_a, spec.endpoint_b, (x, y)))
    decision, n_star = _two_way_row(params)
    row = {"x": x, "y": y, "lambda_b": params.lambda_b, "lambda_c": params.lambda_c, **decision}
    return row, [("phi_ab", params, n_star), ("phi_ba", swap_direction(params), n_star)]


def point_fields(spec: SweepSpec, coords: Tuple[Any, ...]) -> Dict[str, Any]:
    """格子点の座標列を返す（失敗行にも付ける）"""
    kind = spec.kind
    if kind == SweepKind.PHI_VS_Q:
        (q,) = coords
        return {"q": q, "q_db": to_db(q) if q > 0 else None}
    if kind == SweepKind.PROFILE_VS_N:
        q_db, n = coords
        return {"q_db": q_db, "n": n}
    if kind == SweepKind.TWOWAY_PROFILE:
        (n,) = coords
        return {"n": n}
    if kind == SweepKind.PHI_VS_GAIN:
        n_channels, gain = coords
        return {"n_channels": n_channels, "mean_gain": gain}
    if kind == SweepKind.PLACEMENT_GRID:
        x, y = coords
        return {"x": x, "y": y}
    (x,) = coords
    return {"x": x, "y": spec.path_y}


def run_sweep_point(task: SweepPoint) -> Dict[str, Any]:
    """1つの格子点を評価する（ワーカープロセスで実行される）

    strict でなければ、ライブラリの例外は行の status/error に記録して続行する。
    """
    spec = task.spec
    try:
        row, targets = _evaluate_point(spec, task.coords)
        if spec.validation:
            monte_carlo = MonteCarloManager()
            for name, params, n in targets:
                strategy = equal_split_strategy(params, n)
                estimate = monte_carlo.estimate_phi(params, strategy, spec.samples, spec.seed)
                row[f"mc_{name}"] = estimate.value
                row[f"mc_{name}_se"] = estimate.std_error
        row["status"] = "ok"
        row["error"] = ""
        return row
    except EavesdropError as e:
        if task.strict:
            raise
        logger.warning(f"格子点 {task.coords} の評価に失敗しました: {e.detail}")
        return {**point_fields(spec, task.coords), "status": "failed", "error": e.detail}


def sweep_points(spec: SweepSpec) -> List[Tuple[Any, ...]]:
    """スイープの格子点を決まった順序で列挙する"""
    kind = spec.kind
    if kind == SweepKind.PHI_VS_Q:
        return [(q,) for q in spec.axis.values()]
    if kind == SweepKind.PROFILE_VS_N:
        budgets = spec.q_db_values or [to_db(spec.base.jam_budget)]
        return [(q_db, n) for q_db in budgets for n in range(spec.base.n_channels)]
    if kind == SweepKind.TWOWAY_PROFILE:
        return [(n,) for n in range(spec.base.n_channels)]
    if kind == SweepKind.PHI_VS_GAIN:
        channels = spec.n_channels_values or [spec.base.n_channels]
        return [(n_channels, gain) for n_channels in channels for gain in spec.axis.values()]
    if kind == SweepKind.PLACEMENT_GRID:
        return [(x, y) for y in spec.axis_y.values() for x in spec.axis.values()]
    return [(x,) for x in spec.axis.values()]


def _sweep_summary(spec: SweepSpec, rows: List[Dict[str, Any]]) -> Dict[str, Any]:
    summary: Dict[str, Any] = {
        "kind": spec.kind.value,
        "points": len(rows),
        "failed": sum(1 for row in rows if row.get("status") == "failed"),
    }
    if spec.kind == SweepKind.PHI_VS_Q and spec.base.n_channels == 2:
        try:
            summary["q_threshold"] = q_threshold(spec.base)
        except EavesdropError as e:
            logger.warning(f"予算閾値を求められませんでした: {e.detail}")
    return summary


def sweep_preset(name: str, samples: int = 100_000, seed: int = 20170601) -> SweepSpec:
    """名前付きの既定スイープ設定

    Args:
        name (str): PRESET_NAMES のいずれか
        samples (int, optional): 検証時のモンテカルロのサンプル数
        seed (int, optional): 検証時の乱数シード

    Returns:
        SweepSpec: スイープ設定

    Raises:
        DomainError: 未知のプリセット名の場合
    """
    common = dict(tx_power=from_db(10.0), noise_sr=1.0, noise_monitor=1.0, noise_st=1.0, outage_target=0.05)
    one_way = ScenarioParams(
        n_channels=8, lambda_a=1.0, lambda_b=1.0, lambda_c=3.0, jam_budget=from_db(20.0), **common
    )
    # 配置から λ を算出するプリセットの初期値（各格子点で上書きされる）
    placed = ScenarioParams(
        n_channels=8, lambda_a=1.0, lambda_b=1.0, lambda_c=1.0, jam_budget=from_db(30.0), **common
    )
    extra = dict(samples=samples, seed=seed)

    presets = {
        "two_channel_budget": lambda: SweepSpec(
            kind=SweepKind.PHI_VS_Q,
            base=ScenarioParams(
                n_channels=2, lambda_a=1.0, lambda_b=3.0, lambda_c=3.0, jam_budget=from_db(20.0), **common
            ),
            axis=AxisSpec(start=0.1, stop=1e4, count=61, scale=GridScale.LOG),
            **extra,
        ),
        "profile": lambda: SweepSpec(kind=SweepKind.PROFILE_VS_N, base=one_way, **extra),
        "twoway_profile": lambda: SweepSpec(
            kind=SweepKind.TWOWAY_PROFILE,
            base=one_way.with_lambdas(5.0, 1.0, 4.0),
            **extra,
        ),
        "profile_budgets": lambda: SweepSpec(
            kind=SweepKind.PROFILE_VS_N, base=one_way, q_db_values=[4.0, 10.0, 20.0, 30.0, 40.0], **extra
        ),
        "gain": lambda: SweepSpec(
            kind=SweepKind.PHI_VS_GAIN,
            base=one_way.with_budget(from_db(30.0)),
            axis=AxisSpec(start=0.1, stop=1.0, count=19, scale=GridScale.LINEAR),
            n_channels_values=[2, 4, 8],
            **extra,
        ),
        "placement": lambda: SweepSpec(
            kind=SweepKind.PLACEMENT_GRID,
            base=placed,
            axis=AxisSpec(start=0.0, stop=10.0, count=41),
            axis_y=AxisSpec(start=0.0, stop=9.0, count=41),
            endpoint_a=(3.0, 4.5),
            endpoint_b=(7.0, 4.5),
            **extra,
        ),
        "twoway_path": lambda: SweepSpec(
            kind=SweepKind.TWOWAY_PATH,
            base=placed,
            axis=AxisSpec(start=0.0, stop=4.0, count=81),
            endpoint_a=(1.0, 1.0),
            endpoint_b=(3.0, 1.0),
            path_y=0.0,
            **extra,
        ),
    }
    if name not in presets:
        raise DomainError(f"未知のプリセットです: {name} (使用可能: {', '.join(sorted(presets))})")
    return presets[name]()


def _deviation(analytic: float, estimate: float, std_error: float) -> float:
    if std_error > 0:
        return abs(analytic - estimate) / std_error
    return 0.0 if analytic == estimate else math.inf


class ExperimentManager:
    """パラメータスイープと検証レポートを担当するクラス"""

    def __init__(
        self,
        monte_carlo_manager: Optional[MonteCarloManager] = None,
        parallel_handler: Optional[ParallelHandler] = None,
    ):
        """ExperimentManagerの初期化

        Args:
            monte_carlo_manager (Optional[MonteCarloManager], optional): 検証レポート用のモンテカルロマネージャー
            parallel_handler (Optional[ParallelHandler], optional): 格子点の並列実行ハンドラー
        """
        self.parallel_handler = parallel_handler or ParallelHandler()
        self.monte_carlo_manager = monte_carlo_manager or MonteCarloManager()

    def run_sweep(self, spec: SweepSpec, strict: bool = False) -> SweepTable:
        """スイープを実行する

        行の順序は格子の順序で決まり、ワーカー数には依存しない。

        Args:
            spec (SweepSpec): スイープ設定
            strict (bool, optional): Trueなら最初の失敗で例外を送出

        Returns:
            SweepTable: 列名・行・要約
        """
        points = sweep_points(spec)
        logger.info(f"スイープを開始します: {spec.kind.value} ({len(points)}点)")
        tasks = [SweepPoint(spec, coords, strict) for coords in points]
        rows = self.parallel_handler.map_ordered(run_sweep_point, tasks)
        summary = _sweep_summary(spec, rows)
        logger.info(f"スイープが完了しました: {spec.kind.value} (失敗 {summary['failed']}点)")
        return SweepTable(kind=spec.kind, columns=sweep_columns(spec), rows=rows, summary=summary)

    def validation_report(self, params: ScenarioParams, samples: int, seed: int) -> OracleReport:
        """n = 0..N-1 の全てについて ρ・R・φ の解析値とモンテカルロ推定値を比較する

        Args:
            params (ScenarioParams): シナリオ
            samples (int): サンプル数
            seed (int): 乱数シード

        Returns:
            OracleReport: 各比較と、標準誤差単位での最大乖離
        """
        checks: List[OracleCheck] = []
        for n in range(params.n_channels):
            strategy = equal_split_strategy(params, n)
            analytic = _evaluate(params, n)
            rate = jammed_rate(params, strategy).rate
            rho = 0.0 if n == 0 else rho_quadrature(params, n).rho

            simulated = self.monte_carlo_manager.estimate_all(params, strategy, samples, seed, rate=rate)
            estimates = {
                "rho": (rho, simulated.own_goal),
                "rate": (rate, simulated.rate),
                "phi": (analytic.phi, simulated.phi),
            }
            for quantity, (value, estimate) in estimates.items():
                checks.append(
                    OracleCheck(
                        quantity=quantity,
                        n=n,
                        analytic=value,
                        monte_carlo=estimate.value,
                        std_error=estimate.std_error,
                        deviation_se=_deviation(value, estimate.value, estimate.std_error),
                    )
                )
            logger.debug(f"検証 n={n}: φ解析値={analytic.phi:.6g}, φ推定値={estimates['phi'][1].value:.6g}")

        max_deviation = max(check.deviation_se for check in checks)
        return OracleReport(checks=checks, max_deviation_se=max_deviation, samples=samples, seed=seed)

