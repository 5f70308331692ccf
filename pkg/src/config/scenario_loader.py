"""
シナリオ読み込みモジュール

シナリオJSONファイルを読み込み、CLIオーバーライドを適用して
実効シナリオ (ScenarioParams) を構築します。
"""

import json
import logging
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ..exceptions import ScenarioError
from ..models import Placement, ScenarioParams
from ..eavesdrop_features.scenario import from_db, lambdas_from_placement

# ロガーの設定
logger = logging.getLogger(__name__)

# CLI で上書きできるキー
OVERRIDE_KEYS = (
    "n_channels",
    "lambda_a",
    "lambda_b",
    "lambda_c",
    "tx_power_db",
    "jam_budget_db",
    "outage_target",
)
_LAMBDA_KEYS = ("lambda_a", "lambda_b", "lambda_c")


class ScenarioFile(BaseModel):
    """シナリオJSONファイルのスキーマ（未知のキーは拒否）"""

    model_config = ConfigDict(extra="forbid")

    n_channels: int
    lambda_a: Optional[float] = None
    lambda_b: Optional[float] = None
    lambda_c: Optional[float] = None
    placement: Optional[Placement] = None
    tx_power_db: float
    jam_budget_db: float
    noise_sr: float = 1.0
    noise_monitor: float = 1.0
    noise_st: float = 1.0
    outage_target: float
    seed: Optional[int] = Field(default=None, ge=0, lt=2**64)
    samples: Optional[int] = Field(default=None, ge=10_000)


class LoadedScenario(BaseModel):
    """オーバーライド適用後の実効シナリオ"""

    params: ScenarioParams
    tx_power_db: float
    jam_budget_db: float
    seed: Optional[int] = None
    samples: Optional[int] = None

    def header(self) -> Dict[str, Any]:
        """出力ヘッダーに書き出すシナリオ情報"""
        values: Dict[str, Any] = self.params.model_dump()
        values["tx_power_db"] = self.tx_power_db
        values["jam_budget_db"] = self.jam_budget_db
        return values


def build_scenario(raw: Dict[str, Any], overrides: Optional[Dict[str, Any]] = None) -> LoadedScenario:
    """辞書とオーバーライドから実効シナリオを構築

    配置 (placement) がある場合はファイル中の λ より優先し、
    CLI で明示された λ はさらにそれより優先する。

    Args:
        raw (Dict[str, Any]): シナリオファイルの内容
        overrides (Optional[Dict[str, Any]], optional): CLIオーバーライド（None の値は無視）

    Returns:
        LoadedScenario: 実効シナリオ

    Raises:
        ScenarioError: キーや値が不正な場合
    """
    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
    unknown = set(overrides) - set(OVERRIDE_KEYS)
    if unknown:
        raise ScenarioError(f"不明なオーバーライドです: {sorted(unknown)}")

    merged = {**raw, **overrides}
    try:
        scenario_file = ScenarioFile(**merged)
    except ValidationError as e:
        raise ScenarioError(f"シナリオの形式が不正です: {e}")

    lambdas = {key: getattr(scenario_file, key) for key in _LAMBDA_KEYS}
    if scenario_file.placement is not None:
        placed = lambdas_from_placement(scenario_file.placement)
        lambdas = dict(zip(_LAMBDA_KEYS, placed))
        logger.debug(f"配置から利得レートを算出しました: {lambdas}")
        for key in _LAMBDA_KEYS:
            if key in overrides:
                lambdas[key] = overrides[key]

    missing = [key for key, value in lambdas.items() if value is None]
    if missing:
        raise ScenarioError(f"λ の値か placement が必要です: {missing}")

    try:
        params = ScenarioParams(
            n_channels=scenario_file.n_channels,
            tx_power=from_db(scenario_file.tx_power_db),
            jam_budget=from_db(scenario_file.jam_budget_db),
            noise_sr=scenario_file.noise_sr,
            noise_monitor=scenario_file.noise_monitor,
            noise_st=scenario_file.noise_st,
            outage_target=scenario_file.outage_target,
            **lambdas,
        )
    except ValidationError as e:
        raise ScenarioError(f"シナリオの値が不正です: {e}")

    return LoadedScenario(
        params=params,
        tx_power_db=scenario_file.tx_power_db,
        jam_budget_db=scenario_file.jam_budget_db,
        seed=scenario_file.seed,
        samples=scenario_file.samples,
    )


def load_scenario(path: str, overrides: Optional[Dict[str, Any]] = None) -> LoadedScenario:
    """シナリオJSONファイルを読み込む

    Raises:
        ScenarioError: ファイルが存在しない、JSONとして不正、またはスキーマ違反の場合
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = json.load(f)
    except FileNotFoundError:
        raise ScenarioError(f"シナリオファイルが見つかりません: {path}")
    except json.JSONDecodeError as e:
        raise ScenarioError(f"シナリオファイルのJSONが不正です ({path}): {e}")

    if not isinstance(raw, dict):
        raise ScenarioError(f"シナリオファイルの最上位はオブジェクトである必要があります: {path}")

    logger.info(f"シナリオファイルを読み込みました: {path}")
    return build_scenario(raw, overrides)
