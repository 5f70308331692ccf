"""
Pydanticモデル定義

盗聴シナリオのパラメータ、ジャミング戦略、評価結果、スイープ設定などの
データ構造を表現するモデルを定義します。
"""

import math
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


Point = Tuple[float, float]


class ScenarioParams(BaseModel):
    """1つの監視シナリオの物理パラメータ（全て線形単位）"""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    n_channels: int = Field(ge=2, description="並列チャネル数 N")
    lambda_a: float = Field(gt=0, description="ST→SR 利得のレート")
    lambda_b: float = Field(gt=0, description="ST→モニター 利得のレート")
    lambda_c: float = Field(gt=0, description="モニター→SR 利得のレート")
    tx_power: float = Field(gt=0, description="送信電力 P")
    jam_budget: float = Field(ge=0, description="ジャミング総電力 Q_max")
    noise_sr: float = Field(gt=0, description="SRの雑音電力 σ_a²")
    noise_monitor: float = Field(gt=0, description="モニターの雑音電力 σ_b²")
    noise_st: float = Field(default=1.0, gt=0, description="STの雑音電力 σ_c²（保持するのみで、どの式でも使わない）")
    outage_target: float = Field(gt=0, lt=1, description="アウテージ目標 δ")

    def with_budget(self, jam_budget: float) -> "ScenarioParams":
        """ジャミング予算だけを差し替えたコピーを返す"""
        return ScenarioParams(**{**self.model_dump(), "jam_budget": jam_budget})

    def with_channels(self, n_channels: int) -> "ScenarioParams":
        """チャネル数だけを差し替えたコピーを返す"""
        return ScenarioParams(**{**self.model_dump(), "n_channels": n_channels})

    def with_lambdas(self, lambda_a: float, lambda_b: float, lambda_c: float) -> "ScenarioParams":
        """3つの利得レートを差し替えたコピーを返す"""
        return ScenarioParams(
            **{**self.model_dump(), "lambda_a": lambda_a, "lambda_b": lambda_b, "lambda_c": lambda_c}
        )


class JammingStrategy(BaseModel):
    """ジャミング戦略

    先頭 jammed_count 本のチャネルにそれぞれ powers[i] の電力でジャミングする。
    jammed_count == 0 は受動盗聴を表す。
    """

    model_config = ConfigDict(frozen=True)

    jammed_count: int = Field(ge=0)
    powers: Tuple[float, ...] = ()

    @field_validator("powers")
    @classmethod
    def _check_powers(cls, value: Tuple[float, ...]) -> Tuple[float, ...]:
        for power in value:
            if math.isnan(power) or power < 0:
                raise ValueError(f"ジャミング電力は0以上である必要があります: {power}")
        return value

    @model_validator(mode="after")
    def _check_length(self) -> "JammingStrategy":
        if len(self.powers) != self.jammed_count:
            raise ValueError(
                f"powers の長さ ({len(self.powers)}) が jammed_count ({self.jammed_count}) と一致しません"
            )
        return self

    @classmethod
    def passive(cls) -> "JammingStrategy":
        """受動盗聴（ジャミングなし）"""
        return cls(jammed_count=0, powers=())

    @classmethod
    def equal_split(cls, jammed_count: int, jam_budget: float) -> "JammingStrategy":
        """予算を jammed_count 本に等分配した戦略"""
        if jammed_count == 0:
            return cls.passive()
        share = jam_budget / jammed_count
        return cls(jammed_count=jammed_count, powers=tuple([share] * jammed_count))

    @property
    def total_power(self) -> float:
        return math.fsum(self.powers)


class Placement(BaseModel):
    """平面上のノード配置（ST・SR・モニター）"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    st_pos: Point
    sr_pos: Point
    monitor_pos: Point

    @model_validator(mode="after")
    def _check_distinct(self) -> "Placement":
        points = {"st_pos": self.st_pos, "sr_pos": self.sr_pos, "monitor_pos": self.monitor_pos}
        names = list(points)
        for i, first in enumerate(names):
            for second in names[i + 1:]:
                if tuple(points[first]) == tuple(points[second]):
                    raise ValueError(f"{first} と {second} が同じ位置にあります")
        return self


class RateSolution(BaseModel):
    """求根で得たアウテージレート"""

    model_config = ConfigDict(frozen=True)

    rate: float = Field(ge=0, description="bit/s/Hz")
    residual: float = Field(description="F(2^R - 1) - δ")
    iterations: int = Field(ge=0)


class OwnGoalMethod(str, Enum):
    """オウンゴール確率の計算方法"""
    CLOSED_FORM_TWO_CHANNEL = "closed_form_two_channel"
    CLOSED_FORM_SUM = "closed_form_sum"
    QUADRATURE = "quadrature"


class OwnGoalValue(BaseModel):
    """オウンゴール確率 ρ と計算方法"""

    model_config = ConfigDict(frozen=True)

    rho: float = Field(ge=0, le=1)
    method: OwnGoalMethod


class LinkEvaluation(BaseModel):
    """片方向リンクの1つのジャミング本数 n に対する評価結果"""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=0, description="ジャミング本数（0は受動盗聴）")
    rho: float = Field(ge=0, le=1)
    rate: float = Field(ge=0)
    non_outage_monitor: float = Field(ge=0, le=1)
    phi: float = Field(ge=0, le=1)


class Scheme(str, Enum):
    """盗聴方式"""
    PASSIVE = "passive"
    JAMMING = "jamming"


class OptimizationOutcome(BaseModel):
    """片方向の最適化結果"""

    chosen_scheme: Scheme
    n_star: Optional[int] = Field(default=None, description="jamming の場合のみ設定")
    phi_star: float
    phi_passive: float
    passive: LinkEvaluation
    profile: List[LinkEvaluation]
    n_jam_best: int = Field(ge=1, description="ジャミング方式内での最良本数")


class Regime(str, Enum):
    """双方向最適化の予算領域"""
    LOW_BUDGET = "low_budget"
    HIGH_BUDGET = "high_budget"
    INTERIOR = "interior"


class RegimeThresholds(BaseModel):
    """予算領域の境界（各方向の交点も保持）"""

    q_lower: float = Field(gt=0)
    q_upper: float = Field(gt=0)
    q_lower_ab: float = Field(gt=0)
    q_lower_ba: float = Field(gt=0)
    q_upper_ab: float = Field(gt=0)
    q_upper_ba: float = Field(gt=0)


class TwoWayOutcome(BaseModel):
    """双方向の最大最小最適化の結果"""

    chosen_scheme: Scheme
    n_star: Optional[int] = None
    phi_minmax: float
    passive_ab: LinkEvaluation
    passive_ba: LinkEvaluation
    profile_ab: List[LinkEvaluation]
    profile_ba: List[LinkEvaluation]
    one_way_ab: OptimizationOutcome
    one_way_ba: OptimizationOutcome
    weight_ab: float = 1.0
    weight_ba: float = 1.0
    regime: Optional[Regime] = None
    thresholds: Optional[RegimeThresholds] = None


class MonteCarloEstimate(BaseModel):
    """モンテカルロ推定値"""

    value: float
    std_error: float = Field(ge=0)
    samples: int = Field(gt=0)
    seed: int = Field(ge=0, lt=2**64)


class BlockDraw(BaseModel):
    """1ブロック分のシミュレーション結果"""

    chosen_channel: int = Field(ge=0)
    sinr: float = Field(ge=0)
    monitor_rate: float = Field(ge=0)
    own_goal: bool


class SweepKind(str, Enum):
    """スイープの種類"""
    PHI_VS_Q = "phi_vs_q"
    PROFILE_VS_N = "profile_vs_n"
    TWOWAY_PROFILE = "twoway_profile"
    PHI_VS_GAIN = "phi_vs_gain"
    PLACEMENT_GRID = "placement_grid"
    TWOWAY_PATH = "twoway_path"


class GridScale(str, Enum):
    LINEAR = "linear"
    LOG = "log"


class AxisSpec(BaseModel):
    """1次元のスイープ軸"""

    model_config = ConfigDict(frozen=True)

    start: float
    stop: float
    count: int = Field(ge=2)
    scale: GridScale = GridScale.LINEAR

    @model_validator(mode="after")
    def _check_log_scale(self) -> "AxisSpec":
        if self.scale == GridScale.LOG and (self.start <= 0 or self.stop <= 0):
            raise ValueError("対数軸の端点は正である必要があります")
        return self

    def values(self) -> List[float]:
        """軸上の点を返す（端点を含む）"""
        if self.scale == GridScale.LOG:
            grid = np.geomspace(self.start, self.stop, self.count)
        else:
            grid = np.linspace(self.start, self.stop, self.count)
        return [float(v) for v in grid]


class SweepSpec(BaseModel):
    """パラメータスイープの設定"""

    kind: SweepKind
    base: ScenarioParams
    axis: Optional[AxisSpec] = None
    axis_y: Optional[AxisSpec] = None
    q_db_values: List[float] = Field(default_factory=list)
    n_channels_values: List[int] = Field(default_factory=list)
    fixed_n: int = Field(default=1, ge=1)
    endpoint_a: Optional[Point] = None
    endpoint_b: Optional[Point] = None
    path_y: float = 0.0
    validation: bool = False
    samples: int = Field(default=100_000, ge=10_000)
    seed: int = Field(default=20170601, ge=0, lt=2**64)

    @model_validator(mode="after")
    def _check_required_fields(self) -> "SweepSpec":
        needs_axis = {
            SweepKind.PHI_VS_Q,
            SweepKind.PHI_VS_GAIN,
            SweepKind.PLACEMENT_GRID,
            SweepKind.TWOWAY_PATH,
        }
        if self.kind in needs_axis and self.axis is None:
            raise ValueError(f"{self.kind.value} には axis が必要です")
        if self.kind == SweepKind.PLACEMENT_GRID and self.axis_y is None:
            raise ValueError("placement_grid には axis_y が必要です")
        if self.kind in (SweepKind.PLACEMENT_GRID, SweepKind.TWOWAY_PATH):
            if self.endpoint_a is None or self.endpoint_b is None:
                raise ValueError(f"{self.kind.value} には endpoint_a と endpoint_b が必要です")
        if self.kind == SweepKind.PHI_VS_Q and self.fixed_n > self.base.n_channels - 1:
            raise ValueError(
                f"fixed_n ({self.fixed_n}) は N-1 ({self.base.n_channels - 1}) 以下である必要があります"
            )
        if self.kind == SweepKind.PROFILE_VS_N and not self.q_db_values and self.base.jam_budget <= 0:
            raise ValueError("profile_vs_n で q_db_values を省略する場合、基準シナリオの Q_max は正である必要があります")
        for n_channels in self.n_channels_values:
            if n_channels < 2:
                raise ValueError(f"チャネル数は2以上である必要があります: {n_channels}")
        return self


class SweepTable(BaseModel):
    """スイープ結果の表"""

    kind: SweepKind
    columns: List[str]
    rows: List[Dict[str, Any]]
    summary: Dict[str, Any] = Field(default_factory=dict)


class OracleCheck(BaseModel):
    """解析値とモンテカルロ推定値の比較1件"""

    quantity: str
    n: int = Field(ge=0)
    analytic: float
    monte_carlo: float
    std_error: float = Field(ge=0)
    deviation_se: float = Field(ge=0)


class OracleReport(BaseModel):
    """解析値とモンテカルロ推定値の比較レポート"""

    checks: List[OracleCheck]
    max_deviation_se: float = Field(ge=0)
    samples: int
    seed: int
