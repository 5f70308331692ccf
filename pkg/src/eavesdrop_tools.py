"""
ジャミング支援盗聴ファサードモジュール

解析計算・モンテカルロ推定・スイープを提供する各フィーチャーへの窓口となるクラスを提供します。
"""

import logging
from typing import Optional

from .config import RuntimeSettings, get_settings
from .models import (
    JammingStrategy,
    LinkEvaluation,
    MonteCarloEstimate,
    OptimizationOutcome,
    OracleReport,
    RegimeThresholds,
    ScenarioParams,
    SweepSpec,
    SweepTable,
    TwoWayOutcome,
)
from .eavesdrop_features import objective
from .eavesdrop_features.cache_handler import ResultCacheHandler
from .eavesdrop_features.experiment_manager import ExperimentManager
from .eavesdrop_features.montecarlo_manager import MonteCarloManager
from .eavesdrop_features.parallel_handler import ParallelHandler

# ロガーの設定
logger = logging.getLogger(__name__)


class EavesdropTools:
    """ジャミング支援盗聴の計算機能へのアクセスを提供するファサードクラス"""

    def __init__(self, settings: Optional[RuntimeSettings] = None, workers: Optional[int] = None):
        """EavesdropToolsの初期化

        Args:
            settings (Optional[RuntimeSettings], optional): 実行時設定。Noneなら環境変数から読み込む。
            workers (Optional[int], optional): ワーカー数の上書き
        """
        self.settings = settings or get_settings()

        # 共通コンポーネントをインスタンス化
        self.cache_handler: Optional[ResultCacheHandler] = None
        if self.settings.cache_enabled:
            self.cache_handler = ResultCacheHandler(self.settings.cache_path, self.settings.cache_max_age)
        self.parallel_handler = ParallelHandler(workers or self.settings.workers)

        # 各フィーチャーマネージャーをインスタンス化
        self.monte_carlo_manager = MonteCarloManager(
            cache_handler=self.cache_handler,
            parallel_handler=self.parallel_handler,
            chunk_size=self.settings.chunk_size,
        )
        self.experiment_manager = ExperimentManager(
            monte_carlo_manager=self.monte_carlo_manager,
            parallel_handler=self.parallel_handler,
        )

    # --- 解析計算（objectiveへの委譲） ---
    def evaluate(self, params: ScenarioParams, n: int) -> LinkEvaluation:
        """n = 0 なら受動、それ以外は n 本等分配ジャミングの評価"""
        if n == 0:
            return objective.phi_passive(params)
        return objective.phi_jamming(params, n)

    def optimize_one_way(self, params: ScenarioParams) -> OptimizationOutcome:
        return objective.optimize_one_way(params)

    def optimize_two_way(
        self,
        params: ScenarioParams,
        weight_ab: float = 1.0,
        weight_ba: float = 1.0,
        classify_regime: bool = False,
    ) -> TwoWayOutcome:
        return objective.optimize_two_way(params, weight_ab, weight_ba, classify_regime)

    def q_threshold(self, params: ScenarioParams) -> float:
        return objective.q_threshold(params)

    def regime_thresholds(self, params: ScenarioParams) -> RegimeThresholds:
        return objective.regime_thresholds(params)

    # --- モンテカルロ推定（MonteCarloManagerへの委譲） ---
    def estimate_own_goal(
        self, params: ScenarioParams, strategy: JammingStrategy, samples: int, seed: int
    ) -> MonteCarloEstimate:
        return self.monte_carlo_manager.estimate_own_goal(params, strategy, samples, seed)

    def estimate_rate(
        self, params: ScenarioParams, strategy: JammingStrategy, samples: int, seed: int
    ) -> MonteCarloEstimate:
        return self.monte_carlo_manager.estimate_rate(params, strategy, samples, seed)

    def estimate_phi(
        self,
        params: ScenarioParams,
        strategy: JammingStrategy,
        samples: int,
        seed: int,
        use_empirical_rate: bool = False,
    ) -> MonteCarloEstimate:
        return self.monte_carlo_manager.estimate_phi(
            params, strategy, samples, seed, use_empirical_rate=use_empirical_rate
        )

    # --- スイープと検証（ExperimentManagerへの委譲） ---
    def run_sweep(self, spec: SweepSpec, strict: bool = False) -> SweepTable:
        return self.experiment_manager.run_sweep(spec, strict=strict)

    def validation_report(self, params: ScenarioParams, samples: int, seed: int) -> OracleReport:
        return self.experiment_manager.validation_report(params, samples, seed)
