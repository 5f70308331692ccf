"""
ジャミング支援盗聴の数値計算を提供するモジュールとマネージャークラス群のパッケージ

このパッケージには、以下のモジュールとクラスが含まれています：
- scenario: dB変換、配置からの利得レート、向きの反転
- specfun: 指数積分と不完全ガンマ関数
- fading: SNR/SINRの分布関数
- rates: アウテージ目標を満たすレート
- owngoal: オウンゴール確率
- objective: 非アウテージ盗聴確率と最適化
- ResultCacheHandler: モンテカルロ結果のキャッシング
- ParallelHandler: 計算タスクの並列実行
- MonteCarloManager: モンテカルロ推定
- ExperimentManager: パラメータスイープと検証レポート
"""

__all__ = [
    "ResultCacheHandler",
    "ParallelHandler",
    "MonteCarloManager",
    "ExperimentManager",
]

from .cache_handler import ResultCacheHandler
from .parallel_handler import ParallelHandler
from .montecarlo_manager import MonteCarloManager
from .experiment_manager import ExperimentManager
