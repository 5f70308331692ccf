"""
設定関連モジュール

このパッケージには、実行時設定とシナリオファイルの読み込みに関連するクラスとユーティリティが含まれています。
- RuntimeSettings: 環境変数から読み込む実行時設定
- ScenarioFile: シナリオJSONファイルのスキーマ
- LoadedScenario: オーバーライド適用後の実効シナリオ
"""

import os
import logging

# ロガーの設定
logger = logging.getLogger(__name__)

# 定数
DEFAULT_CACHE_PATH = os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(__file__))), "cache")
DEFAULT_CACHE_MAX_AGE = 86400  # モンテカルロ結果キャッシュの有効期限（秒）


# クラスのインポート（循環インポートを避けるためにファイルの最後に配置）
from .settings import RuntimeSettings, get_settings, clear_settings_cache
from .scenario_loader import ScenarioFile, LoadedScenario, load_scenario, build_scenario

__all__ = [
    "RuntimeSettings",
    "get_settings",
    "clear_settings_cache",
    "ScenarioFile",
    "LoadedScenario",
    "load_scenario",
    "build_scenario",
    "DEFAULT_CACHE_PATH",
    "DEFAULT_CACHE_MAX_AGE",
]
