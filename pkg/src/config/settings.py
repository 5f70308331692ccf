"""
実行時設定モジュール

環境変数（および .env ファイル）から実行時設定を読み込みます。
優先順位は CLI フラグ > シナリオファイル > 環境変数 > 既定値 です。
"""

import os
import logging
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from ..exceptions import ScenarioError
from . import DEFAULT_CACHE_MAX_AGE, DEFAULT_CACHE_PATH

# 環境変数の読み込み
load_dotenv()

# ロガーの設定
logger = logging.getLogger(__name__)

_TRUE_VALUES = {"1", "true", "yes", "on"}
_LOG_LEVELS = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}


class RuntimeSettings(BaseModel):
    """実行時設定"""

    model_config = ConfigDict(frozen=True)

    log_level: str = "WARNING"
    seed: int = Field(default=20170601, ge=0, lt=2**64)
    samples: int = Field(default=1_000_000, ge=10_000)
    chunk_size: int = Field(default=65536, ge=1024)
    workers: int = Field(default=1, ge=1)
    cache_enabled: bool = False
    cache_path: str = DEFAULT_CACHE_PATH
    cache_max_age: int = Field(default=DEFAULT_CACHE_MAX_AGE, ge=0)

    @field_validator("log_level")
    @classmethod
    def _normalize_level(cls, value: str) -> str:
        level = value.upper()
        if level not in _LOG_LEVELS:
            raise ValueError(f"不明なログレベルです: {value}")
        return level


@lru_cache(maxsize=1)
def get_settings() -> RuntimeSettings:
    """環境変数から RuntimeSettings を生成

    LRUキャッシュにより、同一インスタンスを再利用します。

    Returns:
        RuntimeSettings: 実行時設定

    Raises:
        ScenarioError: 環境変数の値が不正な場合
    """
    raw = {
        "log_level": os.getenv("EAVESDROP_LOG_LEVEL", "WARNING"),
        "seed": os.getenv("EAVESDROP_SEED", "20170601"),
        "samples": os.getenv("EAVESDROP_SAMPLES", "1000000"),
        "chunk_size": os.getenv("EAVESDROP_CHUNK_SIZE", "65536"),
        "workers": os.getenv("EAVESDROP_WORKERS", "1"),
        "cache_enabled": os.getenv("EAVESDROP_CACHE_ENABLED", "false").strip().lower() in _TRUE_VALUES,
        "cache_path": os.getenv("EAVESDROP_CACHE_PATH", DEFAULT_CACHE_PATH),
        "cache_max_age": os.getenv("EAVESDROP_CACHE_MAX_AGE", str(DEFAULT_CACHE_MAX_AGE)),
    }
    try:
        settings = RuntimeSettings(**raw)
    except ValidationError as e:
        logger.error(f"環境変数の設定が不正です: {e}")
        raise ScenarioError(f"環境変数の設定が不正です: {e}")
    logger.debug(f"実行時設定を読み込みました: {settings}")
    return settings


def clear_settings_cache():
    """
    キャッシュをクリアして設定を再読み込みさせる
    主にテスト用途で使用します。
    """
    get_settings.cache_clear()
