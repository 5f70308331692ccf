"""
テスト共通のフィクスチャ

2チャネル・片方向・双方向の3つの基準シナリオを提供します。
"""

import json

import pytest

from src.config import clear_settings_cache
from src.eavesdrop_client import clear_eavesdrop_tools_cache
from src.models import ScenarioParams


@pytest.fixture
def two_channel_params() -> ScenarioParams:
    """N = 2, λ_a = 1, λ_b = λ_c = 3, P = 10 dB, Q_max = 20 dB"""
    return ScenarioParams(
        n_channels=2,
        lambda_a=1.0,
        lambda_b=3.0,
        lambda_c=3.0,
        tx_power=10.0,
        jam_budget=100.0,
        noise_sr=1.0,
        noise_monitor=1.0,
        outage_target=0.05,
    )


@pytest.fixture
def one_way_params() -> ScenarioParams:
    """N = 8, λ_a = λ_b = 1, λ_c = 3, P = 10 dB, Q_max = 20 dB"""
    return ScenarioParams(
        n_channels=8,
        lambda_a=1.0,
        lambda_b=1.0,
        lambda_c=3.0,
        tx_power=10.0,
        jam_budget=100.0,
        noise_sr=1.0,
        noise_monitor=1.0,
        outage_target=0.05,
    )


@pytest.fixture
def two_way_params() -> ScenarioParams:
    """N = 8, λ_a = 5, λ_b = 1, λ_c = 4, P = 10 dB, Q_max = 20 dB"""
    return ScenarioParams(
        n_channels=8,
        lambda_a=5.0,
        lambda_b=1.0,
        lambda_c=4.0,
        tx_power=10.0,
        jam_budget=100.0,
        noise_sr=1.0,
        noise_monitor=1.0,
        outage_target=0.05,
    )


@pytest.fixture
def scenario_file(tmp_path):
    """シナリオ辞書をJSONファイルに書き出してパスを返すファクトリー"""

    def _write(data: dict, name: str = "scenario.json") -> str:
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    return _write


@pytest.fixture(autouse=True)
def _isolated_settings(monkeypatch, tmp_path):
    """テストごとに環境変数由来の設定とファサードを作り直す"""
    for key in (
        "EAVESDROP_LOG_LEVEL",
        "EAVESDROP_SEED",
        "EAVESDROP_SAMPLES",
        "EAVESDROP_CHUNK_SIZE",
        "EAVESDROP_WORKERS",
        "EAVESDROP_CACHE_ENABLED",
        "EAVESDROP_CACHE_PATH",
        "EAVESDROP_CACHE_MAX_AGE",
    ):
        monkeypatch.delenv(key, raising=False)
    monkeypatch.setenv("EAVESDROP_CACHE_PATH", str(tmp_path / "cache"))
    clear_settings_cache()
    clear_eavesdrop_tools_cache()
    yield
    clear_settings_cache()
    clear_eavesdrop_tools_cache()
