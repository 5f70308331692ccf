# src/commands/common.py
"""
サブコマンド共通のオプションとヘルパー
"""

import argparse
from typing import Any, Dict, List, Optional, Tuple

from ..config import LoadedScenario, build_scenario, get_settings, load_scenario
from ..eavesdrop_client import get_eavesdrop_tools
from ..eavesdrop_tools import EavesdropTools
from ..eavesdrop_features.scenario import to_db
from ..exceptions import ScenarioError
from ..models import ScenarioParams
from .output import OUTPUT_FORMATS, emit


def add_scenario_arguments(parser: argparse.ArgumentParser, required: bool = True) -> None:
    """シナリオファイルとオーバーライドのオプションを追加"""
    group = parser.add_argument_group("シナリオ")
    group.add_argument("--scenario", required=required, help="シナリオJSONファイルのパス")
    group.add_argument("--n-channels", type=int, dest="n_channels", help="チャネル数 N")
    group.add_argument("--lambda-a", type=float, dest="lambda_a", help="ST→SR 利得のレート")
    group.add_argument("--lambda-b", type=float, dest="lambda_b", help="ST→モニター 利得のレート")
    group.add_argument("--lambda-c", type=float, dest="lambda_c", help="モニター→SR 利得のレート")
    group.add_argument("--tx-power-db", type=float, dest="tx_power_db", help="送信電力 P [dB]")
    group.add_argument("--qmax-db", type=float, dest="jam_budget_db", help="ジャミング予算 Q_max [dB]")
    group.add_argument("--delta", type=float, dest="outage_target", help="アウテージ目標 δ")


def add_output_arguments(parser: argparse.ArgumentParser) -> None:
    """出力形式・出力先のオプションを追加"""
    group = parser.add_argument_group("出力")
    group.add_argument("--format", choices=OUTPUT_FORMATS, default="csv", dest="output_format", help="出力形式")
    group.add_argument("--out", default=None, help="出力ファイル（省略時は標準出力）")


def add_sampling_arguments(parser: argparse.ArgumentParser) -> None:
    """モンテカルロのシード・サンプル数のオプションを追加"""
    group = parser.add_argument_group("モンテカルロ")
    group.add_argument("--seed", type=int, default=None, help="乱数シード（0 以上 2^64 未満）")
    group.add_argument("--samples", type=int, default=None, help="サンプル数（10^4 以上）")


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    keys = ("n_channels", "lambda_a", "lambda_b", "lambda_c", "tx_power_db", "jam_budget_db", "outage_target")
    return {key: getattr(args, key, None) for key in keys}


def scenario_dict(params: ScenarioParams) -> Dict[str, Any]:
    """ScenarioParams をシナリオファイルと同じ形式の辞書に戻す"""
    return {
        "n_channels": params.n_channels,
        "lambda_a": params.lambda_a,
        "lambda_b": params.lambda_b,
        "lambda_c": params.lambda_c,
        "tx_power_db": to_db(params.tx_power),
        "jam_budget_db": to_db(params.jam_budget) if params.jam_budget > 0 else -300.0,
        "noise_sr": params.noise_sr,
        "noise_monitor": params.noise_monitor,
        "noise_st": params.noise_st,
        "outage_target": params.outage_target,
    }


def load_effective_scenario(
    args: argparse.Namespace, fallback: Optional[ScenarioParams] = None
) -> LoadedScenario:
    """シナリオファイル（なければ fallback）に CLI オーバーライドを適用する

    Raises:
        ScenarioError: シナリオが指定されていない、または不正な場合
    """
    if getattr(args, "scenario", None):
        return load_scenario(args.scenario, _overrides(args))
    if fallback is None:
        raise ScenarioError("--scenario を指定してください")
    return build_scenario(scenario_dict(fallback), _overrides(args))


def resolve_sampling(args: argparse.Namespace, loaded: Optional[LoadedScenario] = None) -> Tuple[int, int]:
    """(seed, samples) を CLI > シナリオファイル > 実行時設定 の順に決める"""
    settings = get_settings()
    seed = args.seed if args.seed is not None else (loaded.seed if loaded and loaded.seed is not None else settings.seed)
    samples = (
        args.samples
        if args.samples is not None
        else (loaded.samples if loaded and loaded.samples is not None else settings.samples)
    )
    if not 0 <= seed < 2**64:
        raise ScenarioError(f"シードは0以上2^64未満である必要があります: {seed}")
    if samples < 10_000:
        raise ScenarioError(f"サンプル数は10000以上である必要があります: {samples}")
    return seed, samples


def tools_for(args: argparse.Namespace) -> EavesdropTools:
    """--workers を考慮して EavesdropTools を取得"""
    return get_eavesdrop_tools(getattr(args, "workers", None))


def report(
    args: argparse.Namespace,
    loaded: LoadedScenario,
    summary: Dict[str, Any],
    columns: List[str],
    rows: List[Dict[str, Any]],
) -> None:
    """実効シナリオと要約をヘッダーとして結果を書き出す"""
    header = {"command": args.command, **loaded.header(), **summary}
    emit(args.output_format, args.out, header, columns, rows)
