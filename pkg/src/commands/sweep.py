# src/commands/sweep.py
"""
sweep サブコマンド
"""

import argparse
import logging
from typing import Any, Dict, Tuple

from pydantic import ValidationError

from ..eavesdrop_features.experiment_manager import PRESET_NAMES, sweep_preset
from ..config import LoadedScenario
from ..exceptions import ScenarioError
from ..models import GridScale, SweepKind, SweepSpec
from .common import (
    add_output_arguments,
    add_sampling_arguments,
    add_scenario_arguments,
    load_effective_scenario,
    report,
    resolve_sampling,
    tools_for,
)
from .svg_renderer import write_svg

# ロガーの設定
logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("sweep", help="パラメータスイープを実行")
    add_scenario_arguments(parser, required=False)
    add_output_arguments(parser)
    add_sampling_arguments(parser)
    parser.add_argument("--kind", choices=[kind.value for kind in SweepKind], help="スイープの種類")
    parser.add_argument("--preset", choices=PRESET_NAMES, help="既定のスイープ設定")
    parser.add_argument("--axis", nargs=3, type=float, metavar=("START", "STOP", "COUNT"), help="主軸")
    parser.add_argument("--axis-scale", choices=[scale.value for scale in GridScale], default=None, help="主軸の目盛り")
    parser.add_argument("--axis-y", nargs=3, type=float, metavar=("START", "STOP", "COUNT"), help="配置格子の y 軸")
    parser.add_argument("--q-db-list", nargs="+", type=float, help="profile_vs_n で比較する予算 [dB]")
    parser.add_argument("--n-list", nargs="+", type=int, help="phi_vs_gain で比較するチャネル数")
    parser.add_argument("--fixed-n", type=int, help="phi_vs_q で評価するジャミング本数")
    parser.add_argument("--endpoint-a", nargs=2, type=float, metavar=("X", "Y"), help="ST（双方向ではユーザーA）の位置")
    parser.add_argument("--endpoint-b", nargs=2, type=float, metavar=("X", "Y"), help="SR（双方向ではユーザーB）の位置")
    parser.add_argument("--path-y", type=float, help="twoway_path でのモニターの y 座標")
    parser.add_argument("--validate", action="store_true", help="モンテカルロ検証列を追加")
    parser.add_argument("--svg", default=None, help="SVGの出力先")
    parser.add_argument("--strict", action="store_true", help="最初の失敗で中断する")
    parser.set_defaults(handler=run_sweep)


def _axis(values, scale) -> Dict[str, Any]:
    start, stop, count = values
    axis = {"start": start, "stop": stop, "count": int(count)}
    if scale is not None:
        axis["scale"] = scale
    return axis


def build_sweep_spec(args: argparse.Namespace) -> Tuple[SweepSpec, LoadedScenario]:
    """プリセット・シナリオ・CLI オプションから SweepSpec を組み立てる

    Raises:
        ScenarioError: 種類もプリセットも指定されていない、または設定が不正な場合
    """
    if args.preset is None and args.kind is None:
        raise ScenarioError("--kind か --preset を指定してください")

    preset = sweep_preset(args.preset) if args.preset else None
    loaded = load_effective_scenario(args, fallback=preset.base if preset else None)
    seed, samples = resolve_sampling(args, loaded)

    fields: Dict[str, Any] = preset.model_dump() if preset else {}
    fields.update(base=loaded.params.model_dump(), seed=seed, samples=samples)
    if args.kind is not None:
        fields["kind"] = args.kind
    if args.axis is not None:
        fields["axis"] = _axis(args.axis, args.axis_scale)
    elif args.axis_scale is not None and fields.get("axis"):
        fields["axis"] = {**fields["axis"], "scale": args.axis_scale}
    if args.axis_y is not None:
        fields["axis_y"] = _axis(args.axis_y, None)
    optional = {
        "q_db_values": args.q_db_list,
        "n_channels_values": args.n_list,
        "fixed_n": args.fixed_n,
        "endpoint_a": args.endpoint_a,
        "endpoint_b": args.endpoint_b,
        "path_y": args.path_y,
    }
    fields.update({key: value for key, value in optional.items() if value is not None})
    if args.validate:
        fields["validation"] = True

    try:
        return SweepSpec.model_validate(fields), loaded
    except ValidationError as e:
        raise ScenarioError(f"スイープ設定が不正です: {e}")


def run_sweep(args: argparse.Namespace) -> int:
    """スイープを実行して表を出力"""
    spec, loaded = build_sweep_spec(args)
    table = tools_for(args).run_sweep(spec, strict=args.strict)
    summary = dict(table.summary)
    if args.preset:
        summary["preset"] = args.preset
    if spec.validation:
        summary["seed"] = spec.seed
        summary["samples"] = spec.samples
    report(args, loaded, summary, table.columns, table.rows)
    if args.svg:
        write_svg(table, args.svg)
    return 0
