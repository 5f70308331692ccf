# src/commands/validation.py
"""
validate サブコマンド
"""

import argparse
import logging

from .common import (
    add_output_arguments,
    add_sampling_arguments,
    add_scenario_arguments,
    load_effective_scenario,
    report,
    resolve_sampling,
    tools_for,
)

# ロガーの設定
logger = logging.getLogger(__name__)

# この標準誤差数を超える乖離は不合格
DEVIATION_LIMIT_SE = 3.0
VALIDATION_COLUMNS = ["quantity", "n", "analytic", "monte_carlo", "std_error", "deviation_se"]


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("validate", help="解析値とモンテカルロ推定値を比較")
    add_scenario_arguments(parser)
    add_output_arguments(parser)
    add_sampling_arguments(parser)
    parser.add_argument("--strict", action="store_true", help="乖離が3標準誤差を超えたら終了コード2")
    parser.set_defaults(handler=run_validate)


def run_validate(args: argparse.Namespace) -> int:
    """n = 0..N-1 の ρ・R・φ を比較し、最大乖離を出力"""
    loaded = load_effective_scenario(args)
    seed, samples = resolve_sampling(args, loaded)
    result = tools_for(args).validation_report(loaded.params, samples, seed)
    passed = result.max_deviation_se <= DEVIATION_LIMIT_SE
    summary = {
        "seed": seed,
        "samples": samples,
        "max_deviation_se": result.max_deviation_se,
        "passed": passed,
    }
    rows = [check.model_dump() for check in result.checks]
    report(args, loaded, summary, VALIDATION_COLUMNS, rows)

    if not passed:
        logger.warning(f"最大乖離が {DEVIATION_LIMIT_SE} 標準誤差を超えました: {result.max_deviation_se:.3g}")
        if args.strict:
            return 2
    return 0
