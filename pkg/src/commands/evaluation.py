# src/commands/evaluation.py
"""
eval サブコマンド
"""

import argparse

from .common import add_output_arguments, add_scenario_arguments, load_effective_scenario, report, tools_for

EVALUATION_COLUMNS = ["scheme", "n", "rho", "rate", "non_outage_monitor", "phi"]


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("eval", help="受動盗聴と n 本ジャミングの φ を評価")
    add_scenario_arguments(parser)
    add_output_arguments(parser)
    parser.add_argument("--n", type=int, required=True, help="ジャミング本数（0 なら受動のみ）")
    parser.set_defaults(handler=run_eval)


def run_eval(args: argparse.Namespace) -> int:
    """φ^I と、n ≥ 1 なら φ^II(n) を出力"""
    loaded = load_effective_scenario(args)
    tools = tools_for(args)
    evaluations = [tools.evaluate(loaded.params, 0)]
    if args.n != 0:
        evaluations.append(tools.evaluate(loaded.params, args.n))

    rows = [
        {"scheme": "passive" if evaluation.n == 0 else "jamming", **evaluation.model_dump()}
        for evaluation in evaluations
    ]
    report(args, loaded, {"n": args.n}, EVALUATION_COLUMNS, rows)
    return 0
