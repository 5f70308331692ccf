# src/commands/optimization.py
"""
optimize / twoway / threshold / regimes サブコマンド
"""

import argparse

from ..eavesdrop_features.scenario import to_db
from .common import add_output_arguments, add_scenario_arguments, load_effective_scenario, report, tools_for

PROFILE_COLUMNS = ["n", "rho", "rate", "non_outage_monitor", "phi"]
TWOWAY_COLUMNS = ["n", "rho_ab", "rate_ab", "phi_ab", "rho_ba", "rate_ba", "phi_ba", "phi_min"]


def register(subparsers: argparse._SubParsersAction) -> None:
    optimize_parser = subparsers.add_parser("optimize", help="片方向の最適なジャミング本数を求める")
    add_scenario_arguments(optimize_parser)
    add_output_arguments(optimize_parser)
    optimize_parser.set_defaults(handler=run_optimize)

    twoway_parser = subparsers.add_parser("twoway", help="双方向の最大最小最適化")
    add_scenario_arguments(twoway_parser)
    add_output_arguments(twoway_parser)
    twoway_parser.add_argument("--weight-ab", type=float, default=1.0, help="A→B 方向の重み")
    twoway_parser.add_argument("--weight-ba", type=float, default=1.0, help="B→A 方向の重み")
    twoway_parser.add_argument("--regime", action="store_true", help="予算領域も判定する（N ≥ 3）")
    twoway_parser.set_defaults(handler=run_twoway)

    threshold_parser = subparsers.add_parser("threshold", help="N = 2 の予算閾値 Q_th を求める")
    add_scenario_arguments(threshold_parser)
    add_output_arguments(threshold_parser)
    threshold_parser.set_defaults(handler=run_threshold)

    regimes_parser = subparsers.add_parser("regimes", help="双方向の予算領域の境界を求める（N ≥ 3）")
    add_scenario_arguments(regimes_parser)
    add_output_arguments(regimes_parser)
    regimes_parser.set_defaults(handler=run_regimes)


def run_optimize(args: argparse.Namespace) -> int:
    """n = 0..N-1 のプロファイルと最適解を出力"""
    loaded = load_effective_scenario(args)
    outcome = tools_for(args).optimize_one_way(loaded.params)
    summary = {
        "chosen_scheme": outcome.chosen_scheme.value,
        "n_star": outcome.n_star if outcome.n_star is not None else 0,
        "phi_star": outcome.phi_star,
        "phi_passive": outcome.phi_passive,
        "n_jam_best": outcome.n_jam_best,
    }
    rows = [evaluation.model_dump() for evaluation in [outcome.passive, *outcome.profile]]
    report(args, loaded, summary, PROFILE_COLUMNS, rows)
    return 0


def run_twoway(args: argparse.Namespace) -> int:
    """両方向のプロファイルと最大最小解を出力"""
    loaded = load_effective_scenario(args)
    outcome = tools_for(args).optimize_two_way(
        loaded.params, weight_ab=args.weight_ab, weight_ba=args.weight_ba, classify_regime=args.regime
    )
    summary = {
        "chosen_scheme": outcome.chosen_scheme.value,
        "n_star": outcome.n_star if outcome.n_star is not None else 0,
        "phi_minmax": outcome.phi_minmax,
        "n_star_ab": outcome.one_way_ab.n_jam_best,
        "n_star_ba": outcome.one_way_ba.n_jam_best,
        "weight_ab": outcome.weight_ab,
        "weight_ba": outcome.weight_ba,
    }
    if outcome.regime is not None:
        summary["regime"] = outcome.regime.value
        summary["q_lower"] = outcome.thresholds.q_lower
        summary["q_upper"] = outcome.thresholds.q_upper

    pairs = zip([outcome.passive_ab, *outcome.profile_ab], [outcome.passive_ba, *outcome.profile_ba])
    rows = [
        {
            "n": ab.n,
            "rho_ab": ab.rho, "rate_ab": ab.rate, "phi_ab": ab.phi,
            "rho_ba": ba.rho, "rate_ba": ba.rate, "phi_ba": ba.phi,
            "phi_min": min(ab.phi, ba.phi),
        }
        for ab, ba in pairs
    ]
    report(args, loaded, summary, TWOWAY_COLUMNS, rows)
    return 0


def run_threshold(args: argparse.Namespace) -> int:
    """受動とジャミングが同じ φ になる予算を出力"""
    loaded = load_effective_scenario(args)
    threshold = tools_for(args).q_threshold(loaded.params)
    row = {"q_threshold": threshold, "q_threshold_db": to_db(threshold)}
    report(args, loaded, row, list(row), [row])
    return 0


def run_regimes(args: argparse.Namespace) -> int:
    """(Q̲, Q̄) と各方向の交点を出力"""
    loaded = load_effective_scenario(args)
    thresholds = tools_for(args).regime_thresholds(loaded.params)
    row = thresholds.model_dump()
    row["q_lower_db"] = to_db(thresholds.q_lower)
    row["q_upper_db"] = to_db(thresholds.q_upper)
    columns = ["q_lower", "q_upper", "q_lower_db", "q_upper_db", "q_lower_ab", "q_lower_ba", "q_upper_ab", "q_upper_ba"]
    report(args, loaded, {"q_lower": thresholds.q_lower, "q_upper": thresholds.q_upper}, columns, [row])
    return 0
