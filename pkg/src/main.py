# src/main.py
"""
CLI エントリーポイント

使い方: python -m src.main <subcommand> --scenario scenario.json [options]
"""

import argparse
import logging
import sys
from typing import List, Optional

from . import __version__
from .commands import evaluation, optimization, sweep, validation
from .config import get_settings
from .exceptions import EavesdropError

# ロガーの設定
logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def build_parser() -> argparse.ArgumentParser:
    """全サブコマンドを登録したパーサーを作成"""
    parser = argparse.ArgumentParser(
        prog="eavesdrop",
        description="並列レイリーフェージングチャネル上のジャミング支援盗聴の解析・最適化・検証ツール",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="DEBUG レベルのログを出力")
    parser.add_argument("--workers", type=int, default=None, help="並列ワーカー数（既定は EAVESDROP_WORKERS）")

    subparsers = parser.add_subparsers(dest="command", required=True, metavar="subcommand")
    # 各サブコマンドを登録
    evaluation.register(subparsers)
    optimization.register(subparsers)
    sweep.register(subparsers)
    validation.register(subparsers)
    return parser


def _configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, get_settings().log_level)
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    """CLI を実行して終了コードを返す

    Returns:
        int: 0 は成功、1 は使用法・シナリオ・定義域のエラー、2 は数値計算の失敗
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse の使用法エラー (2) は 1 として返す
        return 0 if e.code in (0, None) else 1

    try:
        _configure_logging(args.verbose)
        if args.workers is not None and args.workers < 1:
            parser.print_usage(sys.stderr)
            print(f"エラー: ワーカー数は1以上である必要があります: {args.workers}", file=sys.stderr)
            return 1
        return args.handler(args)
    except EavesdropError as e:
        logger.debug(f"{type(e).__name__}: {e.detail}")
        print(f"エラー: {e.detail}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
