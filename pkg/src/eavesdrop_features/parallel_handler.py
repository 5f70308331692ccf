"""
並列実行ハンドラーモジュール

独立した計算タスク（モンテカルロのチャンクやスイープの格子点）を
プロセスプールで並列に実行し、入力順に結果を返すハンドラーを提供します。
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Iterable, List

from ..exceptions import EavesdropError, NumericalError

# ロガーの設定
logger = logging.getLogger(__name__)


class ParallelHandler:
    """計算タスクの並列実行を行うクラス"""

    def __init__(self, workers: int = 1):
        """ParallelHandlerの初期化

        Args:
            workers (int, optional): ワーカープロセス数。1なら同一プロセスで逐次実行。
        """
        if workers < 1:
            raise ValueError(f"ワーカー数は1以上である必要があります: {workers}")
        self.workers = workers

    def map_ordered(self, func: Callable[[Any], Any], tasks: Iterable[Any]) -> List[Any]:
        """タスクを実行し、入力と同じ順序で結果を返す

        結果はワーカー数に依存しない（各タスクは自分の入力だけから決まる）。

        Args:
            func (Callable): モジュールトップレベルの関数（pickle可能であること）
            tasks (Iterable): 各タスクの引数

        Returns:
            List[Any]: 各タスクの結果

        Raises:
            EavesdropError: タスク内で発生したライブラリの例外はそのまま
            NumericalError: その他の予期せぬエラー
        """
        task_list = list(tasks)
        if self.workers == 1 or len(task_list) <= 1:
            return [self.execute(func, task) for task in task_list]

        logger.debug(f"{len(task_list)}個のタスクを{self.workers}プロセスで実行します")
        try:
            with ProcessPoolExecutor(max_workers=self.workers) as executor:
                return list(executor.map(func, task_list))
        except EavesdropError:
            raise
        except Exception as e:
            logger.error(f"並列実行中の予期せぬエラー: {e}")
            raise NumericalError(f"並列実行中の予期せぬエラー: {e}")

    def execute(self, func: Callable[..., Any], *args: Any, **kwargs: Any) -> Any:
        """1つのタスクを実行し、予期せぬ例外をライブラリの例外に変換する"""
        try:
            return func(*args, **kwargs)
        except EavesdropError:
            raise
        except (ValueError, ArithmeticError) as e:
            logger.error(f"計算中の予期せぬエラー: {e}")
            raise NumericalError(f"計算中の予期せぬエラー: {e}")
