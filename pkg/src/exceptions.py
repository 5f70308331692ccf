"""
例外定義モジュール

ライブラリ全体で使用する例外クラスを定義します。
各例外は人が読める `detail` と、CLIが返す終了コード `exit_code` を持ちます。
"""

from typing import Optional


class EavesdropError(Exception):
    """全ての例外の基底クラス"""

    exit_code: int = 2

    def __init__(self, detail: str, exit_code: Optional[int] = None):
        """EavesdropErrorの初期化

        Args:
            detail (str): エラー内容の説明
            exit_code (Optional[int], optional): 終了コードの上書き。デフォルトはクラス既定値。
        """
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code

    def __str__(self) -> str:
        return self.detail


class DomainError(EavesdropError, ValueError):
    """引数が数学的な定義域の外にある場合のエラー"""

    exit_code = 1


class ScenarioError(EavesdropError):
    """シナリオファイルやCLIオーバーライドが不正な場合のエラー"""

    exit_code = 1


class PreconditionError(EavesdropError):
    """操作がシナリオに適用できない場合のエラー（例: N≠2 で閾値計算）"""

    exit_code = 1


class NumericalError(EavesdropError):
    """求根・積分などの数値計算が失敗した場合のエラー"""

    exit_code = 2
