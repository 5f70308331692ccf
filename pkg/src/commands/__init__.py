"""
CLI サブコマンドのパッケージ

各モジュールは register(subparsers) でサブコマンドを登録します。
"""

__all__ = [
    "evaluation",
    "optimization",
    "sweep",
    "validation",
]
