"""
EavesdropTools のシンプルなファクトリー
"""
from functools import lru_cache
from typing import Optional

from .eavesdrop_tools import EavesdropTools


@lru_cache(maxsize=4)
def get_eavesdrop_tools(workers: Optional[int] = None) -> EavesdropTools:
    """
    EavesdropToolsインスタンスを取得

    LRUキャッシュにより、同じワーカー数に対しては同一インスタンスを再利用します。

    Returns:
        EavesdropTools: 計算機能の統合インターフェース
    """
    return EavesdropTools(workers=workers)


def clear_eavesdrop_tools_cache():
    """
    キャッシュをクリアして新しいインスタンスを強制作成
    主にテスト用途で使用します。
    """
    get_eavesdrop_tools.cache_clear()
