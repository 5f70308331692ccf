"""
キャッシュハンドラーモジュール

モンテカルロ推定値などの重い計算結果をJSONファイルにキャッシュするハンドラークラスを提供します。
キーはシナリオ・戦略・サンプル数・シードから決まるため、同じ入力に対しては同じ結果を返します。
"""

import os
import json
import time
import hashlib
import logging
from typing import Any, Optional

from pydantic import BaseModel

# ロガーの設定
logger = logging.getLogger(__name__)

CACHE_DIR_NAME = "montecarlo_results"  # モンテカルロ結果専用のキャッシュディレクトリ名


def make_cache_key(kind: str, *parts: Any) -> str:
    """キャッシュキーを生成

    pydanticモデルはJSONに変換してからハッシュする。

    Args:
        kind (str): 推定の種類（"own_goal" など）
        *parts: キーに含める値

    Returns:
        str: "<kind>_<sha256の先頭32文字>"
    """
    encoded = [part.model_dump(mode="json") if isinstance(part, BaseModel) else part for part in parts]
    digest = hashlib.sha256(json.dumps(encoded, sort_keys=True).encode("utf-8")).hexdigest()
    return f"{kind}_{digest[:32]}"


class ResultCacheHandler:
    """計算結果のキャッシングを担当するクラス"""

    def __init__(self, cache_base_path: str = "./cache", max_age: int = 86400):
        """ResultCacheHandlerの初期化

        Args:
            cache_base_path (str, optional): キャッシュのベースディレクトリ。デフォルトは ./cache。
            max_age (int, optional): キャッシュの最大有効期間（秒）。デフォルトは86400秒（1日）。
        """
        self.cache_dir = os.path.join(cache_base_path, CACHE_DIR_NAME)
        self.max_age = max_age
        self._ensure_cache_directory()

    def _ensure_cache_directory(self) -> None:
        """キャッシュディレクトリが存在することを確認し、なければ作成"""
        if not os.path.exists(self.cache_dir):
            os.makedirs(self.cache_dir, exist_ok=True)
            logger.info(f"キャッシュディレクトリを作成しました: {self.cache_dir}")

    def _get_cache_path(self, cache_key: str) -> str:
        # ファイル名に使えない文字は置換
        safe_key = "".join([c if c.isalnum() else "_" for c in cache_key])
        return os.path.join(self.cache_dir, f"{safe_key}.json")

    def get_from_cache(self, cache_key: str) -> Optional[Any]:
        """キャッシュからデータを取得

        Args:
            cache_key (str): キャッシュキー

        Returns:
            Optional[Any]: キャッシュされたデータ。存在しないか期限切れの場合はNone。
        """
        cache_path = self._get_cache_path(cache_key)
        if not os.path.exists(cache_path):
            logger.debug(f"キャッシュが存在しません: {cache_key}")
            return None

        if (time.time() - os.path.getmtime(cache_path)) > self.max_age:
            logger.debug(f"キャッシュの期限が切れています: {cache_key}")
            try:
                os.remove(cache_path)
            except OSError as e:
                logger.error(f"期限切れキャッシュの削除に失敗しました ({cache_key}): {e}")
            return None

        try:
            with open(cache_path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            logger.error(f"キャッシュの読み込みに失敗しました ({cache_key}): {e}")
            return None
        logger.debug(f"キャッシュからデータを読み込みました: {cache_key}")
        return data

    def save_to_cache(self, cache_key: str, data: Any) -> None:
        """データをキャッシュに保存（JSONシリアライズ可能なもの）"""
        self._ensure_cache_directory()
        cache_path = self._get_cache_path(cache_key)
        try:
            with open(cache_path, "w", encoding="utf-8") as f:
                json.dump(data, f)
            logger.debug(f"データをキャッシュに保存しました: {cache_key}")
        except (OSError, TypeError) as e:
            logger.error(f"キャッシュの保存に失敗しました ({cache_key}): {e}")

    def clear_all_cache(self) -> int:
        """すべてのキャッシュを削除

        Returns:
            int: 削除したファイル数
        """
        self._ensure_cache_directory()
        count = 0
        for item in os.listdir(self.cache_dir):
            if item.endswith(".json"):
                try:
                    os.remove(os.path.join(self.cache_dir, item))
                    count += 1
                except OSError as e:
                    logger.error(f"キャッシュファイルの削除に失敗しました ({item}): {e}")
        logger.info(f"{count}個のキャッシュファイルを削除しました")
        return count
