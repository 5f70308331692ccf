# src/commands/output.py
"""
出力ライターモジュール

CSV（`# key=value` のヘッダー行つき）と JSON-lines の書き出しを提供します。
数値はロケールに依存せず、浮動小数点数は有効数字12桁で出力します。
"""

import csv
import json
import math
import sys
from contextlib import contextmanager
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional, TextIO

from ..exceptions import ScenarioError

OUTPUT_FORMATS = ("csv", "json")


def format_value(value: Any) -> str:
    """CSV用に値を文字列化"""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, ".12g")
    if isinstance(value, Enum):
        return str(value.value)
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, float) and not math.isfinite(value):
        return format_value(value)
    return value


def write_csv(stream: TextIO, header: Dict[str, Any], columns: List[str], rows: List[Dict[str, Any]]) -> None:
    """ヘッダー行・列名・データ行をCSVとして書き出す"""
    for key, value in header.items():
        stream.write(f"# {key}={format_value(value)}\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row.get(column)) for column in columns])


def write_jsonl(stream: TextIO, header: Dict[str, Any], columns: List[str], rows: List[Dict[str, Any]]) -> None:
    """先頭にヘッダーオブジェクト、続いて1行1オブジェクトで書き出す"""
    stream.write(json.dumps({"header": {k: _json_value(v) for k, v in header.items()}}, sort_keys=False) + "\n")
    for row in rows:
        stream.write(json.dumps({column: _json_value(row.get(column)) for column in columns}) + "\n")


@contextmanager
def open_output(path: Optional[str]) -> Iterator[TextIO]:
    """出力先を開く（None なら標準出力）"""
    if path is None:
        yield sys.stdout
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            yield f
    except OSError as e:
        raise ScenarioError(f"出力ファイルを開けません ({path}): {e}")


def emit(
    output_format: str,
    path: Optional[str],
    header: Dict[str, Any],
    columns: List[str],
    rows: List[Dict[str, Any]],
) -> None:
    """指定された形式で結果を書き出す"""
    with open_output(path) as stream:
        if output_format == "json":
            write_jsonl(stream, header, columns, rows)
        else:
            write_csv(stream, header, columns, rows)
