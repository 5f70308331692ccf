# src/commands/svg_renderer.py
"""
SVGレンダラーモジュール

スイープ結果を静的なSVG（折れ線グラフまたはヒートマップ）として書き出します。
"""

import logging
from typing import Any, Dict, List, Sequence, Tuple
from xml.sax.saxutils import escape

from ..exceptions import ScenarioError
from ..models import SweepKind, SweepTable

# ロガーの設定
logger = logging.getLogger(__name__)

WIDTH = 640
HEIGHT = 420
MARGIN = 56
PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"]

# 種類ごとの (x列, y列のリスト, 系列を分ける列)
LINE_LAYOUT: Dict[SweepKind, Tuple[str, List[str], str]] = {
    SweepKind.PHI_VS_Q: ("q_db", ["phi", "phi_passive", "phi_star"], ""),
    SweepKind.PROFILE_VS_N: ("n", ["phi"], "q_db"),
    SweepKind.TWOWAY_PROFILE: ("n", ["phi_ab", "phi_ba", "phi_min"], ""),
    SweepKind.PHI_VS_GAIN: ("mean_gain", ["phi_star", "phi_passive"], "n_channels"),
    SweepKind.TWOWAY_PATH: ("x", ["phi_minmax", "phi_bench_ab", "phi_bench_ba"], ""),
}


def _scale(value: float, low: float, high: float, start: float, stop: float) -> float:
    if high == low:
        return (start + stop) / 2.0
    return start + (value - low) / (high - low) * (stop - start)


def _ok_rows(table: SweepTable) -> List[Dict[str, Any]]:
    return [row for row in table.rows if row.get("status") == "ok"]


def _frame(title: str, x_label: str, y_label: str) -> List[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="24" text-anchor="middle" font-size="15">{escape(title)}</text>',
        f'<text x="{WIDTH / 2:.1f}" y="{HEIGHT - 12}" text-anchor="middle" font-size="12">{escape(x_label)}</text>',
        f'<text x="16" y="{HEIGHT / 2:.1f}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 16 {HEIGHT / 2:.1f})">{escape(y_label)}</text>',
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{WIDTH - 2 * MARGIN}" height="{HEIGHT - 2 * MARGIN}" '
        'fill="none" stroke="black"/>',
    ]


def _axis_ticks(x_range: Tuple[float, float], y_range: Tuple[float, float]) -> List[str]:
    parts = []
    for fraction in (0.0, 0.25, 0.5, 0.75, 1.0):
        x_value = x_range[0] + fraction * (x_range[1] - x_range[0])
        y_value = y_range[0] + fraction * (y_range[1] - y_range[0])
        x_pos = MARGIN + fraction * (WIDTH - 2 * MARGIN)
        y_pos = HEIGHT - MARGIN - fraction * (HEIGHT - 2 * MARGIN)
        parts.append(f'<text x="{x_pos:.1f}" y="{HEIGHT - MARGIN + 16}" text-anchor="middle" font-size="10">{x_value:.3g}</text>')
        parts.append(f'<text x="{MARGIN - 6}" y="{y_pos + 3:.1f}" text-anchor="end" font-size="10">{y_value:.3g}</text>')
    return parts


def render_line_chart(table: SweepTable) -> str:
    """1次元スイープの折れ線グラフ"""
    x_column, y_columns, group_column = LINE_LAYOUT[table.kind]
    rows = _ok_rows(table)
    series: List[Tuple[str, List[Tuple[float, float]]]] = []
    groups = sorted({row[group_column] for row in rows}) if group_column else [None]
    for group in groups:
        group_rows = [row for row in rows if not group_column or row[group_column] == group]
        for y_column in y_columns:
            points = [(float(row[x_column]), float(row[y_column])) for row in group_rows]
            label = y_column if group is None else f"{y_column} ({group_column}={group:g})"
            series.append((label, points))

    all_points = [point for _, points in series for point in points]
    if not all_points:
        raise ScenarioError("描画できる行がありません")
    x_range = (min(p[0] for p in all_points), max(p[0] for p in all_points))
    y_range = (0.0, max(1e-12, max(p[1] for p in all_points)))

    parts = _frame(f"{table.kind.value}", x_column, "probability")
    parts += _axis_ticks(x_range, y_range)
    for index, (label, points) in enumerate(series):
        color = PALETTE[index % len(PALETTE)]
        coords = " ".join(
            f"{_scale(x, *x_range, MARGIN, WIDTH - MARGIN):.2f},"
            f"{_scale(y, *y_range, HEIGHT - MARGIN, MARGIN):.2f}"
            for x, y in points
        )
        parts.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        legend_y = MARGIN + 14 + 14 * index
        parts.append(f'<text x="{WIDTH - MARGIN - 4}" y="{legend_y}" text-anchor="end" font-size="10" fill="{color}">{escape(label)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _heat_color(value: float, low: float, high: float) -> str:
    t = _scale(value, low, high, 0.0, 1.0)
    red = int(round(255 * t))
    blue = int(round(255 * (1.0 - t)))
    return f"#{red:02x}40{blue:02x}"


def render_heatmap(table: SweepTable, value_column: str = "n_star") -> str:
    """配置格子のヒートマップ（失敗した格子点は灰色）"""
    xs: Sequence[float] = sorted({row["x"] for row in _ok_rows(table)})
    ys: Sequence[float] = sorted({row["y"] for row in _ok_rows(table)})
    if not xs or not ys:
        raise ScenarioError("描画できる行がありません")
    values = [float(row[value_column]) for row in _ok_rows(table)]
    low, high = min(values), max(values)
    cell_w = (WIDTH - 2 * MARGIN) / len(xs)
    cell_h = (HEIGHT - 2 * MARGIN) / len(ys)
    x_index = {x: i for i, x in enumerate(xs)}
    y_index = {y: i for i, y in enumerate(ys)}

    parts = _frame(f"{table.kind.value}: {value_column}", "x", "y")
    for row in _ok_rows(table):
        left = MARGIN + x_index[row["x"]] * cell_w
        top = HEIGHT - MARGIN - (y_index[row["y"]] + 1) * cell_h
        color = _heat_color(float(row[value_column]), low, high)
        parts.append(f'<rect x="{left:.2f}" y="{top:.2f}" width="{cell_w:.2f}" height="{cell_h:.2f}" fill="{color}"/>')
    parts += _axis_ticks((xs[0], xs[-1]), (ys[0], ys[-1]))
    parts.append(f'<text x="{WIDTH - MARGIN}" y="{MARGIN - 8}" text-anchor="end" font-size="10">{value_column}: {low:g}..{high:g}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_svg(table: SweepTable, path: str) -> None:
    """スイープ結果をSVGファイルに書き出す"""
    if table.kind == SweepKind.PLACEMENT_GRID:
        svg = render_heatmap(table)
    else:
        svg = render_line_chart(table)
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(svg)
    except OSError as e:
        raise ScenarioError(f"SVGファイルを書き込めません ({path}): {e}")
    logger.info(f"SVGを書き出しました: {path}")
