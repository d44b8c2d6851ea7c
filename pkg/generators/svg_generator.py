"""
stablewave SVG 图表生成器

固定 800×500 画布的静态折线图：每条数据列一条 polyline，线性坐标轴，
四角标注横纵轴的最小/最大值。带分组列（evolve 的 t）时每组每列一条曲线。
"""

import math
from typing import Dict, List, Optional, Tuple

from jinja2 import Template

from core.models import GridTable

WIDTH = 800
HEIGHT = 500
MARGIN = 60

PALETTE = ["#4F81BD", "#C0504D", "#9BBB59", "#8064A2", "#4BACC6", "#F79646", "#2C4D75", "#772C2A"]

SVG_TEMPLATE = """<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" width="{{ width }}" height="{{ height }}" viewBox="0 0 {{ width }} {{ height }}">
  <rect x="0" y="0" width="{{ width }}" height="{{ height }}" fill="#FFFFFF"/>
  <text x="{{ width / 2 }}" y="24" text-anchor="middle" font-family="sans-serif" font-size="16">{{ title }}</text>
  <line x1="{{ left }}" y1="{{ bottom }}" x2="{{ right }}" y2="{{ bottom }}" stroke="#333333"/>
  <line x1="{{ left }}" y1="{{ top }}" x2="{{ left }}" y2="{{ bottom }}" stroke="#333333"/>
  <text x="{{ left }}" y="{{ bottom + 20 }}" text-anchor="start" font-family="sans-serif" font-size="11">{{ x_min_label }}</text>
  <text x="{{ right }}" y="{{ bottom + 20 }}" text-anchor="end" font-family="sans-serif" font-size="11">{{ x_max_label }}</text>
  <text x="{{ left - 6 }}" y="{{ bottom }}" text-anchor="end" font-family="sans-serif" font-size="11">{{ y_min_label }}</text>
  <text x="{{ left - 6 }}" y="{{ top + 10 }}" text-anchor="end" font-family="sans-serif" font-size="11">{{ y_max_label }}</text>
  <text x="{{ (left + right) / 2 }}" y="{{ bottom + 40 }}" text-anchor="middle" font-family="sans-serif" font-size="12">{{ x_label }}</text>
{%- for line in lines %}
  <polyline fill="none" stroke="{{ line.color }}" stroke-width="1.5" points="{{ line.points }}"/>
  <text x="{{ right - 4 }}" y="{{ top + 16 + loop.index0 * 14 }}" text-anchor="end" font-family="sans-serif" font-size="11" fill="{{ line.color }}">{{ line.name }}</text>
{%- endfor %}
</svg>
"""


class SvgChartGenerator:
    """
    网格表格的静态 SVG 折线图
    """

    def __init__(self, table: GridTable):
        self.table = table
        self.left = MARGIN
        self.right = WIDTH - MARGIN
        self.top = MARGIN
        self.bottom = HEIGHT - MARGIN

    def _curves(self) -> List[Tuple[str, List[Tuple[float, float]]]]:
        """(名称, [(x, y), ...])；None 与非有限值被跳过"""
        table = self.table
        x_idx = table.columns.index(table.x_column)
        group_idx = table.columns.index(table.group_column) if table.group_column else None

        groups: Dict[Optional[float], List[list]] = {}
        for row in table.rows:
            key = row[group_idx] if group_idx is not None else None
            groups.setdefault(key, []).append(row)

        curves = []
        for series in table.numeric_series():
            idx = table.columns.index(series.name)
            for key, rows in groups.items():
                name = series.name if key is None else f"{series.name} ({table.group_column}={key:g})"
                points = [
                    (float(row[x_idx]), float(row[idx]))
                    for row in rows
                    if row[idx] is not None and math.isfinite(row[idx])
                ]
                if points:
                    curves.append((name, points))
        return curves

    @staticmethod
    def _span(values: List[float]) -> Tuple[float, float]:
        lo, hi = min(values), max(values)
        if lo == hi:
            pad = abs(lo) * 0.5 or 1.0
            return lo - pad, hi + pad
        return lo, hi

    def render(self) -> str:
        """渲染 SVG 文本"""
        curves = self._curves()
        xs = [x for _, pts in curves for x, _ in pts] or [0.0, 1.0]
        ys = [y for _, pts in curves for _, y in pts] or [0.0, 1.0]
        x_lo, x_hi = self._span(xs)
        y_lo, y_hi = self._span(ys)

        def sx(x):
            return self.left + (x - x_lo) / (x_hi - x_lo) * (self.right - self.left)

        def sy(y):
            return self.bottom - (y - y_lo) / (y_hi - y_lo) * (self.bottom - self.top)

        lines = []
        for i, (name, pts) in enumerate(curves):
            lines.append({
                "name": name,
                "color": PALETTE[i % len(PALETTE)],
                "points": " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts),
            })

        template = Template(SVG_TEMPLATE, autoescape=True)
        return template.render(
            width=WIDTH,
            height=HEIGHT,
            left=self.left,
            right=self.right,
            top=self.top,
            bottom=self.bottom,
            title=self.table.title,
            x_label=self.table.x_column,
            x_min_label=f"{x_lo:.6g}",
            x_max_label=f"{x_hi:.6g}",
            y_min_label=f"{y_lo:.6g}",
            y_max_label=f"{y_hi:.6g}",
            lines=lines,
        )
