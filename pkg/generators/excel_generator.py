"""
stablewave Excel 生成器

把网格命令的结果写成 xlsx：
1. 数据表 - 带样式表头，数值保留完整双精度
2. 图表 - 每条数值列一条散点连线；带分组列时每组一条
"""

import sys
from typing import Dict, List, Tuple

from openpyxl import Workbook
from openpyxl.chart import Reference, ScatterChart
from openpyxl.chart import Series as ChartSeries
from openpyxl.styles import Alignment, Font, PatternFill
from openpyxl.utils import get_column_letter

from core.models import GridTable

HEADER_COLOR = "4F81BD"
MAX_CHART_SERIES = 24


class ExcelChartGenerator:
    """
    网格表格的 Excel 生成器

    数据从第 2 行开始，图表放在数据右侧。
    """

    def __init__(self, table: GridTable):
        """
        初始化生成器

        Args:
            table: 网格命令的结果表
        """
        self.table = table
        self.wb = Workbook()
        self.ws = self.wb.active
        self.ws.title = (table.title or "stablewave")[:31]
        self.data_end_row = 1

    def generate_excel(self, filename: str) -> None:
        """
        生成 xlsx 文件

        Args:
            filename: 输出文件名
        """
        self._setup_headers()
        self._populate_data()
        self._create_chart()
        self._auto_size_columns()
        self.wb.save(filename)
        print(f"✅ Excel 文件已生成: {filename}", file=sys.stderr)

    def _setup_headers(self):
        """设置表头样式"""
        self.ws.append(list(self.table.columns))
        header_font = Font(bold=True, color="FFFFFF")
        header_fill = PatternFill(start_color=HEADER_COLOR, end_color=HEADER_COLOR, fill_type="solid")
        header_alignment = Alignment(horizontal="center", vertical="center")
        for col_idx in range(1, len(self.table.columns) + 1):
            cell = self.ws.cell(row=1, column=col_idx)
            cell.font = header_font
            cell.fill = header_fill
            cell.alignment = header_alignment
        self.ws.freeze_panes = "A2"

    def _populate_data(self):
        """逐行写入数据；None 留空"""
        for row in self.table.rows:
            self.ws.append(list(row))
        self.data_end_row = len(self.table.rows) + 1

    def _group_ranges(self) -> List[Tuple[str, int, int]]:
        """分组列取值相同的连续行区间 (标签, 起始行, 结束行)"""
        table = self.table
        if not table.group_column:
            return [("", 2, self.data_end_row)]
        idx = table.columns.index(table.group_column)
        ranges: List[Tuple[str, int, int]] = []
        start = 2
        for offset in range(1, len(table.rows) + 1):
            end_of_group = (offset == len(table.rows)
                            or table.rows[offset][idx] != table.rows[offset - 1][idx])
            if end_of_group:
                label = f"{table.group_column}={table.rows[offset - 1][idx]:g}"
                ranges.append((label, start, offset + 1))
                start = offset + 2
        return ranges

    def _create_chart(self):
        """创建散点连线图"""
        if not self.table.rows:
            return
        columns: Dict[str, int] = {name: i + 1 for i, name in enumerate(self.table.columns)}
        chart = ScatterChart()
        chart.title = self.table.title
        chart.style = 13
        chart.x_axis.title = self.table.x_column
        chart.y_axis.title = "value"
        chart.x_axis.delete = False
        chart.y_axis.delete = False

        x_col = columns[self.table.x_column]
        count = 0
        for series in self.table.numeric_series():
            y_col = columns[series.name]
            for label, first, last in self._group_ranges():
                if count >= MAX_CHART_SERIES:
                    break
                x_ref = Reference(self.ws, min_col=x_col, min_row=first, max_row=last)
                y_ref = Reference(self.ws, min_col=y_col, min_row=first, max_row=last)
                title = f"{series.name} {label}".strip()
                chart_series = ChartSeries(y_ref, x_ref, title=title)
                chart_series.marker.symbol = "none"
                chart_series.smooth = False
                chart.series.append(chart_series)
                count += 1

        chart.width = 20
        chart.height = 12
        anchor = f"{get_column_letter(len(self.table.columns) + 2)}2"
        self.ws.add_chart(chart, anchor)

    def _auto_size_columns(self):
        """自动调整列宽"""
        for col_idx, name in enumerate(self.table.columns, 1):
            width = max(12, len(str(name)) + 4)
            self.ws.column_dimensions[get_column_letter(col_idx)].width = min(width, 30)
