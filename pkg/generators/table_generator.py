"""
stablewave 表格输出

CSV 与 JSON 两种文本格式：
- CSV: 表头一行，逗号分隔，LF 换行，浮点数 17 位有效数字，不做本地化
- JSON: 键顺序固定，不允许 NaN/Infinity（遇到即报错而不是输出非法记号）
"""

import csv
import io
import json
import math
import sys
from typing import Any, Dict, Optional

from core.errors import NumericOverflowError
from core.models import GridTable


def format_value(value: Any) -> str:
    """单元格格式化：浮点数 %.17g，None 为空"""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if not math.isfinite(value):
            raise NumericOverflowError(f"CSV 中出现非有限值: {value}")
        return format(value, ".17g")
    return str(value)


def to_json(payload: Any) -> str:
    """序列化为 JSON；非有限浮点数作为数值失败处理"""
    try:
        return json.dumps(payload, ensure_ascii=False, indent=2, allow_nan=False) + "\n"
    except ValueError as e:
        raise NumericOverflowError(f"JSON 中出现非有限值: {e}")


def write_text(text: str, path: Optional[str] = None) -> None:
    """写入文件，path 为 None 时写到标准输出"""
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    print(f"✅ 结果已写入: {path}", file=sys.stderr)


class TableGenerator:
    """
    网格表格的 CSV/JSON 生成器
    """

    def __init__(self, table: GridTable):
        """
        Args:
            table: 网格命令的结果表
        """
        self.table = table

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.table.columns)
        for row in self.table.rows:
            writer.writerow([format_value(value) for value in row])
        return buffer.getvalue()

    def to_json(self) -> str:
        """{"title", "columns", "rows"}，每行是按表头顺序排列的对象"""
        payload: Dict[str, Any] = {
            "title": self.table.title,
            "columns": list(self.table.columns),
            "rows": [dict(zip(self.table.columns, row)) for row in self.table.rows],
        }
        return to_json(payload)

    def generate(self, fmt: str, path: Optional[str] = None) -> None:
        """
        按格式输出

        Args:
            fmt: csv 或 json
            path: 输出路径，None 表示标准输出
        """
        text = self.to_csv() if fmt == "csv" else self.to_json()
        write_text(text, path)


def report_to_csv(report: Dict[str, Any]) -> str:
    """单条报告的 CSV：表头为字段名，数据一行"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(list(report.keys()))
    writer.writerow([format_value(value) for value in report.values()])
    return buffer.getvalue()
