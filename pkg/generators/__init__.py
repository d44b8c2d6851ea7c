"""
stablewave 生成器模块

包含各种输出格式的生成器。
"""

from .excel_generator import ExcelChartGenerator
from .svg_generator import SvgChartGenerator
from .table_generator import TableGenerator, format_value, report_to_csv, to_json, write_text

__all__ = [
    'ExcelChartGenerator',
    'SvgChartGenerator',
    'TableGenerator',
    'format_value',
    'report_to_csv',
    'to_json',
    'write_text',
]
