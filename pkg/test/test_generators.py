#!/usr/bin/env python3
"""
stablewave 输出生成器测试脚本

测试 CSV/JSON 文本格式、SVG 折线图与 Excel 文件生成。
"""

import json
import math
import os
import sys

import pytest
from openpyxl import load_workbook
from pydantic import ValidationError

# 添加项目根目录到 Python 路径
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.errors import NumericOverflowError
from core.models import GridTable, OutputFormat, OutputSpec
from generators import (
    ExcelChartGenerator,
    SvgChartGenerator,
    TableGenerator,
    format_value,
    report_to_csv,
    to_json,
    write_text,
)


def create_test_table():
    """创建测试用表格"""
    return GridTable(
        title="packet",
        columns=["x", "re", "im", "prob"],
        rows=[
            [-1.0, 0.1, -0.2, 0.05],
            [0.0, 1.0, 0.0, 1.0],
            [1.0, 0.1, 0.2, None],
        ],
        x_column="x",
    )


def create_grouped_table():
    """带分组列的演化表格"""
    rows = []
    for t in (0.0, 0.5):
        for x in (-1.0, 0.0, 1.0):
            rows.append([t, x, math.exp(-(x - t) ** 2)])
    return GridTable(title="evolve", columns=["t", "x", "prob"], rows=rows,
                     x_column="x", group_column="t")


def test_format_value():
    """测试单元格格式化"""
    print("=== 测试单元格格式化 ===")
    assert format_value(0.1) == "0.10000000000000001"
    assert format_value(None) == ""
    assert format_value(True) == "true"
    assert format_value(3) == "3"
    assert format_value("reflected") == "reflected"
    with pytest.raises(NumericOverflowError):
        format_value(math.nan)
    with pytest.raises(NumericOverflowError):
        format_value(-math.inf)
    print("✅ 单元格格式化测试通过\n")


def test_csv_output():
    """CSV 表头一行、LF 换行、空值留空"""
    text = TableGenerator(create_test_table()).to_csv()
    lines = text.split("\n")
    assert "\r" not in text
    assert lines[0] == "x,re,im,prob"
    assert lines[2] == "0,1,0,1"
    assert lines[3].endswith(",")
    assert len([line for line in lines if line]) == 4


def test_json_output():
    """JSON 行对象按表头排列，None 为 null"""
    print("=== 测试 JSON 输出 ===")
    payload = json.loads(TableGenerator(create_test_table()).to_json())
    assert payload["columns"] == ["x", "re", "im", "prob"]
    assert payload["rows"][2]["prob"] is None
    assert list(payload["rows"][0].keys()) == payload["columns"]

    assert to_json({"value": None}).endswith("\n")
    with pytest.raises(NumericOverflowError):
        to_json({"value": math.inf})
    print("✅ JSON 输出测试通过\n")


def test_report_to_csv():
    text = report_to_csv({"alpha": 2.0, "delta_z_numeric": None, "method": "closed_gaussian"})
    assert text == "alpha,delta_z_numeric,method\n2,,closed_gaussian\n"


def test_write_text(tmp_path, capsys):
    """写入文件或标准输出"""
    write_text("a,b\n")
    assert capsys.readouterr().out == "a,b\n"

    target = tmp_path / "out.csv"
    write_text("a,b\n1,2\n", str(target))
    assert target.read_bytes() == b"a,b\n1,2\n"
    assert "✅" in capsys.readouterr().err


def test_svg_output():
    """测试 SVG 画布与曲线数"""
    print("=== 测试 SVG 图表 ===")
    svg = SvgChartGenerator(create_test_table()).render()
    assert 'width="800"' in svg
    assert 'height="500"' in svg
    assert svg.count("<polyline") == 3

    grouped = SvgChartGenerator(create_grouped_table()).render()
    assert grouped.count("<polyline") == 2
    assert "prob (t=0.5)" in grouped
    print("✅ SVG 图表测试通过\n")


def test_svg_escapes_title():
    table = create_test_table().model_copy(update={"title": "<a&b>"})
    svg = SvgChartGenerator(table).render()
    assert "&lt;a&amp;b&gt;" in svg


def test_excel_output(tmp_path):
    """测试 Excel 数据表与图表"""
    print("=== 测试 Excel 生成 ===")
    target = tmp_path / "grouped.xlsx"
    ExcelChartGenerator(create_grouped_table()).generate_excel(str(target))
    assert target.exists()

    ws = load_workbook(str(target)).active
    assert ws.title == "evolve"
    assert [cell.value for cell in ws[1]] == ["t", "x", "prob"]
    assert ws["A1"].fill.start_color.rgb.endswith("4F81BD")
    assert ws.freeze_panes == "A2"
    assert ws.max_row == 7
    assert ws["C2"].value == pytest.approx(math.exp(-1.0))
    print("✅ Excel 生成测试通过\n")


def test_excel_chart(tmp_path):
    generator = ExcelChartGenerator(create_test_table())
    generator.generate_excel(str(tmp_path / "packet.xlsx"))
    charts = generator.ws._charts
    assert len(charts) == 1
    assert len(charts[0].series) == 3


def test_output_spec():
    """xlsx 必须指定文件路径"""
    with pytest.raises(ValidationError):
        OutputSpec(format=OutputFormat.XLSX)
    assert OutputSpec(format=OutputFormat.XLSX, path="a.xlsx").path == "a.xlsx"
    assert OutputSpec().format == OutputFormat.CSV


def test_table_row_width():
    with pytest.raises(ValidationError):
        GridTable(columns=["x", "y"], rows=[[1.0]], x_column="x")


def main():
    """主测试函数"""
    print("stablewave 输出生成器测试")
    print("=" * 50)

    try:
        test_format_value()
        test_csv_output()
        test_json_output()
        test_report_to_csv()
        test_svg_output()
        test_svg_escapes_title()
        test_output_spec()

        print("🎉 所有测试通过！输出生成器工作正常。")

    except Exception as e:
        print(f"❌ 测试过程中出现错误: {e}")
        import traceback
        traceback.print_exc()


if __name__ == "__main__":
    main()
