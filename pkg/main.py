#!/usr/bin/env python3
"""
stablewave 主程序入口

提供统一的命令行界面来计算稳定波包、振幅函数、密度、不确定度与 PDE 检查。
数据写到标准输出（或 --out 指定的文件），状态与错误信息写到标准错误。

退出码：0 成功，1 数值计算失败，2 参数/用法错误。
"""

import argparse
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import ValidationError

# 添加项目根目录到路径
sys.path.insert(0, str(Path(__file__).parent))

from core.config import load_quadrature_config  # noqa: E402
from core.errors import (  # noqa: E402
    DomainError,
    MethodMismatchError,
    NumericOverflowError,
    StableWaveError,
    exit_code_for,
)
from core.models import (  # noqa: E402
    AmplitudeEvaluator,
    DeBroglieContext,
    GridSpec,
    GridTable,
    OutputFormat,
    OutputSpec,
    QuadratureConfig,
    StableParams,
    WavePacket,
)
from core.stable import stable_density  # noqa: E402
from generators.excel_generator import ExcelChartGenerator  # noqa: E402
from generators.svg_generator import SvgChartGenerator  # noqa: E402
from generators.table_generator import (  # noqa: E402
    TableGenerator,
    report_to_csv,
    to_json,
    write_text,
)
from waves.amplitude import amplitude, method_from_name, z_to_sigma  # noqa: E402
from waves.packet import prob_density, psi  # noqa: E402
from waves.pde import (  # noqa: E402
    default_exclusion_radius,
    fd_gradient_check,
    heat_form_branches,
    schrodinger_form,
    wave_residual,
)
from waves.selftest import run_selftest  # noqa: E402
from waves.uncertainty import momentum_spread, uncertainty_report  # noqa: E402

GRID_COMMANDS = ("packet", "amplitude", "density", "evolve")


def _common_arguments() -> argparse.ArgumentParser:
    """所有子命令共用的参数"""
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("波包参数")
    group.add_argument("--alpha", type=float, default=2.0, help="特征指数 α ∈ (0, 2]（默认 2）")
    group.add_argument("--beta", type=float, default=0.0, help="偏斜参数 β ∈ [−1, 1]（默认 0）")
    group.add_argument("--m", type=float, default=0.0, help="位置参数 m（默认 0）")
    group.add_argument("--c", type=float, default=1.0, help="指数系数 c > 0（默认 1）")
    group.add_argument("--v", type=float, default=1.0, help="传播速度 v = E/p（默认 1）")
    group.add_argument("--t", type=float, default=0.0, help="时刻 t（默认 0）")

    grid = common.add_argument_group("网格")
    grid.add_argument("--x-min", type=float, default=-3.0)
    grid.add_argument("--x-max", type=float, default=3.0)
    grid.add_argument("--z-min", type=float, default=-5.0)
    grid.add_argument("--z-max", type=float, default=5.0)
    grid.add_argument("--n", type=int, default=121, help="网格点数（默认 121）")

    numeric = common.add_argument_group("数值方法")
    numeric.add_argument("--method", choices=["closed", "series", "numeric"], default="numeric",
                         help="振幅/密度求值方法（默认 numeric）")
    numeric.add_argument("--abs-tol", type=float, default=None, help="绝对误差容限")
    numeric.add_argument("--rel-tol", type=float, default=None, help="相对误差容限")
    numeric.add_argument("--fd-step", type=float, default=1e-4, help="有限差分步长（默认 1e-4）")
    numeric.add_argument("--exclusion-radius", type=float, default=None,
                         help="排除带半宽，默认 1e-3·(2c)^(−1/α)")

    physics = common.add_argument_group("de Broglie 常数")
    physics.add_argument("--h", type=float, default=None, help="普朗克常数（调用方单位）")
    physics.add_argument("--mass", type=float, default=1.0, help="质量 M（默认 1）")

    output = common.add_argument_group("输出")
    output.add_argument("--format", choices=[f.value for f in OutputFormat], default=None,
                        help="输出格式：网格命令默认 csv，报告命令默认 json")
    output.add_argument("--out", default=None, help="输出文件，缺省写到标准输出")
    return common


def setup_argument_parser():
    """设置命令行参数解析器"""
    common = _common_arguments()
    parser = argparse.ArgumentParser(
        description="stablewave - α 稳定波包数值工具",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
示例用法:
  python main.py packet --alpha 2 --c 3.14159 --x-min -3 --x-max 3 --n 7
  python main.py amplitude --alpha 1 --method closed --z-min -5 --z-max 5 --n 11
  python main.py density --alpha 1.5 --method series --format svg --out density.svg
  python main.py uncertainty --alpha 0.5 --beta -1 --c 2
  python main.py evolve --alpha 1.5 --t-min 0 --t-max 2 --frames 5 --format xlsx --out evolve.xlsx
  python main.py pde-check --alpha 2 --v 1 --t 0.5
  python main.py selftest
        """
    )

    subparsers = parser.add_subparsers(dest='command', help='可用命令')

    subparsers.add_parser('packet', parents=[common], help='网格上的 ψ(x,t) 与 |ψ|²')
    subparsers.add_parser('amplitude', parents=[common], help='振幅函数 A(z)')
    subparsers.add_parser('density', parents=[common], help='稳定概率密度 f(z)')
    subparsers.add_parser('uncertainty', parents=[common], help='不确定度报告')

    evolve_parser = subparsers.add_parser('evolve', parents=[common], help='多个时刻的波包')
    evolve_parser.add_argument('--t-min', type=float, default=0.0)
    evolve_parser.add_argument('--t-max', type=float, default=1.0)
    evolve_parser.add_argument('--frames', type=int, default=5, help='帧数（默认 5）')

    subparsers.add_parser('pde-check', parents=[common], help='弦振动方程与热方程形式检查')
    subparsers.add_parser('selftest', parents=[common], help='运行自检')

    return parser


# ======================== 参数构造 ========================

def build_packet(args) -> WavePacket:
    params = StableParams(alpha=args.alpha, beta=args.beta, m=args.m, c=args.c)
    return WavePacket(params=params, v=args.v)


def x_grid(args) -> GridSpec:
    exclusion = args.exclusion_radius
    if exclusion is None:
        exclusion = default_exclusion_radius(StableParams(alpha=args.alpha, c=args.c))
    return GridSpec(x_min=args.x_min, x_max=args.x_max, n_points=args.n, t=args.t,
                    fd_step=args.fd_step, exclusion_radius=exclusion)


def sample_points(lo: float, hi: float, n: int, name: str) -> np.ndarray:
    """
    输出网格的等距采样点，n = 1 时只取左端点

    Raises:
        DomainError: n < 1、端点非有限或左端点大于右端点
    """
    if n < 1:
        raise DomainError(f"--n 必须 ≥ 1，收到 {n}")
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise DomainError(f"--{name}-min/--{name}-max 必须是有限值")
    if lo > hi:
        raise DomainError(f"--{name}-min ({lo}) 不能大于 --{name}-max ({hi})")
    return np.linspace(lo, hi, n)


def x_points(args) -> np.ndarray:
    return sample_points(args.x_min, args.x_max, args.n, "x")


def z_points(args) -> np.ndarray:
    return sample_points(args.z_min, args.z_max, args.n, "z")


def _complex_json(value: complex) -> Dict[str, float]:
    return {"re": value.real, "im": value.imag}


def _flatten(report: Dict[str, Any], prefix: str = "") -> Dict[str, Any]:
    """嵌套报告展平成 a_b 形式的列名，供 CSV 使用"""
    flat: Dict[str, Any] = {}
    for key, value in report.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, f"{name}_"))
        else:
            flat[name] = value
    return flat


# ======================== 输出 ========================

def emit_table(table: GridTable, args) -> None:
    """网格结果按 --format 输出"""
    spec = OutputSpec(format=args.format or OutputFormat.CSV.value, path=args.out)
    if spec.format == OutputFormat.XLSX:
        ExcelChartGenerator(table).generate_excel(spec.path)
    elif spec.format == OutputFormat.SVG:
        write_text(SvgChartGenerator(table).render(), spec.path)
    else:
        TableGenerator(table).generate(spec.format.value, spec.path)


def emit_report(report: Dict[str, Any], args) -> None:
    """报告类结果按 --format 输出（json 或 csv）"""
    spec = OutputSpec(format=args.format or OutputFormat.JSON.value, path=args.out)
    if spec.format in (OutputFormat.SVG, OutputFormat.XLSX):
        raise MethodMismatchError(f"{spec.format.value} 只适用于网格命令 {', '.join(GRID_COMMANDS)}")
    if spec.format == OutputFormat.CSV:
        write_text(report_to_csv(_flatten(report)), spec.path)
    else:
        write_text(to_json(report), spec.path)


# ======================== 命令 ========================

def cmd_packet(args, q: QuadratureConfig) -> int:
    """网格上的 ψ(x,t) 实部、虚部与概率密度"""
    w = build_packet(args)
    rows = []
    for x in x_points(args):
        value = psi(w, float(x), args.t)
        rows.append([float(x), value.real, value.imag, prob_density(w, float(x), args.t)])
    table = GridTable(title=f"packet alpha={args.alpha:g}", columns=["x", "re", "im", "prob"],
                      rows=rows, x_column="x")
    emit_table(table, args)
    print(f"✅ packet: {len(rows)} 行", file=sys.stderr)
    return 0


def cmd_amplitude(args, q: QuadratureConfig) -> int:
    """振幅函数 A(z)"""
    w = build_packet(args)
    e = AmplitudeEvaluator(packet=w, method=method_from_name(args.method, w.params), quadrature=q)
    rows = [[float(z), amplitude(e, float(z))] for z in z_points(args)]
    table = GridTable(title=f"amplitude {e.method.value}", columns=["z", "amplitude"],
                      rows=rows, x_column="z")
    emit_table(table, args)
    print(f"✅ amplitude ({e.method.value}): {len(rows)} 行", file=sys.stderr)
    return 0


def cmd_density(args, q: QuadratureConfig) -> int:
    """真实概率密度 f(z)，branch 列记录实际使用的求值分支"""
    params = StableParams(alpha=args.alpha, beta=args.beta, m=args.m, c=args.c)
    rows = []
    for z in z_points(args):
        value, branch = stable_density(params, float(z), q, method=args.method)
        rows.append([float(z), value, branch])
    table = GridTable(title=f"density {args.method}", columns=["z", "density", "branch"],
                      rows=rows, x_column="z")
    emit_table(table, args)
    print(f"✅ density ({args.method}): {len(rows)} 行", file=sys.stderr)
    return 0


def cmd_uncertainty(args, q: QuadratureConfig) -> int:
    """不确定度报告；--h 给出时附加 Δp"""
    w = build_packet(args)
    report = uncertainty_report(w, q, method_from_name(args.method, w.params))
    payload = report.model_dump(mode="json")
    if args.h is not None:
        ctx = DeBroglieContext(h=args.h, M=args.mass)
        payload["delta_p_formula"] = momentum_spread(report, ctx)
        payload["delta_p_numeric"] = momentum_spread(report, ctx, numeric=True)
    emit_report(payload, args)
    print(f"✅ uncertainty: moment_kind={report.moment_kind.value}", file=sys.stderr)
    return 0


def cmd_evolve(args, q: QuadratureConfig) -> int:
    """多个时刻的波包，每帧一个 t 分组"""
    if args.frames < 1:
        raise MethodMismatchError(f"--frames 必须 ≥ 1，收到 {args.frames}")
    w = build_packet(args)
    xs = x_points(args)
    rows: List[list] = []
    for t in np.linspace(args.t_min, args.t_max, args.frames):
        for x in xs:
            value = psi(w, float(x), float(t))
            rows.append([float(t), float(x), value.real, value.imag,
                         prob_density(w, float(x), float(t))])
    table = GridTable(title=f"evolve alpha={args.alpha:g}", columns=["t", "x", "re", "im", "prob"],
                      rows=rows, x_column="x", group_column="t")
    emit_table(table, args)
    print(f"✅ evolve: {args.frames} 帧", file=sys.stderr)
    return 0


def cmd_pde_check(args, q: QuadratureConfig) -> int:
    """解析、差分与梯度三条路线的残差报告"""
    w = build_packet(args)
    grid = x_grid(args)
    payload: Dict[str, Any] = {
        "params": w.params.model_dump(mode="json"),
        "v": w.v,
        "grid": grid.model_dump(mode="json"),
        "analytic": wave_residual(w, grid, "analytic").model_dump(mode="json"),
        "fd": wave_residual(w, grid, "fd").model_dump(mode="json"),
        "gradient": fd_gradient_check(w, grid).model_dump(mode="json"),
    }
    if w.params.alpha == 1.0:
        branches = heat_form_branches(w)
        payload["heat_form"] = {name: _complex_json(k) for name, k in branches.items()}
        if args.h is not None:
            ctx = DeBroglieContext(h=args.h, M=args.mass)
            form = schrodinger_form(ctx, z_to_sigma(w.params.m), w.params.m, w.params.c)
            payload["schrodinger_form"] = _complex_json(form)
    emit_report(payload, args)
    print(f"✅ pde-check: analytic max_abs={payload['analytic']['max_abs']:.3g}", file=sys.stderr)
    return 0


def cmd_selftest(args, q: QuadratureConfig) -> int:
    """运行自检，全部通过时退出码为 0"""
    print("🧪 运行 stablewave 自检", file=sys.stderr)
    return 0 if run_selftest(q) else 1


COMMANDS = {
    'packet': cmd_packet,
    'amplitude': cmd_amplitude,
    'density': cmd_density,
    'uncertainty': cmd_uncertainty,
    'evolve': cmd_evolve,
    'pde-check': cmd_pde_check,
    'selftest': cmd_selftest,
}


def main(argv: Optional[List[str]] = None) -> int:
    """主函数，返回退出码"""
    parser = setup_argument_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help(sys.stderr)
        return 2

    try:
        q = load_quadrature_config(abs_tol=args.abs_tol, rel_tol=args.rel_tol)
        return COMMANDS[args.command](args, q)
    except ValidationError as e:
        print(f"❌ 参数无效: {e.error_count()} 处错误", file=sys.stderr)
        for error in e.errors():
            location = ".".join(str(part) for part in error["loc"]) or "-"
            print(f"  - {location}: {error['msg']}", file=sys.stderr)
        return 2
    except OverflowError as e:
        error = NumericOverflowError(f"浮点溢出: {e}")
        print(f"❌ {type(error).__name__}: {error}", file=sys.stderr)
        return exit_code_for(error)
    except (StableWaveError, ArithmeticError, ValueError) as e:
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        return exit_code_for(e)
    except OSError as e:
        print(f"❌ 无法写入输出: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
