#!/usr/bin/env python3
"""
stablewave 稳定分布核心测试脚本

测试特征函数、闭式密度、级数密度与数值反演之间的一致性。
"""

import math
import os
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

# 添加项目根目录到 Python 路径
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.errors import DomainError, MethodMismatchError, SeriesConvergenceError
from core.models import QuadratureConfig, StableParams
from core.stable import (
    SERIES_DENSITY_FACTOR,
    char_fn,
    density_closed,
    density_numeric,
    density_reflect,
    density_series,
    feller_skewness,
    log_char_fn,
    outside_support,
    stable_density,
    tail_mass,
    total_mass,
)


def test_char_fn_basics():
    """测试特征函数的基本性质"""
    print("=== 测试特征函数 ===")
    p = StableParams(alpha=1.5, beta=0.3, m=0.4, c=2.0)
    assert log_char_fn(p, 0.0) == 0j
    assert char_fn(p, 0.0) == 1 + 0j

    # β = 0 时为实数乘载波
    sym = StableParams(alpha=0.8, m=0.0, c=1.0)
    assert char_fn(sym, 1.3).imag == pytest.approx(0.0, abs=1e-15)
    print("✅ 特征函数测试通过\n")


@settings(max_examples=100, deadline=None)
@given(
    alpha=st.floats(min_value=0.1, max_value=2.0),
    beta=st.floats(min_value=-1.0, max_value=1.0),
    c=st.floats(min_value=0.1, max_value=5.0),
    z=st.floats(min_value=-10.0, max_value=10.0),
)
def test_char_fn_modulus(alpha, beta, c, z):
    """|φ(z)| = exp(−c|z|^α)，与 β、m 无关"""
    p = StableParams(alpha=alpha, beta=beta, m=0.9, c=c)
    assert abs(char_fn(p, z)) == pytest.approx(math.exp(-c * abs(z) ** alpha), rel=1e-12, abs=1e-300)


def test_feller_skewness():
    """β = 0 时 γ = 0、s = 1"""
    gamma_, scale = feller_skewness(1.5, 0.0)
    assert gamma_ == 0.0
    assert scale == 1.0
    gamma_, _ = feller_skewness(0.5, 1.0)
    assert gamma_ == pytest.approx(0.5, rel=1e-12)


def test_closed_densities():
    """测试闭式密度的已知值"""
    print("=== 测试闭式密度 ===")
    assert density_closed(StableParams(alpha=2.0), 0.0) == pytest.approx(1.0 / math.sqrt(4.0 * math.pi))
    assert density_closed(StableParams(alpha=1.0), 0.0) == pytest.approx(1.0 / math.pi)

    levy = StableParams(alpha=0.5, beta=-1.0, m=0.5, c=1.0)
    expected = math.exp(-0.5) / math.sqrt(2.0 * math.pi)
    assert density_closed(levy, 1.5) == pytest.approx(expected, rel=1e-12)
    assert density_closed(levy, 0.0) == 0.0

    mirrored = levy.with_beta(1.0)
    assert density_closed(mirrored, -0.5) == pytest.approx(expected, rel=1e-12)
    assert density_closed(mirrored, 1.5) == 0.0

    with pytest.raises(MethodMismatchError):
        density_closed(StableParams(alpha=1.5), 0.0)
    print("✅ 闭式密度测试通过\n")


@pytest.mark.parametrize("params", [
    StableParams(alpha=2.0, m=0.3, c=1.0),
    StableParams(alpha=1.0, m=-0.2, c=0.5),
    StableParams(alpha=0.5, beta=-1.0, c=1.0),
])
def test_numeric_matches_closed(params):
    """数值反演复现闭式密度"""
    q = QuadratureConfig()
    for z in np.linspace(-3.0, 3.0, 13):
        closed = density_closed(params, float(z))
        assert density_numeric(params, float(z), q) == pytest.approx(closed, abs=1e-8)


@pytest.mark.parametrize("alpha", [0.6, 0.75, 1.5, 1.8])
@pytest.mark.parametrize("beta", [0.0, 0.5])
def test_series_matches_numeric(alpha, beta):
    """级数密度与数值反演的相对误差 ≤ 1e-6"""
    p = StableParams(alpha=alpha, beta=beta)
    q = QuadratureConfig()
    for z in (0.25, 0.5, 1.0, 2.0, 5.0):
        series = density_series(p, z, q) / SERIES_DENSITY_FACTOR
        numeric = density_numeric(p, z, q)
        assert abs(series - numeric) / abs(numeric) <= 1e-6


def test_levy_grid_numeric_matches_closed():
    """Lévy 密度在 101 点网格上的数值反演，支撑之外恰为 0"""
    q = QuadratureConfig()
    for c in (1.0, 2.0):
        p = StableParams(alpha=0.5, beta=-1.0, m=0.0, c=c)
        for z in np.linspace(-2.0, 8.0, 101):
            closed = density_closed(p, float(z))
            numeric = density_numeric(p, float(z), q)
            assert numeric == pytest.approx(closed, abs=1e-8)
            if z <= 0.0:
                assert numeric == 0.0

    assert outside_support(StableParams(alpha=0.5, beta=1.0, m=1.0), 1.5)
    assert not outside_support(StableParams(alpha=0.5, beta=1.0, m=1.0), 0.5)
    assert not outside_support(StableParams(alpha=1.5, beta=-1.0), -3.0)


@pytest.mark.parametrize("alpha", [1.2, 1.6, 2.0])
@pytest.mark.parametrize("beta", [0.0, 0.5])
@pytest.mark.parametrize("c", [0.5, 2.0])
def test_density_numeric_total_mass(alpha, beta, c):
    """∫f dz = 1：[m − R, m + R] 上的积分加上幂律尾部质量"""
    p = StableParams(alpha=alpha, beta=beta, m=0.3, c=c)
    assert total_mass(p) == pytest.approx(1.0, abs=1e-4)


def test_tail_mass():
    """Cauchy 的两侧尾部 1 − (2/π)·arctan(y) ≈ 2/(πy)"""
    assert tail_mass(1.0, 1e4) == pytest.approx(1.0 - 2.0 / math.pi * math.atan(1e4), rel=1e-6)
    assert tail_mass(2.0, 3.0) == 0.0
    assert tail_mass(1.5, 50.0) == pytest.approx(tail_mass(1.5, 100.0) * 2.0 ** 1.5)


def test_symmetry_near_cauchy():
    """α 接近 1 的偏斜分布，反演遇到舍入误差警告时仍满足对称关系"""
    p = StableParams(alpha=0.98280, beta=-0.40992)
    left = density_numeric(p, -4.23150) * SERIES_DENSITY_FACTOR
    right = density_numeric(p.with_beta(0.40992), 4.23150) * SERIES_DENSITY_FACTOR
    assert abs(left - right) <= 1e-8


def test_series_long_growth_phase():
    """项先增长数百项再衰减时级数照常收敛"""
    print("=== 测试级数增长阶段 ===")
    p = StableParams(alpha=0.75, beta=0.5)
    series = density_series(p, 0.25) / SERIES_DENSITY_FACTOR
    numeric = density_numeric(p, 0.25)
    assert abs(series - numeric) / numeric <= 1e-6

    # max_terms 从增长阶段结束后计数
    with pytest.raises(SeriesConvergenceError):
        density_series(p, 0.25, QuadratureConfig(max_terms=1))
    print("✅ 级数增长阶段测试通过\n")


def test_series_levy_value():
    """α = 1/2、β = −1 的级数在 y = 1 处等于 e^(−1/2)"""
    p = StableParams(alpha=0.5, beta=-1.0)
    assert density_series(p, 1.0) == pytest.approx(math.exp(-0.5), rel=1e-9)


def test_series_one_sided():
    """α < 1、β = +1 时 z > m 一侧密度为零"""
    p = StableParams(alpha=0.5, beta=1.0)
    assert density_series(p, 2.0) == 0.0


def test_series_scaling():
    """位置与尺度变换：s(z; m, c) = s((z−m)/c′; 0, 1)/c′"""
    base = StableParams(alpha=1.5, beta=0.5)
    shifted = StableParams(alpha=1.5, beta=0.5, m=1.0, c=2.0)
    z = 2.5
    expected = density_series(base, (z - 1.0) / shifted.c_prime) / shifted.c_prime
    assert density_series(shifted, z) == pytest.approx(expected, rel=1e-12)


def test_series_errors():
    """级数方法的参数检查"""
    print("=== 测试级数参数检查 ===")
    with pytest.raises(MethodMismatchError):
        density_series(StableParams(alpha=1.0), 1.0)
    with pytest.raises(MethodMismatchError):
        density_series(StableParams(alpha=2.0), 1.0)
    with pytest.raises(DomainError):
        density_series(StableParams(alpha=1.5), -1.0)
    print("✅ 级数参数检查测试通过\n")


def test_symmetry_relation():
    """s(−z; β) = s(z; −β)"""
    rng = np.random.default_rng(7)
    q = QuadratureConfig()
    for _ in range(50):
        p = StableParams(alpha=float(rng.uniform(0.5, 2.0)), beta=float(rng.uniform(-1.0, 1.0)))
        z = float(rng.uniform(-5.0, 5.0))
        left = density_numeric(p, -z, q) * SERIES_DENSITY_FACTOR
        right = density_numeric(p.with_beta(-p.beta), z, q) * SERIES_DENSITY_FACTOR
        assert abs(left - right) <= 1e-8


def test_reflect_branch():
    """负侧经反射求值"""
    p = StableParams(alpha=1.5, beta=0.5)
    assert density_reflect(p, -1.0) == pytest.approx(density_series(p.with_beta(-0.5), 1.0))


def test_stable_density_dispatch(capsys):
    """统一入口的分支名与级数失败时的回退"""
    print("=== 测试密度统一入口 ===")
    p = StableParams(alpha=1.5, beta=0.0)
    _, branch = stable_density(p, 1.0, method="series")
    assert branch == "series"
    _, branch = stable_density(p, -1.0, method="series")
    assert branch == "reflected"
    _, branch = stable_density(StableParams(alpha=2.0), 0.0, method="closed")
    assert branch == "closed"

    starved = QuadratureConfig(max_terms=1)
    value, branch = stable_density(p, 1.0, starved, method="series")
    assert branch == "numeric-fallback"
    assert value == pytest.approx(density_numeric(p, 1.0), rel=1e-8)
    assert "⚠️" in capsys.readouterr().err

    with pytest.raises(MethodMismatchError):
        stable_density(p, 1.0, method="fourier")
    print("✅ 密度统一入口测试通过\n")


def main():
    """主测试函数"""
    print("stablewave 稳定分布核心测试")
    print("=" * 50)

    try:
        test_char_fn_basics()
        test_feller_skewness()
        test_closed_densities()
        test_series_levy_value()
        test_series_one_sided()
        test_series_long_growth_phase()
        test_series_errors()
        test_symmetry_relation()

        print("🎉 所有测试通过！稳定分布核心工作正常。")

    except Exception as e:
        print(f"❌ 测试过程中出现错误: {e}")
        import traceback
        traceback.print_exc()


if __name__ == "__main__":
    main()
