#!/usr/bin/env python3
"""
stablewave 特殊函数测试脚本

测试 Gamma 函数、对数 Gamma、指数幂矩积分与递推积分公式。
"""

import math
import os
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

# 添加项目根目录到 Python 路径
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.errors import DomainError, NumericOverflowError
from core.models import QuadratureConfig
from core.quadrature import half_line_integral
from core.special import (
    exp_power_moment,
    gamma,
    inverse_quadratic_power_integral,
    log_gamma,
    quadratic_moment_power_integral,
    sgn,
)


def test_gamma_known_values():
    """测试 Gamma 函数的已知值"""
    print("=== 测试 Gamma 已知值 ===")
    assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-12)
    assert gamma(2.0) == pytest.approx(1.0, rel=1e-12)
    assert gamma(6.0) == pytest.approx(120.0, rel=1e-12)
    assert gamma(35.0) == pytest.approx(math.factorial(34), rel=1e-12)
    print("✅ Gamma 已知值测试通过\n")


def test_gamma_domain():
    """测试定义域与溢出"""
    print("=== 测试 Gamma 定义域 ===")
    for bad in (0.0, -1.0, -0.5, math.nan):
        with pytest.raises(DomainError):
            gamma(bad)
        with pytest.raises(DomainError):
            log_gamma(bad)
    with pytest.raises(NumericOverflowError):
        gamma(200.0)
    assert math.isfinite(log_gamma(200.0))
    print("✅ Gamma 定义域测试通过\n")


def test_log_gamma_values():
    """测试对数 Gamma"""
    print("=== 测试对数 Gamma ===")
    assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-15)
    assert log_gamma(2.0) == pytest.approx(0.0, abs=1e-15)
    assert log_gamma(6.0) == pytest.approx(4.787491742782046, rel=1e-12)
    print("✅ 对数 Gamma 测试通过\n")


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=0.05, max_value=30.0))
def test_gamma_recurrence(x):
    """Γ(x+1) = x·Γ(x)"""
    assert gamma(x + 1.0) == pytest.approx(x * gamma(x), rel=1e-11)


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=0.05, max_value=150.0))
def test_log_gamma_matches_gamma(x):
    """exp(ln Γ(x)) = Γ(x)"""
    assert math.exp(log_gamma(x)) == pytest.approx(gamma(x), rel=1e-11)


def test_exp_power_moment_values():
    """测试指数幂矩积分的已知值"""
    print("=== 测试指数幂矩积分 ===")
    assert exp_power_moment(0, 2.0) == pytest.approx(math.sqrt(math.pi) / 2.0, rel=1e-12)
    assert exp_power_moment(0, 1.0) == pytest.approx(1.0, rel=1e-12)
    assert exp_power_moment(2, 2.0) == pytest.approx(math.sqrt(math.pi) / 4.0, rel=1e-12)
    with pytest.raises(DomainError):
        exp_power_moment(0, 2.5)
    with pytest.raises(DomainError):
        exp_power_moment(-1, 1.0)
    print("✅ 指数幂矩积分测试通过\n")


@pytest.mark.parametrize("k", [0, 1, 2])
@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5, 2.0])
def test_exp_power_moment_matches_quadrature(k, alpha):
    """公式与自适应积分一致"""
    numeric, _ = half_line_integral(lambda y: math.exp(-y ** alpha), float(k), QuadratureConfig())
    assert exp_power_moment(k, alpha) == pytest.approx(numeric, rel=1e-8)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_reduction_formulas(n):
    """递推公式与直接积分一致"""
    x, a, c = 2.0, 1.5, 0.7
    direct_i, _ = integrate.quad(lambda y: (a * y * y + c) ** -n, 0.0, x, epsabs=1e-14, epsrel=1e-13)
    direct_j, _ = integrate.quad(lambda y: y * y * (a * y * y + c) ** -n, 0.0, x,
                                 epsabs=1e-14, epsrel=1e-13)
    assert inverse_quadratic_power_integral(x, n, a, c) == pytest.approx(direct_i, rel=1e-10)
    assert quadratic_moment_power_integral(x, n, a, c) == pytest.approx(direct_j, rel=1e-10)


def test_reduction_domain():
    """递推公式的参数检查"""
    with pytest.raises(DomainError):
        inverse_quadratic_power_integral(1.0, 0)
    with pytest.raises(DomainError):
        quadratic_moment_power_integral(1.0, 2, a=-1.0)


def test_sgn():
    assert sgn(3.0) == 1.0
    assert sgn(-0.1) == -1.0
    assert sgn(0.0) == 0.0


def main():
    """主测试函数"""
    print("stablewave 特殊函数测试")
    print("=" * 50)

    try:
        test_gamma_known_values()
        test_gamma_domain()
        test_log_gamma_values()
        test_exp_power_moment_values()
        test_reduction_domain()
        test_sgn()

        print("🎉 所有测试通过！特殊函数工作正常。")

    except Exception as e:
        print(f"❌ 测试过程中出现错误: {e}")
        import traceback
        traceback.print_exc()


if __name__ == "__main__":
    main()
