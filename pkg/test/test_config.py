#!/usr/bin/env python3
"""
stablewave 配置与错误测试脚本

测试环境变量覆盖、配置优先级以及异常到退出码的映射。
"""

import os
import sys

import pytest
from pydantic import ValidationError

# 添加项目根目录到 Python 路径
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.config import ENV_PREFIX, env_overrides, load_quadrature_config
from core.errors import (
    DegenerateParameterError,
    DomainError,
    HeatFormDivisionError,
    ImaginaryResidueError,
    MethodMismatchError,
    NumericOverflowError,
    SeriesConvergenceError,
    SingularityError,
    StableWaveError,
    ToleranceNotMetError,
    UnsupportedBranchError,
    exit_code_for,
)
from core.models import QuadratureConfig

ENV_NAMES = ["ABS_TOL", "REL_TOL", "MAX_PANELS", "TRUNCATION_EPSILON", "MAX_TERMS"]


@pytest.fixture
def clean_env(monkeypatch):
    """清除容差环境变量；load_dotenv 写入的值在结束时一并移除"""
    keys = [ENV_PREFIX + name for name in ENV_NAMES]
    saved = {key: os.environ.pop(key) for key in keys if key in os.environ}
    yield monkeypatch
    for key in keys:
        os.environ.pop(key, None)
    os.environ.update(saved)


def test_env_overrides():
    """测试环境变量解析"""
    print("=== 测试环境变量覆盖 ===")
    environ = {
        "STABLEWAVE_ABS_TOL": "1e-9",
        "STABLEWAVE_MAX_TERMS": " 50 ",
        "STABLEWAVE_REL_TOL": "",
        "UNRELATED": "x",
    }
    assert env_overrides(environ) == {"abs_tol": 1e-9, "max_terms": 50}
    assert env_overrides({}) == {}

    with pytest.raises(DomainError):
        env_overrides({"STABLEWAVE_MAX_PANELS": "many"})
    print("✅ 环境变量覆盖测试通过\n")


def test_load_precedence(clean_env, tmp_path):
    """默认值 < 环境变量 < 命令行参数"""
    missing = str(tmp_path / "missing.env")
    assert load_quadrature_config(missing) == QuadratureConfig()

    clean_env.setenv("STABLEWAVE_ABS_TOL", "1e-8")
    clean_env.setenv("STABLEWAVE_REL_TOL", "1e-7")
    q = load_quadrature_config(missing, abs_tol=1e-11, rel_tol=None)
    assert q.abs_tol == 1e-11
    assert q.rel_tol == 1e-7


def test_dotenv_file(clean_env, tmp_path):
    """.env 文件中的值生效，但不覆盖已设置的环境变量"""
    dotenv = tmp_path / ".env"
    dotenv.write_text("STABLEWAVE_MAX_TERMS=80\nSTABLEWAVE_ABS_TOL=1e-6\n", encoding="utf-8")
    clean_env.setenv("STABLEWAVE_ABS_TOL", "1e-13")
    q = load_quadrature_config(str(dotenv))
    assert q.max_terms == 80
    assert q.abs_tol == 1e-13


def test_invalid_config(clean_env, tmp_path):
    clean_env.setenv("STABLEWAVE_ABS_TOL", "-1")
    with pytest.raises(ValidationError):
        load_quadrature_config(str(tmp_path / "missing.env"))


def test_accepts():
    q = QuadratureConfig(abs_tol=1e-12, rel_tol=1e-10, error_slack=1.0)
    assert q.accepts(1e-11, 1.0)
    assert not q.accepts(1e-9, 1.0)
    assert q.accepts(1e-12, 0.0)

    # 积分值接近 0 时按被积函数的 L1 量级放宽绝对目标
    assert not q.accepts(3e-12, 0.0)
    assert q.accepts(3e-12, 0.0, scale=4.0)
    assert q.target(0.0, scale=0.5) == q.abs_tol


@pytest.mark.parametrize("error,code", [
    (DomainError("x"), 2),
    (UnsupportedBranchError("x"), 2),
    (MethodMismatchError("x"), 2),
    (DegenerateParameterError("x"), 2),
    (ValueError("x"), 2),
    (ToleranceNotMetError("x", estimate=1.0, target=1e-12), 1),
    (SeriesConvergenceError("x"), 1),
    (ImaginaryResidueError("x"), 1),
    (SingularityError("x"), 1),
    (NumericOverflowError("x"), 1),
    (HeatFormDivisionError("x"), 1),
    (RuntimeError("x"), 1),
])
def test_exit_codes(error, code):
    """用法错误为 2，数值失败为 1"""
    assert exit_code_for(error) == code


def test_error_hierarchy():
    assert issubclass(HeatFormDivisionError, ZeroDivisionError)
    assert issubclass(DomainError, StableWaveError)
    err = ToleranceNotMetError("精度不足", estimate=3e-9, target=1e-12)
    assert err.estimate == 3e-9
    assert err.target == 1e-12


def main():
    """主测试函数"""
    print("stablewave 配置与错误测试")
    print("=" * 50)

    try:
        test_env_overrides()
        test_accepts()
        test_error_hierarchy()

        print("🎉 所有测试通过！配置模块工作正常。")

    except Exception as e:
        print(f"❌ 测试过程中出现错误: {e}")
        import traceback
        traceback.print_exc()


if __name__ == "__main__":
    main()
