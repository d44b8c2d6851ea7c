"""
stablewave 错误类型

两类错误：
- 参数/用法错误（ValueError 子类），命令行映射为退出码 2
- 数值计算失败（ArithmeticError 子类），命令行映射为退出码 1
"""

from typing import Optional


class StableWaveError(Exception):
    """所有 stablewave 错误的公共基类"""


# ======================== 参数/用法错误 ========================

class DomainError(StableWaveError, ValueError):
    """参数超出定义域（例如 gamma(x) 中 x ≤ 0，或 α 不在 (0, 2]）"""


class UnsupportedBranchError(StableWaveError, ValueError):
    """请求了未实现的参数分支（α = 1 且 β ≠ 0 的波包，或 β ≠ 0 的 PDE 检查）"""


class MethodMismatchError(StableWaveError, ValueError):
    """求值方法与参数不匹配（例如 Cauchy 闭式用于 α ≠ 1）"""


class DegenerateParameterError(StableWaveError, ValueError):
    """参数退化导致表达式无意义（例如 m = c = 0）"""


# ======================== 数值计算失败 ========================

class ToleranceNotMetError(StableWaveError, ArithmeticError):
    """积分未达到要求的精度，携带实际误差估计"""

    def __init__(self, message: str, estimate: Optional[float] = None,
                 target: Optional[float] = None):
        super().__init__(message)
        self.estimate = estimate
        self.target = target


class SeriesConvergenceError(StableWaveError, ArithmeticError):
    """级数在 max_terms 项内未满足停止准则"""

    def __init__(self, message: str, terms: int = 0):
        super().__init__(message)
        self.terms = terms


class ImaginaryResidueError(StableWaveError, ArithmeticError):
    """应为实数的变换结果虚部过大"""

    def __init__(self, message: str, residue: float = 0.0):
        super().__init__(message)
        self.residue = residue


class SingularityError(StableWaveError, ArithmeticError):
    """在奇异带 |x − vt| < r 内请求导数"""


class NumericOverflowError(StableWaveError, ArithmeticError):
    """结果超出双精度浮点范围"""


class HeatFormDivisionError(StableWaveError, ZeroDivisionError):
    """热方程形式系数的分母为零"""


def exit_code_for(error: BaseException) -> int:
    """
    将异常映射为命令行退出码

    Args:
        error: 捕获到的异常

    Returns:
        2 表示用法错误，1 表示数值失败
    """
    if isinstance(error, ArithmeticError):
        return 1
    if isinstance(error, ValueError):
        return 2
    return 1
