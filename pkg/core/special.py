"""
stablewave 特殊函数

标量构件：Gamma 函数、对数 Gamma、指数幂矩积分以及有理函数积分的递推公式。
复数运算直接使用 Python 内置 complex。
"""

import math

from scipy import special as sp_special

from .errors import DomainError, NumericOverflowError

# Γ(x) 在双精度下溢出的阈值
GAMMA_OVERFLOW_ARG = 171.6


def _check_positive(x: float, name: str = "x") -> None:
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"{name} 必须是正有限实数，收到 {x}")


def _check_alpha(alpha: float) -> None:
    if not math.isfinite(alpha) or not 0.0 < alpha <= 2.0:
        raise DomainError(f"α 必须在 (0, 2] 内，收到 {alpha}")


def sgn(x: float) -> float:
    """符号函数，约定 sgn(0) = 0"""
    if x > 0.0:
        return 1.0
    if x < 0.0:
        return -1.0
    return 0.0


def gamma(x: float) -> float:
    """
    Gamma 函数 Γ(x)，x > 0

    Args:
        x: 正实数

    Returns:
        Γ(x)

    Raises:
        DomainError: x ≤ 0
        NumericOverflowError: 结果超出双精度范围
    """
    _check_positive(x)
    if x > GAMMA_OVERFLOW_ARG:
        raise NumericOverflowError(f"Γ({x}) 超出双精度范围，请使用 log_gamma")
    return float(sp_special.gamma(x))


def log_gamma(x: float) -> float:
    """
    对数 Gamma 函数 ln Γ(x)，x > 0

    在 Γ(x) 溢出时仍然有限，用于小 α 下的不确定度公式。
    """
    _check_positive(x)
    return float(sp_special.gammaln(x))


def exp_power_moment(k: int, alpha: float) -> float:
    """
    指数幂矩积分 ∫₀^∞ y^k·exp(−y^α) dy = (1/α)·Γ((k+1)/α)

    Args:
        k: 非负整数阶数
        alpha: 特征指数 α ∈ (0, 2]

    Returns:
        积分值
    """
    if k < 0 or int(k) != k:
        raise DomainError(f"k 必须是非负整数，收到 {k}")
    _check_alpha(alpha)
    return math.exp(log_gamma((k + 1) / alpha) - math.log(alpha))


def inverse_quadratic_power_integral(x: float, n: int, a: float = 1.0, c: float = 1.0) -> float:
    """
    ∫₀^x dy / (a·y² + c)^n 的递推公式

        I_1 = arctan(x·√(a/c)) / √(ac)
        I_n = x / (2c(n−1)(ax²+c)^(n−1)) + (2n−3)/(2c(n−1))·I_(n−1)

    Args:
        x: 积分上限
        n: 正整数幂次
        a: 二次项系数，> 0
        c: 常数项，> 0

    Returns:
        定积分值
    """
    if n < 1 or int(n) != n:
        raise DomainError(f"n 必须是正整数，收到 {n}")
    _check_positive(a, "a")
    _check_positive(c, "c")

    value = math.atan(x * math.sqrt(a / c)) / math.sqrt(a * c)
    base = a * x * x + c
    for j in range(2, n + 1):
        value = (x / (2.0 * c * (j - 1) * base ** (j - 1))
                 + (2 * j - 3) / (2.0 * c * (j - 1)) * value)
    return value


def quadratic_moment_power_integral(x: float, n: int, a: float = 1.0, c: float = 1.0) -> float:
    """
    ∫₀^x y² dy / (a·y² + c)^n 的递推公式

        J_1 = x/a − (c/a)·I_1
        J_n = (I_(n−1) − x/(ax²+c)^(n−1)) / (2a(n−1))
    """
    if n < 1 or int(n) != n:
        raise DomainError(f"n 必须是正整数，收到 {n}")
    _check_positive(a, "a")
    _check_positive(c, "c")

    if n == 1:
        return x / a - (c / a) * inverse_quadratic_power_integral(x, 1, a, c)
    base = a * x * x + c
    previous = inverse_quadratic_power_integral(x, n - 1, a, c)
    return (previous - x / base ** (n - 1)) / (2.0 * a * (n - 1))
