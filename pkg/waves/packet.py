"""
stablewave 波包

广义波包 ψ(x,0)、归一化常数 A_o、平移演化 ψ(x,t) 与概率密度 |ψ|²。
"""

import math
import sys
from typing import Optional

from core.errors import (
    DomainError,
    NumericOverflowError,
    ToleranceNotMetError,
    UnsupportedBranchError,
)
from core.models import QuadratureConfig, StableParams, WavePacket
from core.quadrature import half_line_integral
from core.special import log_gamma
from core.stable import char_fn, scaled_power

# 归一化检查的默认容差
NORM_TOLERANCE = 1e-8

_LOG_FLOAT_MAX = math.log(sys.float_info.max)


def normalizer(alpha: float, c: float) -> float:
    """
    归一化常数 A_o = [α(2c)^(1/α) / (2Γ(1/α))]^(1/2)

    在对数域计算，α 很小时 (2c)^(1/α) 与 Γ(1/α) 都可能溢出。

    Args:
        alpha: 特征指数 α ∈ (0, 2]
        c: 指数系数 c > 0

    Returns:
        A_o

    Raises:
        NumericOverflowError: A_o 超出双精度范围
    """
    if not math.isfinite(alpha) or not 0.0 < alpha <= 2.0:
        raise DomainError(f"α 必须在 (0, 2] 内，收到 {alpha}")
    if not math.isfinite(c) or c <= 0.0:
        raise DomainError(f"c 必须为正，收到 {c}")
    log_a0 = 0.5 * (math.log(alpha) + math.log(2.0 * c) / alpha
                    - math.log(2.0) - log_gamma(1.0 / alpha))
    if log_a0 > _LOG_FLOAT_MAX:
        raise NumericOverflowError(f"A_o 超出双精度范围（α={alpha}, c={c}）")
    return math.exp(log_a0)


def _check_branch(w: WavePacket) -> None:
    if w.params.alpha == 1.0 and w.params.beta != 0.0:
        raise UnsupportedBranchError("α = 1 且 β ≠ 0 的波包需要对数分支，未实现")


def psi0(w: WavePacket, x: float) -> complex:
    """
    初始波包 ψ(x,0) = A_o·exp[imx − c|x|^α(1 + iβ·sgn(x)·tan(πα/2))]

    偏斜项只乘在 −c|x|^α 上，因此 |ψ| 与 β 无关。
    """
    _check_branch(w)
    return w.a0 * char_fn(w.params, x)


def psi(w: WavePacket, x: float, t: float) -> complex:
    """ψ(x,t) = ψ(x − vt, 0)"""
    return psi0(w, x - w.v * t)


def prob_density(w: WavePacket, x: float, t: float) -> float:
    """概率密度 |ψ(x,t)|² = A_o²·exp[−2c|x − vt|^α]"""
    y = abs(x - w.v * t)
    return w.a0 * w.a0 * math.exp(-scaled_power(w.params.alpha, 2.0 * w.params.c, y))


def norm_check(w: WavePacket, q: Optional[QuadratureConfig] = None, t: float = 0.0,
               tol: float = NORM_TOLERANCE) -> float:
    """
    数值计算 ∫|ψ(x,t)|² dx

    以 x = vt 为中心折叠成半直线积分。

    Args:
        w: 波包
        q: 积分配置
        t: 时刻
        tol: 与 1 的允许偏差

    Returns:
        积分值

    Raises:
        ToleranceNotMetError: 结果偏离 1 超过 tol
    """
    q = q or QuadratureConfig()
    center = w.v * t

    def folded(u):
        return abs(psi(w, center + u, t)) ** 2 + abs(psi(w, center - u, t)) ** 2

    scale = (2.0 * w.params.c) ** (-1.0 / w.params.alpha)
    value, abserr = half_line_integral(folded, 0.0, q, scale=scale)
    if abs(value - 1.0) > tol:
        raise ToleranceNotMetError(
            f"波包归一化失败: ∫|ψ|² = {value:.12g}",
            estimate=abs(value - 1.0),
            target=tol,
        )
    return value


def heisenberg_packet(sigma0: float, tau: float, v: float = 1.0) -> WavePacket:
    """
    Heisenberg 变量下的 Gauss 波包：2πσ_o = m，πτ = c，α = 2

    Args:
        sigma0: 中心波数 σ_o
        tau: 宽度参数 τ > 0
        v: 传播速度

    Returns:
        对应的 WavePacket
    """
    params = StableParams(alpha=2.0, beta=0.0, m=2.0 * math.pi * sigma0, c=math.pi * tau)
    return WavePacket(params=params, v=v)


def heisenberg_psi(sigma0: float, tau: float, x: float) -> complex:
    """Heisenberg 波包 H(x,0) = (2τ)^(1/4)·exp[2πiσ_o x − πτx²]"""
    return (2.0 * tau) ** 0.25 * complex(
        math.cos(2.0 * math.pi * sigma0 * x), math.sin(2.0 * math.pi * sigma0 * x)
    ) * math.exp(-math.pi * tau * x * x)
