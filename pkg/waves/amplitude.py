"""
stablewave 振幅函数

A(z) = (1/√(2π))·∫ψ(x,0)·e^{−ixz} dx，即 A_o·√(2π) 倍的稳定概率密度。
在这一约定下 ∫A² dz = 1，并且 Gauss / Cauchy / Pearson V 闭式可以原样复现。

Heisenberg 的 σ 变量（核 e^{−2πixσ}）通过 z = 2πσ 换算，内部计算一律使用 z。
"""

import math
from typing import Optional, Tuple

from core.errors import (
    DomainError,
    ImaginaryResidueError,
    MethodMismatchError,
    ToleranceNotMetError,
    UnsupportedBranchError,
)
from core.models import (
    AmplitudeEvaluator,
    AmplitudeMethod,
    QuadratureConfig,
    StableParams,
    WavePacket,
)
from core.quadrature import cutoff_radius, fourier_half_line, fourier_integral, half_line_integral
from core.stable import (
    SQRT_2PI,
    char_fn_envelope,
    envelope_mass,
    outside_support,
    stable_density,
)

from .packet import psi0

# 闭式方法的平方归一化容差；数值方法放宽到 1e-6
CLOSED_NORM_TOLERANCE = 1e-8
NUMERIC_NORM_TOLERANCE = 1e-6

CLOSED_METHODS = (
    AmplitudeMethod.CLOSED_GAUSSIAN,
    AmplitudeMethod.CLOSED_CAUCHY,
    AmplitudeMethod.CLOSED_LEVY,
)


def check_method(method: AmplitudeMethod, params: StableParams) -> None:
    """
    检查求值方法与参数是否匹配

    Raises:
        MethodMismatchError: 闭式/级数方法的参数约束不满足
        UnsupportedBranchError: α = 1 且 β ≠ 0
    """
    alpha, beta = params.alpha, params.beta
    if alpha == 1.0 and beta != 0.0:
        raise UnsupportedBranchError("α = 1 且 β ≠ 0 的振幅函数未实现")
    if method == AmplitudeMethod.CLOSED_GAUSSIAN and not (alpha == 2.0 and beta == 0.0):
        raise MethodMismatchError(f"Gauss 闭式要求 α=2, β=0，收到 α={alpha}, β={beta}")
    if method == AmplitudeMethod.CLOSED_CAUCHY and not (alpha == 1.0 and beta == 0.0):
        raise MethodMismatchError(f"Cauchy 闭式要求 α=1, β=0，收到 α={alpha}, β={beta}")
    if method == AmplitudeMethod.CLOSED_LEVY and not (alpha == 0.5 and beta == -1.0):
        raise MethodMismatchError(f"Pearson V 闭式要求 α=1/2, β=−1，收到 α={alpha}, β={beta}")
    if method == AmplitudeMethod.SERIES and alpha in (1.0, 2.0):
        raise MethodMismatchError(f"级数方法要求 α ∉ {{1, 2}}，收到 α={alpha}")


def closed_method_for(params: StableParams) -> AmplitudeMethod:
    """返回参数对应的闭式方法"""
    if params.alpha == 2.0 and params.beta == 0.0:
        return AmplitudeMethod.CLOSED_GAUSSIAN
    if params.alpha == 1.0 and params.beta == 0.0:
        return AmplitudeMethod.CLOSED_CAUCHY
    if params.alpha == 0.5 and params.beta == -1.0:
        return AmplitudeMethod.CLOSED_LEVY
    raise MethodMismatchError(
        f"α={params.alpha}, β={params.beta} 没有闭式振幅（只支持 Gauss、Cauchy、Pearson V）"
    )


def method_from_name(name: str, params: StableParams) -> AmplitudeMethod:
    """命令行方法名 closed / series / numeric 到 AmplitudeMethod"""
    if name == "closed":
        return closed_method_for(params)
    if name == "series":
        return AmplitudeMethod.SERIES
    if name == "numeric":
        return AmplitudeMethod.NUMERIC_FT
    raise MethodMismatchError(f"未知的求值方法: {name}")


# ======================== 闭式 ========================

def gaussian_amplitude(p: StableParams, z: float) -> float:
    """Gauss 振幅 (2πc)^(−1/4)·exp[−(z−m)²/(4c)]"""
    u = z - p.m
    return (2.0 * math.pi * p.c) ** -0.25 * math.exp(-u * u / (4.0 * p.c))


def cauchy_amplitude(p: StableParams, z: float) -> float:
    """Cauchy 振幅 c^(1/2)·√(2/π)·c/(c² + (z−m)²)"""
    u = z - p.m
    return math.sqrt(p.c) * math.sqrt(2.0 / math.pi) * p.c / (p.c * p.c + u * u)


def levy_amplitude(p: StableParams, z: float) -> float:
    """Pearson V 振幅 c²·(z−m)^(−3/2)·exp[−c²/(2(z−m))]，z ≤ m 时为 0"""
    y = z - p.m
    if y <= 0.0:
        return 0.0
    return p.c * p.c * y ** -1.5 * math.exp(-p.c * p.c / (2.0 * y))


_CLOSED_FORMS = {
    AmplitudeMethod.CLOSED_GAUSSIAN: gaussian_amplitude,
    AmplitudeMethod.CLOSED_CAUCHY: cauchy_amplitude,
    AmplitudeMethod.CLOSED_LEVY: levy_amplitude,
}


# ======================== 数值变换 ========================

def amplitude_numeric(w: WavePacket, z: float, q: Optional[QuadratureConfig] = None) -> float:
    """
    数值 Fourier 变换 A(z) = (1/√(2π))·∫ψ(x,0)·e^{−ixz} dx

    误差目标以 ∫|ψ(x,0)| dx 为绝对量级；α < 1 且 |β| = 1 时支撑之外的 A(z) 恰为 0，不做积分。

    Args:
        w: 波包
        z: 频率变量
        q: 积分配置

    Returns:
        A(z) 的实部（虚部残差经检查后丢弃）

    Raises:
        ToleranceNotMetError: 积分精度不足
        ImaginaryResidueError: 虚部 ≥ 10·abs_tol·max(1, ∫|ψ|)，说明参数分支不一致
    """
    q = q or QuadratureConfig()
    # 在 x = 0 处求一次值以触发分支检查
    psi0(w, 0.0)
    p = w.params
    if outside_support(p, z):
        return 0.0
    cutoff = cutoff_radius(p.alpha, p.c, q)
    mass = w.a0 * envelope_mass(p.alpha, p.c)
    re, im, _ = fourier_integral(lambda x: w.a0 * char_fn_envelope(p, x), z - p.m, cutoff, q,
                                 scale=mass)
    value = re / SQRT_2PI
    residue = im / SQRT_2PI
    if abs(residue) >= 10.0 * q.target(0.0, mass):
        raise ImaginaryResidueError(f"振幅函数虚部过大: {residue:.3g}", residue=residue)
    return value


def amplitude(e: AmplitudeEvaluator, z: float) -> float:
    """
    求振幅函数 A(z)

    Args:
        e: 求值器
        z: 频率变量（z 单位）

    Returns:
        A(z)
    """
    p = e.packet.params
    check_method(e.method, p)
    if e.method in _CLOSED_FORMS:
        return _CLOSED_FORMS[e.method](p, z)
    if e.method == AmplitudeMethod.SERIES:
        density, _ = stable_density(p, z, e.quadrature, method="series", verbose=False)
        return e.packet.a0 * SQRT_2PI * density
    return amplitude_numeric(e.packet, z, e.quadrature)


# ======================== 矩与归一化 ========================

def amplitude_moment(e: AmplitudeEvaluator, power: float,
                     q: Optional[QuadratureConfig] = None) -> float:
    """
    ∫|z − m|^p·A(z)² dz

    闭式方法直接积到无穷；级数与数值方法积到 |z − m| = tail_radius·c′，
    其外按稳定分布的尾部 A² ~ K·|z|^(−2(1+α)) 外推，K 由截断点的值确定。

    Raises:
        DomainError: 幂律尾部下该矩发散（p ≥ 1 + 2α）
    """
    q = q or e.quadrature
    p = e.packet.params
    alpha = p.alpha
    if alpha < 2.0 and power >= 1.0 + 2.0 * alpha:
        raise DomainError(f"α={alpha} 时 {power} 阶矩发散")

    symmetric = p.beta == 0.0

    def folded(u):
        right = amplitude(e, p.m + u) ** 2
        if symmetric:
            return 2.0 * right
        return right + amplitude(e, p.m - u) ** 2

    scale = p.c_prime
    if e.method in CLOSED_METHODS:
        value, _ = half_line_integral(folded, power, q, scale=scale)
        return value

    radius = q.tail_radius * scale
    core, _ = half_line_integral(folded, power, q, upper=radius, scale=scale)
    tail = 0.0
    if alpha < 2.0:
        tail = folded(radius) * radius ** (power + 1.0) / (1.0 + 2.0 * alpha - power)
    return core + tail


def square_norm_check(e: AmplitudeEvaluator, q: Optional[QuadratureConfig] = None,
                      tol: Optional[float] = None) -> float:
    """
    数值计算 ∫A(z)² dz 并检查其等于 1

    Args:
        e: 求值器
        q: 积分配置
        tol: 允许偏差，默认闭式 1e-8、其他方法 1e-6

    Returns:
        积分值

    Raises:
        ToleranceNotMetError: 偏离 1 超过 tol
    """
    if tol is None:
        tol = CLOSED_NORM_TOLERANCE if e.method in CLOSED_METHODS else NUMERIC_NORM_TOLERANCE
    value = amplitude_moment(e, 0.0, q)
    if abs(value - 1.0) > tol:
        raise ToleranceNotMetError(
            f"振幅平方归一化失败: ∫A² = {value:.12g}",
            estimate=abs(value - 1.0),
            target=tol,
        )
    return value


# ======================== 平面波叠加 ========================

def superpose(e: AmplitudeEvaluator, x: float, t: float,
              q: Optional[QuadratureConfig] = None) -> complex:
    """
    由振幅函数叠加平面波重建波包

        ψ(x,t) = (1/√(2π))·∫A(z)·e^{iz(x − vt)} dz
               = (1/√(2π))·e^{im y}·∫A(m+u)·e^{iuy} du，y = x − vt

    Returns:
        ψ(x,t)
    """
    q = q or e.quadrature
    p = e.packet.params
    y = x - e.packet.v * t

    def even(u):
        return amplitude(e, p.m + u) + amplitude(e, p.m - u)

    def odd(u):
        return amplitude(e, p.m + u) - amplitude(e, p.m - u)

    re, _ = fourier_half_line(even, y, "cos", q)
    im = 0.0
    if p.beta != 0.0:
        im, _ = fourier_half_line(odd, y, "sin", q)
    carrier = complex(math.cos(p.m * y), math.sin(p.m * y))
    return carrier * complex(re, im) / SQRT_2PI


# ======================== Heisenberg σ 单位 ========================

def sigma_to_z(sigma: float) -> float:
    """z = 2πσ"""
    return 2.0 * math.pi * sigma


def z_to_sigma(z: float) -> float:
    """σ = z/(2π)"""
    return z / (2.0 * math.pi)


def amplitude_sigma(e: AmplitudeEvaluator, sigma: float) -> float:
    """σ 单位下的振幅 A_σ(σ) = √(2π)·A(2πσ)，满足 ∫A_σ² dσ = 1"""
    return SQRT_2PI * amplitude(e, sigma_to_z(sigma))


def heisenberg_amplitude(sigma: float, sigma0: float, tau: float) -> float:
    """Heisenberg 振幅 (2/τ)^(1/4)·exp[−π(σ − σ_o)²/τ]"""
    return (2.0 / tau) ** 0.25 * math.exp(-math.pi * (sigma - sigma0) ** 2 / tau)


def evaluator(w: WavePacket, method: AmplitudeMethod = AmplitudeMethod.NUMERIC_FT,
              q: Optional[QuadratureConfig] = None) -> AmplitudeEvaluator:
    """构造求值器的便捷函数"""
    return AmplitudeEvaluator(packet=w, method=method, quadrature=q or QuadratureConfig())


def closed_and_numeric(w: WavePacket, z: float,
                       q: Optional[QuadratureConfig] = None) -> Tuple[float, float]:
    """同一点的闭式与数值振幅，便于交叉验证"""
    closed = amplitude(evaluator(w, closed_method_for(w.params), q), z)
    return closed, amplitude_numeric(w, z, q)
