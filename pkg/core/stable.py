"""
stablewave 稳定分布核心

对数特征函数、特征函数，以及三种密度求值方式：
- density_series: Gamma 函数级数（1<α<2 与 0<α<1 两种展开），高精度求和
- density_closed: Gauss / Cauchy / Lévy 闭式
- density_numeric: 特征函数的数值 Fourier 反演

约定：density_series / density_reflect 返回带 √(2π) 因子的“去掉归一化常数”的密度
s(z) = √(2π)·f(z)；density_numeric / density_closed 返回真实概率密度 f(z)。
"""

import cmath
import math
import sys
from typing import Optional, Tuple

import mpmath

from .errors import (
    DomainError,
    ImaginaryResidueError,
    MethodMismatchError,
    SeriesConvergenceError,
)
from .models import QuadratureConfig, StableParams
from .quadrature import cutoff_radius, fourier_integral, integrate_interval
from .special import gamma, log_gamma, sgn

SQRT_2PI = math.sqrt(2.0 * math.pi)
SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)

# s(z) = SERIES_DENSITY_FACTOR · f(z)
SERIES_DENSITY_FACTOR = SQRT_2PI

# 级数求和的最低工作精度与保护位数（十进制位）
SERIES_MIN_DPS = 30
SERIES_GUARD_DIGITS = 20

# 级数项数的硬上限；max_terms 从项的增长阶段结束后开始计数
SERIES_TERM_LIMIT = 5000

# c|z|^α 超过此值时 exp(−c|z|^α) 在双精度下为 0
_DECAY_LIMIT = 750.0


def skew_tangent(alpha: float) -> float:
    """tan(πα/2)，α = 2 时精确取 0"""
    if alpha == 2.0:
        return 0.0
    return math.tan(math.pi * alpha / 2.0)


def scaled_power(alpha: float, c: float, a: float) -> float:
    """
    c·a^α（a ≥ 0），在对数域判断大小

    超过 _DECAY_LIMIT 时返回 inf，此时 exp(−c·a^α) 已经下溢为 0。
    """
    if a == 0.0:
        return 0.0
    if math.log(c) + alpha * math.log(a) > math.log(_DECAY_LIMIT):
        return math.inf
    return c * a ** alpha


def _log_envelope(p: StableParams, z: float) -> complex:
    """去掉位置项 imz 的对数特征函数；模长下溢时实部为 −inf、虚部为 0"""
    if z == 0.0:
        return 0j
    a = abs(z)
    power = scaled_power(p.alpha, p.c, a)
    if math.isinf(power):
        return complex(-math.inf, 0.0)
    if p.alpha == 1.0:
        skew = p.beta * sgn(z) * (2.0 / math.pi) * math.log(a)
    else:
        skew = p.beta * sgn(z) * skew_tangent(p.alpha)
    return complex(-power, -power * skew)


def _exp_log(value: complex) -> complex:
    if value.real == -math.inf:
        return 0j
    return cmath.exp(value)


def log_char_fn(p: StableParams, z: float) -> complex:
    """
    对数特征函数

        α ≠ 1: imz − c|z|^α·[1 + iβ·sgn(z)·tan(πα/2)]
        α = 1: imz − c|z|·[1 + iβ·sgn(z)·(2/π)·ln|z|]

    Args:
        p: 稳定分布参数
        z: 频率变量

    Returns:
        复数值，z = 0 时为 0
    """
    return complex(0.0, p.m * z) + _log_envelope(p, z)


def char_fn(p: StableParams, z: float) -> complex:
    """特征函数 exp(log_char_fn)，模长为 exp(−c|z|^α)"""
    return _exp_log(log_char_fn(p, z))


def char_fn_envelope(p: StableParams, z: float) -> complex:
    """去掉载波 e^{imz} 的特征函数"""
    return _exp_log(_log_envelope(p, z))


def envelope_mass(alpha: float, c: float) -> float:
    """∫|φ(u)| du = 2Γ(1 + 1/α)·c^(−1/α)，Fourier 反演误差的参考量级"""
    return 2.0 * math.exp(log_gamma(1.0 + 1.0 / alpha) - math.log(c) / alpha)


def outside_support(p: StableParams, z: float) -> bool:
    """
    α < 1 且 |β| = 1 时分布单侧：β = −1 支撑为 (m, ∞)，β = +1 为 (−∞, m)

    Returns:
        z 落在支撑之外（密度与振幅恰为 0）
    """
    if p.alpha >= 1.0 or abs(p.beta) != 1.0:
        return False
    u = z - p.m
    return u <= 0.0 if p.beta < 0.0 else u >= 0.0


def standardize(u: float, p: StableParams) -> float:
    """标准化 z = (u − m)/c′"""
    return (u - p.m) / p.c_prime


def feller_skewness(alpha: float, beta: float) -> Tuple[float, float]:
    """
    将 (α, β) 映射到 Feller 偏斜参数 γ 与尺度 s

        tan(πγ/2) = β·tan(πα/2)，s = cos(πγ/2)^(−1/α)

    标准化变量 y 的密度等于 Feller 形式在 y/s 处的密度除以 s。

    Returns:
        (γ, s)
    """
    gamma_ = (2.0 / math.pi) * math.atan(beta * skew_tangent(alpha))
    scale = math.cos(math.pi * gamma_ / 2.0) ** (-1.0 / alpha)
    return gamma_, scale


def _series_log_envelope(alpha: float, k: int, log_x: float) -> float:
    """第 k 项去掉正弦因子后的对数模长"""
    if alpha > 1.0:
        return log_gamma(1.0 + k / alpha) - log_gamma(k + 1.0) + k * log_x
    return log_gamma(1.0 + k * alpha) - log_gamma(k + 1.0) - k * alpha * log_x


def _series_terms_needed(alpha: float, y: float, scale: float,
                         q: QuadratureConfig) -> Tuple[int, float]:
    """
    按停止准则确定项数：项的模长 < abs_tol 且在下降

    正弦因子可能使个别项恰为零，所以准则作用在去掉正弦的模长上。
    y 较小而 α 接近 1 时，项先增长数百项再衰减；增长阶段在项的模长
    下降且回落到首项以下时结束，max_terms 从这里开始计数，
    总项数不超过 SERIES_TERM_LIMIT。

    Returns:
        (项数, 最大项模长的 log10)
    """
    log_x = math.log(y / scale)
    log_prefactor = math.log(SQRT_2_OVER_PI / y)
    log_tol = math.log(q.abs_tol)

    first = _series_log_envelope(alpha, 1, log_x) + log_prefactor
    previous = math.inf
    largest = -math.inf
    growth_end = None
    for k in range(1, SERIES_TERM_LIMIT + 1):
        current = _series_log_envelope(alpha, k, log_x) + log_prefactor
        largest = max(largest, current)
        if current < log_tol and current < previous:
            return k, largest / math.log(10.0)
        if growth_end is None and 1 < k and current < previous and current <= first:
            growth_end = k
        if growth_end is not None and k >= growth_end + q.max_terms:
            break
        previous = current
    raise SeriesConvergenceError(
        f"级数在 {k} 项内未收敛（α={alpha}, y={y:g}, max_terms={q.max_terms}）",
        terms=k,
    )


def _standard_series(alpha: float, beta: float, y: float, q: QuadratureConfig) -> float:
    """标准化 (m=0, c=1) 的级数密度 s(y)，y ≥ 0"""
    gamma_, scale = feller_skewness(alpha, beta)
    one_sided_zero = alpha < 1.0 and abs(beta) == 1.0 and gamma_ > 0.0

    if y == 0.0:
        if alpha > 1.0:
            # k = 1 项的极限
            value = (math.exp(log_gamma(1.0 + 1.0 / alpha)) / scale
                     * math.sin(math.pi * (alpha - gamma_) / (2.0 * alpha)))
            return SQRT_2_OVER_PI * value
        if abs(beta) == 1.0:
            return 0.0
        raise SeriesConvergenceError("α < 1 的级数在 y = 0 处发散", terms=0)

    if one_sided_zero:
        return 0.0

    n_terms, largest_log10 = _series_terms_needed(alpha, y, scale, q)
    dps = max(SERIES_MIN_DPS,
              int(math.ceil(largest_log10 - math.log10(q.abs_tol))) + SERIES_GUARD_DIGITS)

    with mpmath.workdps(dps):
        a = mpmath.mpf(alpha)
        g = 2 / mpmath.pi * mpmath.atan(beta * mpmath.tan(mpmath.pi * a / 2))
        s = mpmath.cos(mpmath.pi * g / 2) ** (-1 / a)
        x = mpmath.mpf(y) / s
        total = mpmath.mpf(0)
        if alpha > 1.0:
            for k in range(1, n_terms + 1):
                total += (mpmath.gamma(1 + k / a) / mpmath.factorial(k)
                          * (-x) ** k
                          * mpmath.sin(k * mpmath.pi / (2 * a) * (g - a)))
        else:
            base = -(x ** (-a))
            for k in range(1, n_terms + 1):
                total += (mpmath.gamma(1 + k * a) / mpmath.factorial(k)
                          * base ** k
                          * mpmath.sin(k * mpmath.pi / 2 * (g - a)))
        value = total * mpmath.sqrt(2 / mpmath.pi) / y
    return float(value)


def density_series(p: StableParams, z: float, q: Optional[QuadratureConfig] = None) -> float:
    """
    级数密度（带 √(2π) 因子的约定）

    1 < α < 2:  s(y) = (1/y)·√(2/π)·Σ Γ(1+k/α)/k!·(−x)^k·sin(kπ(γ−α)/(2α))
    0 < α < 1:  s(y) = (1/y)·√(2/π)·Σ Γ(1+kα)/k!·(−x^(−α))^k·sin(kπ(γ−α)/2)
    其中 y = (z − m)/c′，x = y/s，(γ, s) 见 feller_skewness；β = 0 时 γ = 0、s = 1。

    Args:
        p: 稳定分布参数，α ∉ {1, 2}
        z: 自变量，须满足 z ≥ m（z < m 请用 density_reflect）
        q: 积分配置（提供 abs_tol 与 max_terms）

    Returns:
        s(z; m, c)

    Raises:
        MethodMismatchError: α = 1 或 α = 2
        DomainError: z < m
        SeriesConvergenceError: max_terms 内未满足停止准则
    """
    q = q or QuadratureConfig()
    if p.alpha in (1.0, 2.0):
        raise MethodMismatchError(f"级数展开只适用于 α ∈ (0,1)∪(1,2)，收到 α={p.alpha}")
    y = standardize(z, p)
    if y < 0.0:
        raise DomainError(f"级数只在 z ≥ m 处求值（z={z}, m={p.m}），负侧请使用 density_reflect")
    return _standard_series(p.alpha, p.beta, y, q) / p.c_prime


def density_reflect(p: StableParams, z: float, q: Optional[QuadratureConfig] = None) -> float:
    """
    利用对称关系 s_(α,β)(−y) = s_(α,−β)(y) 在任意 z 处求级数密度

    Args:
        p: 稳定分布参数
        z: 自变量

    Returns:
        s(z; m, c)
    """
    if standardize(z, p) >= 0.0:
        return density_series(p, z, q)
    return density_series(p.with_beta(-p.beta), 2.0 * p.m - z, q)


def density_numeric(p: StableParams, z: float, q: Optional[QuadratureConfig] = None) -> float:
    """
    数值反演 f(z) = (1/2π)∫φ(u)·e^{−iuz} du

    被积函数在 |φ| < truncation_epsilon 处截断，振荡部分由 QAWO 规则处理。
    误差目标按 ∫|φ| 的量级给出，单侧分布在支撑之外直接返回 0。

    Returns:
        真实概率密度 f(z)

    Raises:
        ToleranceNotMetError: 误差估计超出容限
        ImaginaryResidueError: 虚部残差 ≥ 10·abs_tol·max(1, ∫|φ|)
    """
    q = q or QuadratureConfig()
    if outside_support(p, z):
        return 0.0
    cutoff = cutoff_radius(p.alpha, p.c, q)
    mass = envelope_mass(p.alpha, p.c)
    re, im, _ = fourier_integral(lambda u: char_fn_envelope(p, u), z - p.m, cutoff, q,
                                 scale=mass)
    value = re / (2.0 * math.pi)
    residue = im / (2.0 * math.pi)
    if abs(residue) >= 10.0 * q.target(0.0, mass):
        raise ImaginaryResidueError(f"反演结果虚部过大: {residue:.3g}", residue=residue)
    return value


def tail_mass(alpha: float, y: float) -> float:
    """
    两侧尾部概率 P(|z − m| > y·c′) 的主项

        2Γ(α)·sin(πα/2)/π · y^(−α)

    与 β 无关（两侧的 1 ± β 相加）；α = 2 时尾部指数衰减，取 0。
    """
    if alpha == 2.0:
        return 0.0
    return 2.0 * gamma(alpha) * math.sin(math.pi * alpha / 2.0) / math.pi * y ** -alpha


def total_mass(p: StableParams, q: Optional[QuadratureConfig] = None,
               radius: float = 50.0) -> float:
    """
    ∫f(z) dz：[m − R, m + R] 上对 density_numeric 积分，再加上 tail_mass(α, radius)

    R = radius·c′；外层积分的容限取 1e-9。
    """
    q = q or QuadratureConfig()
    outer = q.model_copy(update={
        "abs_tol": max(q.abs_tol, 1e-9),
        "rel_tol": max(q.rel_tol, 1e-9),
    })
    half_width = radius * p.c_prime
    core, _ = integrate_interval(lambda z: density_numeric(p, z, q), p.m - half_width,
                                 p.m + half_width, outer, points=[p.m])
    return core + tail_mass(p.alpha, radius)


def closed_form_kind(p: StableParams) -> Optional[str]:
    """返回参数对应的闭式名称：gaussian / cauchy / levy，或 None"""
    if p.alpha == 2.0:
        return "gaussian"
    if p.alpha == 1.0 and p.beta == 0.0:
        return "cauchy"
    if p.alpha == 0.5 and abs(p.beta) == 1.0:
        return "levy"
    return None


def density_closed(p: StableParams, z: float) -> float:
    """
    闭式概率密度

        Gauss (α=2):          exp(−(z−m)²/(4c)) / √(4πc)
        Cauchy (α=1, β=0):    c / (π(c² + (z−m)²))
        Lévy (α=1/2, β=∓1):   c/√(2π)·y^(−3/2)·exp(−c²/(2y))，y = ±(z−m) > 0

    β = −1 时支撑为 (m, ∞)，β = +1 时为 (−∞, m)。
    """
    kind = closed_form_kind(p)
    u = z - p.m
    if kind == "gaussian":
        return math.exp(-u * u / (4.0 * p.c)) / math.sqrt(4.0 * math.pi * p.c)
    if kind == "cauchy":
        return p.c / (math.pi * (p.c * p.c + u * u))
    if kind == "levy":
        y = u if p.beta < 0.0 else -u
        if y <= 0.0:
            return 0.0
        return p.c / SQRT_2PI * y ** -1.5 * math.exp(-p.c * p.c / (2.0 * y))
    raise MethodMismatchError(
        f"α={p.alpha}, β={p.beta} 没有闭式密度（只支持 α=2、α=1 且 β=0、α=1/2 且 |β|=1）"
    )


def stable_density(p: StableParams, z: float, q: Optional[QuadratureConfig] = None,
                   method: str = "numeric", verbose: bool = True) -> Tuple[float, str]:
    """
    统一的密度求值入口，总是返回真实概率密度

    series 方法在停止准则失败时自动退回数值反演。

    Args:
        p: 稳定分布参数
        z: 自变量
        q: 积分配置
        method: closed / series / numeric
        verbose: 退回数值反演时是否打印警告

    Returns:
        (密度值, 分支名)；分支为 closed / series / reflected / numeric / numeric-fallback
    """
    q = q or QuadratureConfig()
    if method == "closed":
        return density_closed(p, z), "closed"
    if method == "numeric":
        return density_numeric(p, z, q), "numeric"
    if method != "series":
        raise MethodMismatchError(f"未知的密度求值方法: {method}")

    branch = "series" if standardize(z, p) >= 0.0 else "reflected"
    try:
        return density_reflect(p, z, q) / SERIES_DENSITY_FACTOR, branch
    except SeriesConvergenceError as e:
        if verbose:
            print(f"⚠️ 级数在 z={z:g} 处未收敛（{e}），改用数值反演", file=sys.stderr)
        return density_numeric(p, z, q), "numeric-fallback"
