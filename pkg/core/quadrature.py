"""
stablewave 积分工具

所有积分都经过这里：
- cutoff_radius: 特征函数尾部截断半径
- fourier_integral: 截断后的振荡积分 ∫_{−L}^{L} g(x)·e^{−iωx} dx（QUADPACK 余弦/正弦加权规则）
- half_line_integral: ∫₀^U u^p·f(u) du，对数代换 u = s·e^t 适配拉伸指数与幂律尾部
"""

import math
import warnings
from typing import Callable, Optional, Tuple

from scipy import integrate
from scipy.integrate import IntegrationWarning

from .errors import NumericOverflowError, ToleranceNotMetError
from .models import QuadratureConfig

# QAWO 每个子区间保存的 Chebyshev 矩个数
CHEBYSHEV_MOMENTS = 100

# exp 的安全指数范围
_EXP_LIMIT = 700.0


def cutoff_radius(alpha: float, c: float, q: QuadratureConfig) -> float:
    """
    截断半径 L：|u| > L 时 exp(−c|u|^α) < truncation_epsilon

    Args:
        alpha: 特征指数
        c: 指数系数
        q: 积分配置

    Returns:
        L

    Raises:
        ToleranceNotMetError: L 超过 max_cutoff（α 过小时积分无法完成）
    """
    log_radius = math.log(math.log(1.0 / q.truncation_epsilon) / c) / alpha
    if log_radius > math.log(q.max_cutoff):
        raise ToleranceNotMetError(
            f"截断半径 e^{log_radius:.1f} 超过上限 {q.max_cutoff:g}（α={alpha}, c={c}）",
            estimate=math.inf,
            target=q.abs_tol,
        )
    return math.exp(log_radius)


def _quad(func: Callable[[float], float], a: float, b: float,
          q: QuadratureConfig, mass: float = 1.0, **kwargs) -> Tuple[float, float]:
    """
    调用 scipy quad，收集积分警告而不是打印

    出现警告（如舍入误差阻止进一步细分）时，误差估计仍在
    error_slack·target(value, mass) 之内的结果照常接受。
    """
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", IntegrationWarning)
        try:
            value, abserr = integrate.quad(
                func, a, b,
                epsabs=q.abs_tol, epsrel=q.rel_tol, limit=q.max_panels,
                **kwargs,
            )[:2]
        except OverflowError as e:
            raise NumericOverflowError(f"被积函数溢出: {e}") from e
    if not math.isfinite(value):
        raise ToleranceNotMetError(f"积分结果非有限值: {value}", estimate=math.inf, target=q.abs_tol)
    if caught and not q.accepts(abserr, value, mass):
        raise ToleranceNotMetError(
            f"积分未收敛: {caught[-1].message}",
            estimate=abserr,
            target=q.target(value, mass),
        )
    return value, abserr


def _check(value: float, abserr: float, q: QuadratureConfig, label: str,
           mass: float = 1.0) -> None:
    if not q.accepts(abserr, value, mass):
        raise ToleranceNotMetError(
            f"{label} 误差估计 {abserr:.3g} 超出容限",
            estimate=abserr,
            target=q.target(value, mass),
        )


def integrate_interval(func: Callable[[float], float], a: float, b: float,
                       q: QuadratureConfig, points=None) -> Tuple[float, float]:
    """
    有限区间上的自适应积分

    Returns:
        (积分值, 误差估计)
    """
    kwargs = {"points": points} if points else {}
    value, abserr = _quad(func, a, b, q, **kwargs)
    _check(value, abserr, q, "区间积分")
    return value, abserr


def fourier_integral(envelope: Callable[[float], complex], omega: float,
                     cutoff: float, q: QuadratureConfig,
                     scale: float = 1.0) -> Tuple[float, float, float]:
    """
    计算 ∫_{−L}^{L} g(x)·e^{−iωx} dx

    将积分折叠到 [0, L]：
        Re = ∫[Re(g₊)·cos ωx + Im(g₋)·sin ωx]
        Im = ∫[Im(g₊)·cos ωx − Re(g₋)·sin ωx]
    其中 g₊ = g(x) + g(−x)，g₋ = g(x) − g(−x)。
    每一部分用 QUADPACK 的 QAWO 规则（修正 Clenshaw–Curtis）处理振荡。

    Args:
        envelope: 去掉载波 e^{imx} 的复值包络 g
        omega: 频率 ω
        cutoff: 截断半径 L
        q: 积分配置
        scale: ∫|g| 的量级，积分值因振荡抵消接近 0 时作为绝对误差的参考

    Returns:
        (实部, 虚部, 误差估计之和)
    """
    def even_re(x):
        return (envelope(x) + envelope(-x)).real

    def even_im(x):
        return (envelope(x) + envelope(-x)).imag

    def odd_re(x):
        return (envelope(x) - envelope(-x)).real

    def odd_im(x):
        return (envelope(x) - envelope(-x)).imag

    if omega == 0.0:
        re, err_re = _quad(even_re, 0.0, cutoff, q, scale)
        im, err_im = _quad(even_im, 0.0, cutoff, q, scale)
        abserr = err_re + err_im
        _check(re, abserr, q, "Fourier 积分", scale)
        return re, im, abserr

    # QAWO 使用 |ω|，正弦部分的符号单独处理
    w = abs(omega)
    sign = 1.0 if omega > 0.0 else -1.0
    weighted = {"wvar": w, "maxp1": CHEBYSHEV_MOMENTS}

    re_cos, e1 = _quad(even_re, 0.0, cutoff, q, scale, weight="cos", **weighted)
    re_sin, e2 = _quad(odd_im, 0.0, cutoff, q, scale, weight="sin", **weighted)
    im_cos, e3 = _quad(even_im, 0.0, cutoff, q, scale, weight="cos", **weighted)
    im_sin, e4 = _quad(odd_re, 0.0, cutoff, q, scale, weight="sin", **weighted)

    re = re_cos + sign * re_sin
    im = im_cos - sign * im_sin
    abserr = e1 + e2 + e3 + e4
    _check(re, abserr, q, "Fourier 积分", scale)
    return re, im, abserr


def fourier_half_line(func: Callable[[float], float], omega: float, weight: str,
                      q: QuadratureConfig) -> Tuple[float, float]:
    """
    ∫₀^∞ f(u)·cos(ωu) du 或 ∫₀^∞ f(u)·sin(ωu) du（QUADPACK QAWF）

    QAWF 只使用绝对容限；ω = 0 时退化为普通积分。

    Args:
        func: 衰减的被积函数 f
        omega: 频率 ω
        weight: "cos" 或 "sin"
        q: 积分配置

    Returns:
        (积分值, 误差估计)
    """
    if omega == 0.0:
        if weight == "sin":
            return 0.0, 0.0
        value, abserr = _quad(func, 0.0, math.inf, q)
    else:
        sign = 1.0 if (omega > 0.0 or weight == "cos") else -1.0
        value, abserr = _quad(func, 0.0, math.inf, q, weight=weight, wvar=abs(omega),
                              limlst=max(3, q.max_panels // 10))
        value *= sign
    _check(value, abserr, q, "Fourier 半直线积分")
    return value, abserr


def half_line_integral(func: Callable[[float], float], power: float, q: QuadratureConfig,
                       upper: Optional[float] = None, scale: float = 1.0) -> Tuple[float, float]:
    """
    计算 ∫₀^U u^p·f(u) du（U 缺省为 ∞）

    代换 u = scale·e^t 后在 t ∈ (−∞, ln(U/scale)] 上积分，
    拉伸指数衰减与幂律尾部都变为指数衰减。

    Args:
        func: 被积函数 f
        power: 幂次 p（> −1）
        q: 积分配置
        upper: 积分上限，None 表示无穷
        scale: 特征尺度，使被积函数的主体落在 t ≈ 0 附近

    Returns:
        (积分值, 误差估计)

    Raises:
        NumericOverflowError: scale^(p+1) 超出双精度范围
    """
    log_factor = (power + 1.0) * math.log(scale)
    if log_factor > _EXP_LIMIT:
        raise NumericOverflowError(f"尺度因子 scale^(p+1) 溢出（scale={scale:g}, p={power}）")
    factor = math.exp(log_factor)
    # u = scale·e^t 保持有限
    t_cap = _EXP_LIMIT - max(0.0, math.log(scale))

    def integrand(t):
        if t > t_cap or t < -_EXP_LIMIT:
            return 0.0
        value = func(scale * math.exp(t))
        if value == 0.0:
            return 0.0
        log_weight = (power + 1.0) * t
        if log_weight < _EXP_LIMIT:
            return math.exp(log_weight) * value
        # u^(p+1) 溢出时在对数域相乘
        log_mag = min(log_weight + math.log(abs(value)), _EXP_LIMIT)
        return math.copysign(math.exp(log_mag), value)

    t_max = math.inf if upper is None else math.log(upper / scale)
    value, abserr = _quad(integrand, -math.inf, t_max, q)
    value, abserr = factor * value, factor * abserr
    _check(value, abserr, q, "半直线积分")
    return value, abserr
