"""
stablewave 不确定度

位置不确定度 Δx、频率不确定度 Δz、它们的乘积以及 de Broglie 单位换算。

Δz 的矩在 α = 1/2 处切换：α > 1/2 用二阶中心矩，α ≤ 1/2 用一阶绝对矩
（二阶矩在 α = 1/2 处对数发散）。报告中总是注明所用的矩。
"""

import math
from typing import Optional, Tuple

from core.errors import (
    DegenerateParameterError,
    DomainError,
    NumericOverflowError,
    SeriesConvergenceError,
    ToleranceNotMetError,
)
from core.models import (
    AmplitudeEvaluator,
    AmplitudeMethod,
    DeBroglieContext,
    MomentKind,
    QuadratureConfig,
    UncertaintyReport,
    WavePacket,
)
from core.quadrature import half_line_integral
from core.special import log_gamma

from .amplitude import amplitude_moment, z_to_sigma
from .packet import psi0

# exp 不溢出的最大指数
_LOG_FLOAT_MAX = math.log(1.7976931348623157e308)


def _check_alpha_c(alpha: float, c: float = 1.0) -> None:
    if not math.isfinite(alpha) or not 0.0 < alpha <= 2.0:
        raise DomainError(f"α 必须在 (0, 2] 内，收到 {alpha}")
    if not math.isfinite(c) or c <= 0.0:
        raise DomainError(f"c 必须为正，收到 {c}")


def delta_x(alpha: float, c: float) -> float:
    """
    位置不确定度 (Δx)² = (2c)^(−2/α)·Γ(3/α)/Γ(1/α)

    Args:
        alpha: 特征指数
        c: 指数系数

    Returns:
        Δx
    """
    _check_alpha_c(alpha, c)
    log_var = (-2.0 / alpha) * math.log(2.0 * c) + log_gamma(3.0 / alpha) - log_gamma(1.0 / alpha)
    if 0.5 * log_var > _LOG_FLOAT_MAX:
        raise NumericOverflowError(f"Δx 超出双精度范围（α={alpha}, c={c}）")
    return math.exp(0.5 * log_var)


def delta_x_numeric(w: WavePacket, q: Optional[QuadratureConfig] = None) -> float:
    """数值计算 Δx = (∫x²|ψ(x,0)|² dx)^(1/2)"""
    q = q or QuadratureConfig()

    def folded(u):
        return abs(psi0(w, u)) ** 2 + abs(psi0(w, -u)) ** 2

    scale = (2.0 * w.params.c) ** (-1.0 / w.params.alpha)
    value, _ = half_line_integral(folded, 2.0, q, scale=scale)
    return math.sqrt(value)


def moment_kind_for(alpha: float) -> MomentKind:
    """α > 1/2 用二阶中心矩，否则用一阶绝对矩"""
    return MomentKind.SECOND_CENTRAL if alpha > 0.5 else MomentKind.FIRST_ABSOLUTE


def delta_z_numeric(e: AmplitudeEvaluator,
                    q: Optional[QuadratureConfig] = None) -> Tuple[Optional[float], MomentKind]:
    """
    频率不确定度

        α > 1/2:  Δz = (∫(z−m)²·A(z)² dz)^(1/2)，SecondCentral
        α ≤ 1/2:  Δz = ∫|z−m|·A(z)² dz，FirstAbsolute

    所选矩也无法数值收敛时返回 (None, Divergent)。
    """
    kind = moment_kind_for(e.packet.params.alpha)
    power = 2.0 if kind == MomentKind.SECOND_CENTRAL else 1.0
    try:
        value = amplitude_moment(e, power, q)
    except (ToleranceNotMetError, SeriesConvergenceError, DomainError):
        return None, MomentKind.DIVERGENT
    if kind == MomentKind.SECOND_CENTRAL:
        return math.sqrt(value), kind
    return value, kind


def log_product_formula(alpha: float) -> float:
    """ln(ΔxΔz) = (1/2)[−(2/α)ln 2 + ln Γ(3/α) − ln Γ(1/α)]，对所有 α ∈ (0, 2] 有限"""
    _check_alpha_c(alpha)
    return 0.5 * ((-2.0 / alpha) * math.log(2.0) + log_gamma(3.0 / alpha) - log_gamma(1.0 / alpha))


def product_formula(alpha: float) -> float:
    """
    一般不确定关系 ΔxΔz = √(2^(−2/α)·Γ(3/α)/Γ(1/α))

    Raises:
        NumericOverflowError: 结果超出双精度（α 极小时），此时请使用 log_product_formula
    """
    log_value = log_product_formula(alpha)
    if log_value > _LOG_FLOAT_MAX:
        raise NumericOverflowError(f"α={alpha} 时 ΔxΔz = e^{log_value:.1f} 超出双精度范围")
    return math.exp(log_value)


def delta_z_formula(alpha: float, c: float) -> float:
    """Δz 的尺度形式 c^(1/α)"""
    _check_alpha_c(alpha, c)
    log_value = math.log(c) / alpha
    if log_value > _LOG_FLOAT_MAX:
        raise NumericOverflowError(f"c^(1/α) 超出双精度范围（α={alpha}, c={c}）")
    return math.exp(log_value)


def uncertainty_report(w: WavePacket, q: Optional[QuadratureConfig] = None,
                       method: AmplitudeMethod = AmplitudeMethod.NUMERIC_FT) -> UncertaintyReport:
    """
    汇总不确定度报告

    Args:
        w: 波包
        q: 积分配置
        method: 计算 Δz 时振幅函数的求值方法

    Returns:
        UncertaintyReport；数值积分失败的字段为 None
    """
    q = q or QuadratureConfig()
    p = w.params
    e = AmplitudeEvaluator(packet=w, method=method, quadrature=q)

    try:
        dx_numeric = delta_x_numeric(w, q)
    except ToleranceNotMetError:
        dx_numeric = None
    dz_numeric, kind = delta_z_numeric(e, q)

    product_numeric = None
    if dx_numeric is not None and dz_numeric is not None:
        product_numeric = dx_numeric * dz_numeric

    return UncertaintyReport(
        params=p,
        delta_x=delta_x(p.alpha, p.c),
        delta_x_numeric=dx_numeric,
        delta_z_formula=delta_z_formula(p.alpha, p.c),
        delta_z_numeric=dz_numeric,
        moment_kind=kind,
        product_formula=product_formula(p.alpha),
        log_product_formula=log_product_formula(p.alpha),
        product_numeric=product_numeric,
        method=method,
    )


# ======================== de Broglie 关系 ========================

def de_broglie(delta_sigma: float, ctx: DeBroglieContext) -> float:
    """Δp = h·Δσ"""
    return ctx.h * delta_sigma


def momentum_spread(report: UncertaintyReport, ctx: DeBroglieContext,
                    numeric: bool = False) -> Optional[float]:
    """
    由报告中的 Δz 得到 Δp = h·Δz/(2π)

    Args:
        report: 不确定度报告
        ctx: de Broglie 常数
        numeric: 使用数值 Δz 而不是公式 Δz

    Returns:
        Δp；数值 Δz 不存在时为 None
    """
    dz = report.delta_z_numeric if numeric else report.delta_z_formula
    if dz is None:
        return None
    return de_broglie(z_to_sigma(dz), ctx)


def propagation_speed(energy: float, momentum: float) -> float:
    """传播速度 v = E/p"""
    if momentum == 0.0:
        raise DegenerateParameterError("动量 p 不能为 0")
    return energy / momentum


def frequency(z: float, v: float) -> float:
    """频率 ν = z·E/p = z·v"""
    return z * v
