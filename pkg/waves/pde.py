"""
stablewave 偏微分方程检查

验证平移波包 ψ(x − vt) 的微分结构：
- 解析导数公式（β = 0）
- 弦振动方程 ψ_tt = v²·ψ_xx 的残差（解析与有限差分两条路线）
- 热方程形式 ψ_t = κ·ψ_xx 的系数，以及 Cauchy 情形下的 Schrödinger 形式

|x − vt|^(α−2) 在中心处发散，所有网格检查跳过排除带 |x − vt| < r。
"""

import math
from typing import Callable, Dict, List, Tuple

import numpy as np

from core.errors import (
    DegenerateParameterError,
    HeatFormDivisionError,
    MethodMismatchError,
    SingularityError,
    UnsupportedBranchError,
)
from core.models import DeBroglieContext, GridSpec, ResidualReport, StableParams, WavePacket
from core.special import sgn

from .packet import psi

ROUTES = ("analytic", "fd", "advection")


def default_exclusion_radius(p: StableParams) -> float:
    """默认排除带半宽 1e-3·(2c)^(−1/α)"""
    return 1e-3 * (2.0 * p.c) ** (-1.0 / p.alpha)


def _require_symmetric(w: WavePacket) -> None:
    if w.params.beta != 0.0:
        raise UnsupportedBranchError(f"PDE 检查只支持 β = 0，收到 β={w.params.beta}")


def _center_offset(w: WavePacket, x: float, t: float, exclusion_radius: float) -> float:
    """返回 y = x − vt，并检查奇异带"""
    y = x - w.v * t
    if abs(y) < exclusion_radius:
        raise SingularityError(f"y = {y:.3g} 位于排除带 |y| < {exclusion_radius:g} 内")
    if y == 0.0 and w.params.alpha < 2.0:
        raise SingularityError(f"α={w.params.alpha} 时 ψ 在 x = vt 处不可二阶求导")
    return y


def _first_factor(p: StableParams, y: float) -> complex:
    """D₁ = im − cα|y|^(α−1)·sgn y"""
    if y == 0.0:
        return complex(0.0, p.m)
    return complex(-p.c * p.alpha * abs(y) ** (p.alpha - 1.0) * sgn(y), p.m)


def _second_factor(p: StableParams, y: float) -> complex:
    """D₂ = D₁² − cα(α−1)|y|^(α−2)"""
    d1 = _first_factor(p, y)
    if p.alpha == 2.0:
        return d1 * d1 - 2.0 * p.c
    return d1 * d1 - p.c * p.alpha * (p.alpha - 1.0) * abs(y) ** (p.alpha - 2.0)


def dpsi_dx(w: WavePacket, x: float, t: float, exclusion_radius: float = 0.0) -> complex:
    """
    ∂ψ/∂x = (im − cα|x−vt|^(α−1)·sgn y)·ψ

    Args:
        w: 波包（β = 0）
        x: 位置
        t: 时刻
        exclusion_radius: 排除带半宽

    Raises:
        UnsupportedBranchError: β ≠ 0
        SingularityError: 位于排除带内，或 α ≤ 1 时恰在中心
    """
    _require_symmetric(w)
    y = x - w.v * t
    if abs(y) < exclusion_radius or (y == 0.0 and w.params.alpha <= 1.0):
        raise SingularityError(f"y = {y:.3g} 处一阶导数奇异或位于排除带内")
    return _first_factor(w.params, y) * psi(w, x, t)


def d2psi_dx2(w: WavePacket, x: float, t: float, exclusion_radius: float = 0.0) -> complex:
    """∂²ψ/∂x² = ((im − cα|y|^(α−1)·sgn y)² − cα(α−1)|y|^(α−2))·ψ"""
    _require_symmetric(w)
    y = _center_offset(w, x, t, exclusion_radius)
    return _second_factor(w.params, y) * psi(w, x, t)


def dpsi_dt(w: WavePacket, x: float, t: float, exclusion_radius: float = 0.0) -> complex:
    """∂ψ/∂t = −v·∂ψ/∂x"""
    return -w.v * dpsi_dx(w, x, t, exclusion_radius)


def d2psi_dt2(w: WavePacket, x: float, t: float, exclusion_radius: float = 0.0) -> complex:
    """∂²ψ/∂t² = v²·∂²ψ/∂x²"""
    return w.v * w.v * d2psi_dx2(w, x, t, exclusion_radius)


def heat_form_coefficient(w: WavePacket, x: float, t: float,
                          exclusion_radius: float = 0.0) -> complex:
    """
    热方程形式 ∂ψ/∂t = κ·∂²ψ/∂x² 的系数

        κ = −v·D₁/D₂

    α = 1 时在 y > 0 一侧为常数 −v/(im − c)，在 y < 0 一侧为 −v/(im + c)。

    Raises:
        SingularityError: 位于排除带内
        HeatFormDivisionError: D₂ = 0
    """
    _require_symmetric(w)
    y = _center_offset(w, x, t, exclusion_radius)
    d2 = _second_factor(w.params, y)
    if d2 == 0:
        raise HeatFormDivisionError(f"y = {y:.6g} 处热方程形式的分母为零")
    return -w.v * _first_factor(w.params, y) / d2


def heat_form_branches(w: WavePacket) -> Dict[str, complex]:
    """
    Cauchy 波包（α = 1）两侧的常数热方程系数

    Returns:
        {"positive": −v/(im − c), "negative": −v/(im + c)}
    """
    _require_symmetric(w)
    p = w.params
    if p.alpha != 1.0:
        raise MethodMismatchError(f"常数热方程系数只存在于 α = 1，收到 α={p.alpha}")
    return {
        "positive": -w.v / complex(-p.c, p.m),
        "negative": -w.v / complex(p.c, p.m),
    }


def schrodinger_form(ctx: DeBroglieContext, sigma: float, m: float, c: float) -> complex:
    """
    Schrödinger 形式 ih·ψ_t = K·ψ_xx 的系数

        K = −(h²σ/2M)·(m − ic)/(m² + c²)

    Raises:
        DegenerateParameterError: m = c = 0
    """
    denom = m * m + c * c
    if denom == 0.0:
        raise DegenerateParameterError("m 与 c 不能同时为 0")
    return -(ctx.h * ctx.h * sigma / (2.0 * ctx.M)) * complex(m, -c) / denom


def schrodinger_heat_coefficient(ctx: DeBroglieContext, sigma: float, m: float, c: float) -> complex:
    """代入 E = p²/2M、p = hσ 后的热方程系数 (hσ/2M)·(im + c)/(m² + c²)"""
    denom = m * m + c * c
    if denom == 0.0:
        raise DegenerateParameterError("m 与 c 不能同时为 0")
    return (ctx.h * sigma / (2.0 * ctx.M)) * complex(c, m) / denom


# ======================== 网格检查 ========================

def _report(route: str, errors: List[float], n_excluded: int) -> ResidualReport:
    values = np.asarray(errors, dtype=float)
    if values.size == 0:
        return ResidualReport(route=route, max_abs=0.0, rms=0.0, n_evaluated=0,
                              n_excluded=n_excluded)
    return ResidualReport(
        route=route,
        max_abs=float(np.max(values)),
        rms=float(np.sqrt(np.mean(values ** 2))),
        n_evaluated=int(values.size),
        n_excluded=n_excluded,
    )


def _scan(w: WavePacket, g: GridSpec, reach: float,
          measure: Callable[[float], float]) -> Tuple[List[float], int]:
    """逐点求误差，跳过排除带以及差分模板会跨过中心的点"""
    errors = []
    excluded = 0
    singular_center = w.params.alpha < 2.0
    for x in g.points():
        y = float(x) - w.v * g.t
        if abs(y) < g.exclusion_radius or (singular_center and abs(y) <= reach):
            excluded += 1
            continue
        errors.append(measure(float(x)))
    return errors, excluded


def wave_residual(w: WavePacket, g: GridSpec, route: str = "analytic") -> ResidualReport:
    """
    弦振动方程残差 |ψ_tt − v²·ψ_xx|

    Args:
        w: 波包（β = 0）
        g: 网格
        route: analytic（解析导数）、fd（三点中心差分）、advection（|ψ_t + v·ψ_x|）

    Returns:
        ResidualReport
    """
    _require_symmetric(w)
    if route not in ROUTES:
        raise MethodMismatchError(f"未知的残差路线: {route}")
    v, t, h = w.v, g.t, g.fd_step

    if route == "analytic":
        def measure(x):
            return abs(d2psi_dt2(w, x, t) - v * v * d2psi_dx2(w, x, t))
        reach = 0.0
    elif route == "advection":
        def measure(x):
            return abs(dpsi_dt(w, x, t) + v * dpsi_dx(w, x, t))
        reach = 0.0
    else:
        def measure(x):
            center = psi(w, x, t)
            psi_tt = (psi(w, x, t + h) - 2.0 * center + psi(w, x, t - h)) / (h * h)
            psi_xx = (psi(w, x + h, t) - 2.0 * center + psi(w, x - h, t)) / (h * h)
            return abs(psi_tt - v * v * psi_xx)
        # 时间方向的模板在 y 上移动 |v|·h
        reach = max(1.0, abs(v)) * h

    errors, excluded = _scan(w, g, reach, measure)
    return _report(route, errors, excluded)


def fd_convergence_order(w: WavePacket, g: GridSpec) -> float:
    """步长减半前后有限差分残差之比的 log₂"""
    coarse = wave_residual(w, g, "fd")
    fine = wave_residual(w, g.model_copy(update={"fd_step": g.fd_step / 2.0}), "fd")
    if fine.max_abs == 0.0 or coarse.max_abs == 0.0:
        return math.inf
    return math.log2(coarse.max_abs / fine.max_abs)


def fd_gradient_check(w: WavePacket, g: GridSpec) -> ResidualReport:
    """
    解析导数与五点中心差分的相对误差

    相对误差以 max(|解析值|, |ψ|) 为分母；报告取一阶与二阶导数中的较大者。
    """
    _require_symmetric(w)
    t, h = g.t, g.fd_step

    def measure(x):
        f_m2, f_m1 = psi(w, x - 2 * h, t), psi(w, x - h, t)
        f_0 = psi(w, x, t)
        f_p1, f_p2 = psi(w, x + h, t), psi(w, x + 2 * h, t)
        fd1 = (-f_p2 + 8.0 * f_p1 - 8.0 * f_m1 + f_m2) / (12.0 * h)
        fd2 = (-f_p2 + 16.0 * f_p1 - 30.0 * f_0 + 16.0 * f_m1 - f_m2) / (12.0 * h * h)
        exact1 = dpsi_dx(w, x, t)
        exact2 = d2psi_dx2(w, x, t)
        err1 = abs(fd1 - exact1) / max(abs(exact1), abs(f_0))
        err2 = abs(fd2 - exact2) / max(abs(exact2), abs(f_0))
        return max(err1, err2)

    errors, excluded = _scan(w, g, 2.0 * h, measure)
    return _report("gradient", errors, excluded)


def heat_form_profile(w: WavePacket, g: GridSpec) -> List[Tuple[float, complex]]:
    """网格上（排除带外）的热方程系数 κ(x, t)"""
    _require_symmetric(w)
    profile = []
    for x in g.points():
        y = float(x) - w.v * g.t
        if abs(y) < g.exclusion_radius or y == 0.0:
            continue
        try:
            profile.append((float(x), heat_form_coefficient(w, float(x), g.t)))
        except HeatFormDivisionError:
            continue
    return profile
