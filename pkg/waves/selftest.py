"""
stablewave 自检

把各模块的关键性质编成一组检查，逐项运行并打印通过/失败表。
selftest 命令的退出码取决于 run_selftest 的返回值。
"""

import math
from typing import Callable, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field

from core.errors import StableWaveError
from core.models import (
    AmplitudeMethod,
    DeBroglieContext,
    GridSpec,
    MomentKind,
    QuadratureConfig,
    StableParams,
    WavePacket,
)
from core.quadrature import half_line_integral
from core.special import (
    exp_power_moment,
    gamma,
    inverse_quadratic_power_integral,
    log_gamma,
    quadratic_moment_power_integral,
)
from core.stable import (
    SERIES_DENSITY_FACTOR,
    char_fn,
    density_numeric,
    density_series,
    scaled_power,
    total_mass,
)

from .amplitude import amplitude, amplitude_moment, amplitude_numeric, evaluator, z_to_sigma
from .packet import heisenberg_packet, heisenberg_psi, norm_check, psi0
from .pde import (
    d2psi_dx2,
    dpsi_dt,
    fd_convergence_order,
    heat_form_branches,
    heat_form_coefficient,
    heat_form_profile,
    wave_residual,
)
from .uncertainty import (
    delta_x,
    delta_x_numeric,
    delta_z_formula,
    delta_z_numeric,
    de_broglie,
    product_formula,
    uncertainty_report,
)

# 三个锚点乘积：α = 2、1、1/2
ANCHOR_PRODUCTS = {2.0: 0.5, 1.0: 1.0 / math.sqrt(2.0), 0.5: math.sqrt(7.5)}

SELFTEST_SEED = 20240611


class CheckResult(BaseModel):
    """单项检查结果"""
    name: str
    passed: bool
    detail: str = Field("", description="失败时的说明或关键数值")


Check = Callable[[QuadratureConfig], Tuple[bool, str]]


# ======================== 各项检查 ========================

def check_anchor_products(q: QuadratureConfig) -> Tuple[bool, str]:
    """完整数值流程复现 ΔxΔz 锚点，每个 α 取两个 c"""
    cases = [(2.0, 0.0), (1.0, 0.0), (0.5, -1.0)]
    worst = 0.0
    for alpha, beta in cases:
        for c in (1.0, 2.0):
            w = WavePacket(params=StableParams(alpha=alpha, beta=beta, m=0.0, c=c))
            dz, kind = delta_z_numeric(evaluator(w, AmplitudeMethod.NUMERIC_FT, q), q)
            if dz is None or kind == MomentKind.DIVERGENT:
                return False, f"α={alpha}, c={c} 的 Δz 无法计算"
            product = delta_x_numeric(w, q) * dz
            worst = max(worst, abs(product - ANCHOR_PRODUCTS[alpha]))
    return worst <= 1e-6, f"最大偏差 {worst:.3g}"


def check_product_formula(q: QuadratureConfig) -> Tuple[bool, str]:
    """一般公式在锚点处一致，小 α 不溢出"""
    worst = max(abs(product_formula(a) - v) for a, v in ANCHOR_PRODUCTS.items())
    small = product_formula(0.1)
    product_formula(0.05)
    return worst <= 1e-12 and small > 1e9, f"锚点偏差 {worst:.3g}，ΔxΔz(0.1) = {small:.4g}"


def check_normalization(q: QuadratureConfig) -> Tuple[bool, str]:
    """12 组参数的 ∫|ψ|² = 1"""
    betas = {0.5: -1.0, 1.5: 0.7}
    for alpha in (0.5, 1.0, 1.5, 2.0):
        for c in (0.5, 1.0, 2.0):
            w = WavePacket(params=StableParams(alpha=alpha, beta=betas.get(alpha, 0.0), c=c))
            norm_check(w, q)
    return True, "12/12"


def check_closed_vs_numeric(q: QuadratureConfig) -> Tuple[bool, str]:
    """Gauss、Cauchy、Pearson V 闭式振幅与数值变换在 101 点网格上一致"""
    cases = [
        (StableParams(alpha=2.0, c=1.0), AmplitudeMethod.CLOSED_GAUSSIAN, (-5.0, 5.0)),
        (StableParams(alpha=1.0, c=1.0), AmplitudeMethod.CLOSED_CAUCHY, (-5.0, 5.0)),
        (StableParams(alpha=0.5, beta=-1.0, c=1.0), AmplitudeMethod.CLOSED_LEVY, (-2.0, 8.0)),
    ]
    worst = 0.0
    for params, method, (z_min, z_max) in cases:
        w = WavePacket(params=params)
        e = evaluator(w, method, q)
        for z in np.linspace(z_min, z_max, 101):
            worst = max(worst, abs(amplitude(e, float(z)) - amplitude_numeric(w, float(z), q)))
    return worst <= 1e-6, f"sup 误差 {worst:.3g}"


def check_series_vs_numeric(q: QuadratureConfig) -> Tuple[bool, str]:
    """级数密度与数值反演互相验证，并检查对称关系"""
    worst = 0.0
    for alpha in (0.6, 0.75, 1.5, 1.8):
        for beta in (0.0, 0.5):
            p = StableParams(alpha=alpha, beta=beta)
            for z in (0.25, 0.5, 1.0, 2.0, 5.0):
                series = density_series(p, z, q) / SERIES_DENSITY_FACTOR
                numeric = density_numeric(p, z, q)
                worst = max(worst, abs(series - numeric) / abs(numeric))
    rng = np.random.default_rng(SELFTEST_SEED)
    worst_sym = 0.0
    for _ in range(50):
        p = StableParams(alpha=float(rng.uniform(0.5, 2.0)), beta=float(rng.uniform(-1.0, 1.0)))
        z = float(rng.uniform(-5.0, 5.0))
        diff = density_numeric(p, -z, q) - density_numeric(p.with_beta(-p.beta), z, q)
        worst_sym = max(worst_sym, abs(diff) * SERIES_DENSITY_FACTOR)
    passed = worst <= 1e-6 and worst_sym <= 1e-8
    return passed, f"相对误差 {worst:.3g}，对称偏差 {worst_sym:.3g}"


def check_pde(q: QuadratureConfig) -> Tuple[bool, str]:
    """解析残差、差分收敛阶与 Cauchy 热方程系数"""
    analytic = 0.0
    for alpha in (1.0, 1.5, 2.0):
        w = WavePacket(params=StableParams(alpha=alpha, m=0.7, c=1.0), v=1.5)
        grid = GridSpec(t=0.5, exclusion_radius=1e-3)
        analytic = max(analytic, wave_residual(w, grid, "analytic").max_abs)

    orders = []
    for alpha in (1.5, 2.0):
        w = WavePacket(params=StableParams(alpha=alpha, c=1.0), v=2.0)
        grid = GridSpec(fd_step=1e-2, exclusion_radius=0.25)
        orders.append(fd_convergence_order(w, grid))

    cauchy = WavePacket(params=StableParams(alpha=1.0, m=1.0, c=1.0), v=1.0)
    profile = heat_form_profile(cauchy, GridSpec())
    positive = np.array([k for x, k in profile if x > 0.0])
    spread = float(np.var(positive.real) + np.var(positive.imag))
    kappa_error = float(np.max(np.abs(positive - complex(0.5, 0.5))))

    passed = analytic <= 1e-12 and min(orders) >= 1.9 and spread < 1e-12 and kappa_error < 1e-12
    return passed, (f"解析残差 {analytic:.3g}，收敛阶 {min(orders):.3f}，"
                    f"κ 方差 {spread:.3g}")


def check_heisenberg(q: QuadratureConfig) -> Tuple[bool, str]:
    """Heisenberg 代换下波包逐点一致，且 ΔxΔp = h/(4π)"""
    sigma0, tau = 0.8, 1.7
    w = heisenberg_packet(sigma0, tau)
    rng = np.random.default_rng(SELFTEST_SEED)
    worst = 0.0
    for x in rng.uniform(-3.0, 3.0, 50):
        worst = max(worst, abs(psi0(w, float(x)) - heisenberg_psi(sigma0, tau, float(x))))

    ctx = DeBroglieContext(h=6.62607015e-34)
    p = w.params
    delta_p = de_broglie(z_to_sigma(delta_z_formula(p.alpha, p.c)), ctx)
    relation = delta_x(p.alpha, p.c) * delta_p / (ctx.h / (4.0 * math.pi))
    return worst <= 1e-12 and abs(relation - 1.0) <= 1e-12, f"逐点误差 {worst:.3g}"


# ======================== 不变量 ========================

def check_special_identities(q: QuadratureConfig) -> Tuple[bool, str]:
    """Γ(x+1) = xΓ(x)，exp(ln Γ) = Γ，指数幂矩与数值积分一致"""
    worst = 0.0
    for x in (0.3, 1.7, 4.2, 9.5):
        worst = max(worst, abs(gamma(x + 1.0) / (x * gamma(x)) - 1.0))
        worst = max(worst, abs(math.exp(log_gamma(x)) / gamma(x) - 1.0))

    worst_moment = 0.0
    for alpha in (0.5, 1.0, 1.5, 2.0):
        for k in (0, 2):
            value, _ = half_line_integral(lambda y: math.exp(-scaled_power(alpha, 1.0, y)), k, q)
            worst_moment = max(worst_moment, abs(value / exp_power_moment(k, alpha) - 1.0))
    return worst <= 1e-12 and worst_moment <= 1e-8, (
        f"Gamma 相对误差 {worst:.3g}，矩相对误差 {worst_moment:.3g}")


def check_stable_invariants(q: QuadratureConfig) -> Tuple[bool, str]:
    """|φ(z)| = exp(−c|z|^α)，数值密度总质量为 1"""
    worst = 0.0
    for alpha in (0.5, 1.0, 1.5, 2.0):
        for beta in (0.0, 0.7):
            for c in (0.5, 2.0):
                p = StableParams(alpha=alpha, beta=beta, m=0.4, c=c)
                for z in (-3.0, -0.2, 0.7, 2.5):
                    expected = math.exp(-c * abs(z) ** alpha)
                    worst = max(worst, abs(abs(char_fn(p, z)) / expected - 1.0))

    worst_mass = 0.0
    for alpha in (1.5, 2.0):
        for beta in (0.0, 0.5):
            for c in (0.5, 2.0):
                p = StableParams(alpha=alpha, beta=beta, m=0.3, c=c)
                worst_mass = max(worst_mass, abs(total_mass(p, q) - 1.0))
    return worst <= 1e-12 and worst_mass <= 1e-4, (
        f"模长相对误差 {worst:.3g}，总质量偏差 {worst_mass:.3g}")


def check_packet_invariants(q: QuadratureConfig) -> Tuple[bool, str]:
    """|ψ| 与 m、β 无关，归一化与 t 无关"""
    worst = 0.0
    for alpha in (0.5, 1.5, 2.0):
        base = WavePacket(params=StableParams(alpha=alpha, c=1.2))
        for beta in (-0.6, 0.9):
            for m in (0.0, 3.0):
                w = WavePacket(params=StableParams(alpha=alpha, beta=beta, m=m, c=1.2))
                for x in (-2.0, -0.3, 0.8, 2.6):
                    worst = max(worst, abs(abs(psi0(w, x)) - abs(psi0(base, x))))

    w = WavePacket(params=StableParams(alpha=1.2, m=0.5, c=1.3), v=-2.0)
    norms = [norm_check(w, q, t=t) for t in (0.0, 1.3, -2.2)]
    drift = max(norms) - min(norms)
    return worst <= 1e-14 and drift <= 1e-8, f"|ψ| 偏差 {worst:.3g}，范数漂移 {drift:.3g}"


def check_amplitude_invariants(q: QuadratureConfig) -> Tuple[bool, str]:
    """β = 0 时 A 为偶函数，A ≥ 0，Cauchy 矩与递推积分一致"""
    odd_part = 0.0
    for alpha in (0.8, 1.5):
        w = WavePacket(params=StableParams(alpha=alpha, m=0.6, c=1.4))
        for u in (0.1, 0.9, 2.5):
            odd_part = max(odd_part, abs(amplitude_numeric(w, 0.6 + u, q)
                                         - amplitude_numeric(w, 0.6 - u, q)))

    skewed = WavePacket(params=StableParams(alpha=1.3, beta=0.9, m=-0.3, c=0.9))
    lowest = min(amplitude_numeric(skewed, float(z), q) for z in np.linspace(-6.0, 6.0, 13))

    # A² = (2c³/π)/(c² + u²)²，两侧对称
    c = 1.5
    cauchy = evaluator(WavePacket(params=StableParams(alpha=1.0, c=c)),
                       AmplitudeMethod.CLOSED_CAUCHY, q)
    upper = 1e8
    norm = 4.0 * c ** 3 / math.pi * inverse_quadratic_power_integral(upper, 2, 1.0, c * c)
    second = 4.0 * c ** 3 / math.pi * quadratic_moment_power_integral(upper, 2, 1.0, c * c)
    reduction = max(abs(amplitude_moment(cauchy, 0.0, q) - norm),
                    abs(amplitude_moment(cauchy, 2.0, q) - second) / (c * c))

    passed = odd_part <= 1e-10 and lowest >= -1e-9 and reduction <= 1e-6
    return passed, f"奇部 {odd_part:.3g}，最小值 {lowest:.3g}，递推偏差 {reduction:.3g}"


def check_uncertainty_invariants(q: QuadratureConfig) -> Tuple[bool, str]:
    """乘积与 c、m 无关，随 α 减小单调增大"""
    scale_spread = 0.0
    for alpha in (0.5, 1.5):
        products = [delta_x(alpha, c) * delta_z_formula(alpha, c) for c in (0.25, 1.0, 4.0)]
        scale_spread = max(scale_spread, (max(products) - min(products)) / product_formula(alpha))
    numeric = [uncertainty_report(WavePacket(params=StableParams(alpha=2.0, c=c)), q)
               for c in (0.25, 1.0, 4.0)]
    base = uncertainty_report(WavePacket(params=StableParams(alpha=2.0, m=0.0)), q)
    moved = uncertainty_report(WavePacket(params=StableParams(alpha=2.0, m=10.0)), q)
    if any(r.product_numeric is None for r in numeric + [base, moved]):
        return False, "数值乘积无法计算"
    numeric_error = max(abs(r.product_numeric - 0.5) for r in numeric)
    shift = abs(moved.delta_z_numeric - base.delta_z_numeric) / base.delta_z_numeric

    chain = [product_formula(a) for a in (0.25, 0.5, 1.0, 2.0)]
    monotone = chain[0] > chain[1] > chain[2] > chain[3] and product_formula(0.1) > 1e9

    passed = scale_spread <= 1e-12 and numeric_error <= 1e-6 and shift <= 1e-7 and monotone
    return passed, (f"尺度偏差 {scale_spread:.3g}，数值偏差 {numeric_error:.3g}，"
                    f"平移偏差 {shift:.3g}")


def check_pde_invariants(q: QuadratureConfig) -> Tuple[bool, str]:
    """α = 0.6 的平移残差，κ·ψ_xx = ψ_t，Cauchy 负侧 κ 为常数"""
    w = WavePacket(params=StableParams(alpha=0.6, m=0.7, c=1.0), v=1.5)
    advection = wave_residual(w, GridSpec(t=0.5, exclusion_radius=1e-3), "advection").max_abs

    w = WavePacket(params=StableParams(alpha=1.5, m=0.4, c=0.9), v=1.2)
    heat = max(abs(heat_form_coefficient(w, x, 0.3) * d2psi_dx2(w, x, 0.3)
                   - dpsi_dt(w, x, 0.3)) for x in (-2.0, 0.5, 1.7))

    cauchy = WavePacket(params=StableParams(alpha=1.0, m=1.0, c=1.0), v=1.0)
    negative = heat_form_branches(cauchy)["negative"]
    profile = heat_form_profile(cauchy, GridSpec())
    branch_error = max(abs(k - negative) for x, k in profile if x < 0.0)

    passed = advection <= 1e-12 and heat <= 1e-10 and branch_error <= 1e-12
    return passed, f"平移残差 {advection:.3g}，热方程偏差 {heat:.3g}，负侧偏差 {branch_error:.3g}"


SELFTEST_CHECKS: List[Tuple[str, Check]] = [
    ("锚点乘积（数值）", check_anchor_products),
    ("一般公式", check_product_formula),
    ("归一化 12 组", check_normalization),
    ("闭式/数值振幅", check_closed_vs_numeric),
    ("级数/数值密度", check_series_vs_numeric),
    ("PDE 检查", check_pde),
    ("Heisenberg 约化", check_heisenberg),
    ("特殊函数恒等式", check_special_identities),
    ("稳定分布不变量", check_stable_invariants),
    ("波包不变量", check_packet_invariants),
    ("振幅不变量", check_amplitude_invariants),
    ("不确定度不变量", check_uncertainty_invariants),
    ("PDE 不变量", check_pde_invariants),
]


def run_checks(q: Optional[QuadratureConfig] = None,
               checks: Optional[List[Tuple[str, Check]]] = None) -> List[CheckResult]:
    """运行所有检查，单项失败不会中断其余检查"""
    q = q or QuadratureConfig()
    results = []
    for name, check in checks or SELFTEST_CHECKS:
        try:
            passed, detail = check(q)
        except (StableWaveError, ArithmeticError, ValueError) as e:
            passed, detail = False, f"{type(e).__name__}: {e}"
        results.append(CheckResult(name=name, passed=passed, detail=detail))
    return results


def print_table(results: List[CheckResult]) -> None:
    width = max(len(r.name) for r in results) + 2
    print("=" * 60)
    for r in results:
        mark = "✅ 通过" if r.passed else "❌ 失败"
        print(f"{r.name:<{width}}{mark}  {r.detail}")
    print("=" * 60)
    passed = sum(1 for r in results if r.passed)
    print(f"共 {len(results)} 项，通过 {passed} 项")


def run_selftest(q: Optional[QuadratureConfig] = None) -> bool:
    """
    运行自检并打印结果表

    Returns:
        全部通过时为 True
    """
    results = run_checks(q)
    print_table(results)
    return all(r.passed for r in results)
