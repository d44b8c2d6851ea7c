"""
stablewave 统一数据模型

定义项目中使用的核心数据结构，基于 Pydantic 实现数据验证和类型安全。
所有模型都是不可变值，可以在任意计算之间安全共享。
"""

from enum import Enum
from functools import cached_property
from typing import List, Optional

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    computed_field,
    field_validator,
    model_validator,
)


class StableParams(BaseModel):
    """
    稳定分布参数 (α, β, m, c)

    这是整个系统的核心数据结构：波包、振幅函数、不确定度报告和 PDE 检查
    都由这四个参数决定。
    """
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    alpha: float = Field(..., gt=0.0, le=2.0, description="特征指数 α ∈ (0, 2]")
    beta: float = Field(0.0, ge=-1.0, le=1.0, description="偏斜参数 β ∈ [−1, 1]")
    m: float = Field(0.0, description="位置参数 m")
    c: float = Field(1.0, gt=0.0, description="指数系数 c > 0")

    @property
    def c_prime(self) -> float:
        """尺度参数 c′ = c^(1/α)"""
        return self.c ** (1.0 / self.alpha)

    @property
    def is_symmetric(self) -> bool:
        """β = 0 的对称情形"""
        return self.beta == 0.0

    def with_beta(self, beta: float) -> "StableParams":
        """返回只替换 β 的参数副本"""
        return self.model_copy(update={"beta": beta})

    def with_location(self, m: float) -> "StableParams":
        """返回只替换 m 的参数副本"""
        return self.model_copy(update={"m": m})


class QuadratureConfig(BaseModel):
    """
    积分与级数的容差配置

    默认值可以通过环境变量覆盖，见 core.config。
    """
    model_config = ConfigDict(frozen=True)

    abs_tol: float = Field(1e-12, gt=0.0, description="绝对误差容限")
    rel_tol: float = Field(1e-10, gt=0.0, description="相对误差容限")
    max_panels: int = Field(2000, ge=1, description="自适应积分的最大子区间数")
    truncation_epsilon: float = Field(
        1e-16, gt=0.0, lt=1.0,
        description="特征函数模长低于该值的尾部被截断"
    )
    max_terms: int = Field(400, ge=1, description="级数最大项数")
    max_cutoff: float = Field(1e7, gt=0.0, description="截断半径上限，超出则视为无法积分")
    error_slack: float = Field(
        100.0, ge=1.0,
        description="允许的误差估计相对于容限的放大倍数"
    )
    tail_radius: float = Field(
        2000.0, gt=0.0,
        description="重尾矩积分的核心区间半径（以 c′ 为单位），其外用幂律尾外推"
    )

    def target(self, value: float, scale: float = 1.0) -> float:
        """
        误差目标 max(abs_tol·max(1, scale), rel_tol·|value|)

        scale 是被积函数的 L1 量级；积分值因抵消而接近 0 时，
        绝对误差随它放大。
        """
        return max(self.abs_tol * max(1.0, scale), self.rel_tol * abs(value))

    def accepts(self, estimate: float, value: float, scale: float = 1.0) -> bool:
        """判断误差估计是否在可接受范围内"""
        return estimate <= self.error_slack * self.target(value, scale)


class WavePacket(BaseModel):
    """
    广义波包 ψ(x,t) = A_o·exp[im(x−vt) − c|x−vt|^α(1 + iβ·sgn·tan(πα/2))]

    v = E/p 是传播速度；A_o 由 (α, c) 决定并缓存。
    """
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    params: StableParams = Field(..., description="稳定分布参数")
    v: float = Field(1.0, description="传播速度 v = E/p")

    @computed_field  # type: ignore[prop-decorator]
    @cached_property
    def a0(self) -> float:
        """归一化常数 A_o"""
        from waves.packet import normalizer

        return normalizer(self.params.alpha, self.params.c)


class AmplitudeMethod(str, Enum):
    """振幅函数求值方法"""
    CLOSED_GAUSSIAN = "ClosedGaussian"
    CLOSED_CAUCHY = "ClosedCauchy"
    CLOSED_LEVY = "ClosedLevy"
    SERIES = "Series"
    NUMERIC_FT = "NumericFT"


class AmplitudeEvaluator(BaseModel):
    """
    振幅函数 A(z) 的求值器

    绑定波包、求值方法与积分配置；方法的参数约束在构造时检查。
    """
    model_config = ConfigDict(frozen=True)

    packet: WavePacket
    method: AmplitudeMethod = AmplitudeMethod.NUMERIC_FT
    quadrature: QuadratureConfig = Field(default_factory=QuadratureConfig)

    @model_validator(mode="after")
    def validate_method(self) -> "AmplitudeEvaluator":
        """验证方法与参数匹配"""
        from waves.amplitude import check_method

        check_method(self.method, self.packet.params)
        return self


class MomentKind(str, Enum):
    """Δz 所使用的矩"""
    SECOND_CENTRAL = "SecondCentral"
    FIRST_ABSOLUTE = "FirstAbsolute"
    DIVERGENT = "Divergent"


class UncertaintyReport(BaseModel):
    """
    不确定度报告

    数值字段在对应积分失败时为 None（此时 moment_kind 为 Divergent）。
    """
    model_config = ConfigDict(frozen=True)

    params: StableParams
    delta_x: float = Field(..., gt=0.0, description="位置不确定度 Δx（公式）")
    delta_x_numeric: Optional[float] = Field(None, description="位置不确定度 Δx（数值积分）")
    delta_z_formula: float = Field(..., gt=0.0, description="频率不确定度 Δz = c^(1/α)")
    delta_z_numeric: Optional[float] = Field(None, description="频率不确定度 Δz（数值积分）")
    moment_kind: MomentKind
    product_formula: float = Field(..., gt=0.0, description="ΔxΔz 的一般公式值")
    log_product_formula: float = Field(..., description="ΔxΔz 一般公式的自然对数")
    product_numeric: Optional[float] = Field(None, description="Δx_num · Δz_num")
    method: AmplitudeMethod = AmplitudeMethod.NUMERIC_FT


class DeBroglieContext(BaseModel):
    """de Broglie 关系中的常数"""
    model_config = ConfigDict(frozen=True)

    h: float = Field(1.0, gt=0.0, description="普朗克常数（调用方单位）")
    M: float = Field(1.0, gt=0.0, description="质量，仅用于 Schrödinger 形式")


class GridSpec(BaseModel):
    """PDE 检查使用的空间网格"""
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    x_min: float = Field(-3.0, description="网格左端点")
    x_max: float = Field(3.0, description="网格右端点")
    n_points: int = Field(121, ge=3, description="网格点数")
    t: float = Field(0.0, description="检查时刻")
    fd_step: float = Field(1e-4, gt=0.0, description="有限差分步长")
    exclusion_radius: float = Field(0.0, ge=0.0, description="排除带 |x − vt| < r 的半宽")

    @model_validator(mode="after")
    def validate_span(self) -> "GridSpec":
        """验证网格区间"""
        if not self.x_min < self.x_max:
            raise ValueError(f"x_min ({self.x_min}) 必须小于 x_max ({self.x_max})")
        if self.fd_step >= (self.x_max - self.x_min):
            raise ValueError("fd_step 必须远小于网格跨度")
        return self

    def points(self) -> np.ndarray:
        """网格点"""
        return np.linspace(self.x_min, self.x_max, self.n_points)


class ResidualReport(BaseModel):
    """残差/误差统计"""
    model_config = ConfigDict(frozen=True)

    route: str = Field(..., description="检查路线：analytic / fd / gradient")
    max_abs: float = Field(..., ge=0.0)
    rms: float = Field(..., ge=0.0)
    n_evaluated: int = Field(..., ge=0)
    n_excluded: int = Field(..., ge=0)

    @property
    def n_points(self) -> int:
        return self.n_evaluated + self.n_excluded


class OutputFormat(str, Enum):
    """输出格式"""
    CSV = "csv"
    JSON = "json"
    SVG = "svg"
    XLSX = "xlsx"


class OutputSpec(BaseModel):
    """命令输出规格；path 为 None 时写入标准输出"""
    model_config = ConfigDict(frozen=True)

    format: OutputFormat = OutputFormat.CSV
    path: Optional[str] = None

    @model_validator(mode="after")
    def validate_binary_target(self) -> "OutputSpec":
        """xlsx 是二进制格式，必须写入文件"""
        if self.format == OutputFormat.XLSX and not self.path:
            raise ValueError("xlsx 输出需要 --out 指定文件路径")
        return self


class Series(BaseModel):
    """一条命名的数据列，供表格与图表生成器使用"""
    name: str
    values: List[Optional[float]]


class GridTable(BaseModel):
    """
    网格命令的表格结果

    columns 与每一行等长；数值列可以包含 None（例如 Divergent 字段）。
    """
    title: str = Field("stablewave", description="表格标题")
    columns: List[str]
    rows: List[list] = Field(default_factory=list)
    x_column: str = Field(..., description="用作横轴的列名")
    group_column: Optional[str] = Field(None, description="分组列（如 evolve 的 t），每组画一条曲线")

    @field_validator("rows")
    @classmethod
    def validate_row_width(cls, v, info):
        """验证每一行与表头等宽"""
        columns = info.data.get("columns") or []
        for row in v:
            if len(row) != len(columns):
                raise ValueError(f"行宽 {len(row)} 与表头宽度 {len(columns)} 不一致")
        return v

    def numeric_series(self) -> List[Series]:
        """横轴以外的数值列"""
        result = []
        for idx, name in enumerate(self.columns):
            if name in (self.x_column, self.group_column):
                continue
            values = [row[idx] for row in self.rows]
            if all(val is None or isinstance(val, (int, float)) for val in values):
                result.append(Series(name=name, values=values))
        return result

    def x_values(self) -> List[float]:
        idx = self.columns.index(self.x_column)
        return [row[idx] for row in self.rows]
