"""
stablewave 配置加载

容差默认值写在 QuadratureConfig 中；部署环境可以通过 .env 或环境变量覆盖：

    STABLEWAVE_ABS_TOL=1e-12
    STABLEWAVE_REL_TOL=1e-10
    STABLEWAVE_MAX_PANELS=2000
    STABLEWAVE_TRUNCATION_EPSILON=1e-16
    STABLEWAVE_MAX_TERMS=400
"""

import os
from typing import Dict, Optional

from dotenv import load_dotenv

from .errors import DomainError
from .models import QuadratureConfig

ENV_PREFIX = "STABLEWAVE_"

# 环境变量名 -> (字段名, 类型)
ENV_FIELDS = {
    "ABS_TOL": ("abs_tol", float),
    "REL_TOL": ("rel_tol", float),
    "MAX_PANELS": ("max_panels", int),
    "TRUNCATION_EPSILON": ("truncation_epsilon", float),
    "MAX_TERMS": ("max_terms", int),
}


def env_overrides(environ: Optional[Dict[str, str]] = None) -> Dict[str, float]:
    """
    读取环境变量中的容差覆盖值

    Args:
        environ: 环境变量字典，默认使用 os.environ

    Returns:
        字段名到数值的映射
    """
    environ = os.environ if environ is None else environ
    overrides = {}
    for suffix, (field, cast) in ENV_FIELDS.items():
        raw = environ.get(ENV_PREFIX + suffix)
        if raw is None or not raw.strip():
            continue
        try:
            overrides[field] = cast(raw.strip())
        except ValueError:
            raise DomainError(f"环境变量 {ENV_PREFIX + suffix} 的值无法解析: {raw!r}")
    return overrides


def load_quadrature_config(dotenv_path: Optional[str] = None, **flags) -> QuadratureConfig:
    """
    构造积分配置：默认值 < .env/环境变量 < 命令行参数

    Args:
        dotenv_path: .env 文件路径，默认自动查找
        **flags: 命令行显式给出的字段（值为 None 的会被忽略）

    Returns:
        验证后的 QuadratureConfig
    """
    # 已设置的环境变量优先于 .env
    load_dotenv(dotenv_path, override=False)
    values = env_overrides()
    values.update({key: val for key, val in flags.items() if val is not None})
    return QuadratureConfig(**values)
