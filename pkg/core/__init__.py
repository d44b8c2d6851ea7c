"""
stablewave 核心模块

包含数据模型、错误类型、配置加载、特殊函数、积分工具和稳定分布核心。
"""

from .errors import StableWaveError, exit_code_for
from .models import (
    AmplitudeEvaluator,
    AmplitudeMethod,
    DeBroglieContext,
    GridSpec,
    QuadratureConfig,
    StableParams,
    UncertaintyReport,
    WavePacket,
)

__all__ = [
    'AmplitudeEvaluator',
    'AmplitudeMethod',
    'DeBroglieContext',
    'GridSpec',
    'QuadratureConfig',
    'StableParams',
    'StableWaveError',
    'UncertaintyReport',
    'WavePacket',
    'exit_code_for',
]
