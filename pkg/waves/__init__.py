"""
stablewave 波包模块

波包与归一化、振幅函数、不确定度、PDE 检查以及自检。
"""

from .amplitude import amplitude, amplitude_numeric, square_norm_check
from .packet import normalizer, norm_check, prob_density, psi, psi0
from .uncertainty import product_formula, uncertainty_report

__all__ = [
    'amplitude',
    'amplitude_numeric',
    'norm_check',
    'normalizer',
    'prob_density',
    'product_formula',
    'psi',
    'psi0',
    'square_norm_check',
    'uncertainty_report',
]
