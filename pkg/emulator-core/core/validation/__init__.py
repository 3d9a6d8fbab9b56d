"""逐阶段校验：电路等价、脉冲合法性、演化与保真度"""
from .validation_schema import StageVerdict, ValidationReport
from .transformation_validator import TransformationValidator, ideal_state

__all__ = [
    'StageVerdict',
    'ValidationReport',
    'TransformationValidator',
    'ideal_state',
]
