"""运行状态模块：各阶段选项与运行清单"""
from .state_schema import (
    TranspileOptions,
    SchedulerPolicy,
    SimOptions,
    ValidationOptions,
    RunOptions,
    RunManifest,
)

__all__ = [
    'TranspileOptions',
    'SchedulerPolicy',
    'SimOptions',
    'ValidationOptions',
    'RunOptions',
    'RunManifest',
]
