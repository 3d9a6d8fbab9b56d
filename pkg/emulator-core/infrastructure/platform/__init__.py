"""平台模型：硬件描述与平台文件加载"""
from .platform_schema import QubitParams, Coupling, GateTimings, PlatformSpec, pure_dephasing_time
from .platform_loader import load_platform, platform_from_dict, platform_to_dict, save_platform

__all__ = [
    'QubitParams',
    'Coupling',
    'GateTimings',
    'PlatformSpec',
    'pure_dephasing_time',
    'load_platform',
    'platform_from_dict',
    'platform_to_dict',
    'save_platform',
]
