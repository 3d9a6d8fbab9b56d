"""异常定义：各阶段共享的错误类型，CLI据此映射退出码"""
from typing import Optional


class EmulatorError(Exception):
    """所有仿真流水线错误的基类"""


class PlatformError(EmulatorError, ValueError):
    """平台描述文件解析或不变量校验失败"""

    def __init__(self, message: str, field: Optional[str] = None):
        self.field = field
        if field:
            message = f"{field}: {message}"
        super().__init__(message)


class CircuitError(EmulatorError, ValueError):
    """电路IR构造或预言机调用失败"""


class TranspileError(EmulatorError, ValueError):
    """编译流水线（预处理/布局/路由/展开）失败"""


class ScheduleError(EmulatorError, ValueError):
    """脉冲编译或调度失败"""


class ArtifactError(EmulatorError, ValueError):
    """中间产物（JSON）格式错误"""

    def __init__(self, message: str, path: Optional[str] = None):
        self.path = path
        if path:
            message = f"{path}: {message}"
        super().__init__(message)


class SolverError(EmulatorError, RuntimeError):
    """数值积分失败"""


class StiffnessError(SolverError):
    """步长下溢：积分器在某时刻无法继续推进"""

    def __init__(self, message: str, time_ns: float):
        self.time_ns = time_ns
        super().__init__(f"{message} (t={time_ns:.6g} ns)")


class InvariantError(EmulatorError, RuntimeError):
    """密度矩阵不变量（迹、正定性、纯度）超出容差"""

    def __init__(self, invariant: str, time_ns: Optional[float], value: float):
        self.invariant = invariant
        self.time_ns = time_ns
        self.value = value
        where = f" at t={time_ns:.6g} ns" if time_ns is not None else ""
        super().__init__(f"invariant '{invariant}' violated{where} (value {value:.3e})")
