"""运行选项与运行清单：使用Pydantic定义各阶段配置结构"""
from typing import Dict, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from config.settings import EQUIVALENCE_TOL, EVOLUTION_TOL, FIDELITY_THRESHOLD, OUTPUT_DT_NS


class TranspileOptions(BaseModel):
    """编译流水线选项"""
    model_config = ConfigDict(frozen=True)

    placement: Literal["trivial", "random"] = "trivial"
    seed: Optional[int] = None  # placement=random 时必填
    routing: Literal["shortest_paths"] = "shortest_paths"
    fold_virtual_z: bool = True
    optimize: bool = True

    @model_validator(mode="after")
    def _seed_for_random(self) -> "TranspileOptions":
        if self.placement == "random" and self.seed is None:
            raise ValueError("seed is required when placement=random")
        return self


class SchedulerPolicy(BaseModel):
    """调度策略：sequential 复现逐脉冲串行时序，asap 允许并行"""
    model_config = ConfigDict(frozen=True)

    mode: Literal["sequential", "asap"] = "sequential"


class SimOptions(BaseModel):
    """动力学仿真选项"""
    model_config = ConfigDict(frozen=True)

    atol: float = Field(default=1e-11, gt=0)
    rtol: float = Field(default=1e-8, gt=0)
    output_dt: float = Field(default=OUTPUT_DT_NS, gt=0)  # ns
    frame: Literal["rotating"] = "rotating"
    decoherence: bool = True
    shots: int = Field(default=1000, ge=0)
    seed: int = 0
    engine: Literal["lindblad", "schrodinger"] = "lindblad"
    stark_tracking: bool = True  # 驱动跟踪交流Stark频移
    check_invariants: bool = True
    positivity_stride: Optional[int] = Field(default=None, ge=1)  # 正定性检查间隔，None 为 max(1, (dim//9)^3)
    min_step: float = Field(default=1e-9, gt=0)  # ns，步长下溢阈值
    max_window_bytes: int = Field(default=64 * 1024 * 1024, gt=0)  # 单个采样窗口的状态内存上限


class ValidationOptions(BaseModel):
    """逐阶段校验选项"""
    model_config = ConfigDict(frozen=True)

    enabled: bool = False
    equivalence_tol: float = Field(default=EQUIVALENCE_TOL, gt=0)
    evolution_tol: float = Field(default=EVOLUTION_TOL, gt=0)
    fidelity_threshold: float = Field(default=FIDELITY_THRESHOLD, ge=0, le=1)
    fidelity_instant: Literal["gate_end", "readout_onset", "readout_end"] = "readout_onset"


class RunOptions(BaseModel):
    """完整流水线选项（组合各阶段选项）"""
    model_config = ConfigDict(frozen=True)

    transpile: TranspileOptions = Field(default_factory=TranspileOptions)
    policy: SchedulerPolicy = Field(default_factory=SchedulerPolicy)
    sim: SimOptions = Field(default_factory=SimOptions)
    validation: ValidationOptions = Field(default_factory=ValidationOptions)

    def to_dict(self) -> dict:
        """转换为字典（用于序列化）"""
        return self.model_dump(mode="json")

    @classmethod
    def from_dict(cls, data: dict) -> "RunOptions":
        """从字典创建（用于反序列化）"""
        return cls(**data)


class RunManifest(BaseModel):
    """运行清单：输入、选项、产物路径与内容哈希"""
    tool: str
    tool_version: str
    input_path: str
    platform_path: str
    options: dict = Field(default_factory=dict)
    artifacts: Dict[str, str] = Field(default_factory=dict)  # 名称 -> 相对路径
    hashes: Dict[str, str] = Field(default_factory=dict)  # 名称 -> sha256

    def to_dict(self) -> dict:
        return self.model_dump(mode="json")
