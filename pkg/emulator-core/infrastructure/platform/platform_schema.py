"""平台模型：量子比特物理参数、耦合关系与门时长（内部单位 rad/ns 与 ns）"""
import math
from typing import Optional, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from core.errors import PlatformError


class QubitParams(BaseModel):
    """单个transmon的参数"""
    model_config = ConfigDict(frozen=True)

    id: int = Field(ge=0)
    frequency: float  # rad/ns
    anharmonicity: float  # rad/ns，transmon为负
    t1: Optional[float] = None  # ns，None表示关闭能量弛豫
    t2: Optional[float] = None  # ns，None表示关闭退相干

    @field_validator("anharmonicity")
    @classmethod
    def _nonzero_anharmonicity(cls, v: float) -> float:
        if v == 0 or not math.isfinite(v):
            raise ValueError("anharmonicity must be finite and nonzero")
        return v

    @field_validator("t1", "t2")
    @classmethod
    def _positive_time(cls, v: Optional[float]) -> Optional[float]:
        if v is not None and not v > 0:
            raise ValueError("coherence time must be > 0")
        return v

    @model_validator(mode="after")
    def _t2_bound(self) -> "QubitParams":
        if self.t1 is not None and self.t2 is not None and self.t2 > 2 * self.t1:
            raise ValueError("t2 exceeds 2·t1")
        return self


class Coupling(BaseModel):
    """两比特耦合，pair按升序归一化"""
    model_config = ConfigDict(frozen=True)

    pair: Tuple[int, int]
    strength: float = 0.0  # g_ij，rad/ns

    @field_validator("pair")
    @classmethod
    def _normalize_pair(cls, v: Tuple[int, int]) -> Tuple[int, int]:
        a, b = v
        if a == b:
            raise ValueError(f"coupling pair members must be distinct, got ({a}, {b})")
        return (min(a, b), max(a, b))


class GateTimings(BaseModel):
    """标定门时长（ns）"""
    model_config = ConfigDict(frozen=True)

    gpi2_duration: float = Field(default=40.0, ge=0)
    cz_duration: float = Field(default=96.0, ge=0)
    readout_duration: float = Field(default=1000.0, ge=0)
    measurement_buffer: float = Field(default=56.0, ge=0)


class PlatformSpec(BaseModel):
    """硬件描述，加载后不可变"""
    model_config = ConfigDict(frozen=True)

    name: str
    qubits: Tuple[QubitParams, ...]
    couplings: Tuple[Coupling, ...] = ()
    timings: GateTimings = Field(default_factory=GateTimings)
    levels_per_qubit: int = Field(default=3, ge=2)
    description: str = ""

    @model_validator(mode="after")
    def _check_topology(self) -> "PlatformSpec":
        ids = [q.id for q in self.qubits]
        if ids != list(range(len(ids))):
            raise ValueError(f"qubit ids must be 0..n-1 in order, got {ids}")
        seen = set()
        for c in self.couplings:
            for member in c.pair:
                if member >= len(ids):
                    raise ValueError(f"coupling {c.pair} references unknown qubit {member}")
            if c.pair in seen:
                raise ValueError(f"duplicate coupling for pair {c.pair}")
            seen.add(c.pair)
        return self

    @property
    def n_qubits(self) -> int:
        return len(self.qubits)

    @property
    def hilbert_dimension(self) -> int:
        return self.levels_per_qubit ** self.n_qubits

    def coupling(self, a: int, b: int) -> Optional[Coupling]:
        key = (min(a, b), max(a, b))
        for c in self.couplings:
            if c.pair == key:
                return c
        return None

    def are_coupled(self, a: int, b: int) -> bool:
        return self.coupling(a, b) is not None

    def connectivity(self) -> nx.Graph:
        """耦合图；边按字典序插入，保证邻居遍历顺序为升序"""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n_qubits))
        graph.add_edges_from(sorted(c.pair for c in self.couplings))
        return graph


def pure_dephasing_time(q: QubitParams) -> float:
    """由T1、T2推导纯退相干时间 Tφ，1/Tφ = 1/T2 − 1/(2·T1)

    Returns:
        Tφ（ns）；math.inf 表示无纯退相干通道
    """
    if q.t2 is None:
        return math.inf
    relaxation = 0.0 if q.t1 is None else 1.0 / (2.0 * q.t1)
    rate = 1.0 / q.t2 - relaxation
    if abs(rate) <= 1e-15 / q.t2:
        return math.inf
    if rate < 0:
        raise PlatformError(f"non-positive pure-dephasing rate {rate:.3e} /ns (t2 exceeds 2·t1)", field=f"qubits[{q.id}].t2")
    return 1.0 / rate
