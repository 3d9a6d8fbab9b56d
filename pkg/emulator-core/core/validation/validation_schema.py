"""校验结果结构：逐阶段判定与汇总报告"""
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field

Stage = Literal["circuit_equivalence", "pulse_validity", "evolution", "fidelity"]


class StageVerdict(BaseModel):
    """单阶段判定；metric 为距离、保真度或违规计数"""
    stage: Stage
    passed: bool
    metric: Optional[float] = None
    threshold: Optional[float] = None
    details: str = ""
    skipped: bool = False

    def to_dict(self) -> dict:
        return self.model_dump(mode="json")


class ValidationReport(BaseModel):
    """校验报告：每个请求的阶段一条判定"""
    verdicts: List[StageVerdict] = Field(default_factory=list)
    artifacts: Dict[str, str] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def verdict(self, stage: str) -> Optional[StageVerdict]:
        for v in self.verdicts:
            if v.stage == stage:
                return v
        return None

    def add(self, verdict: StageVerdict) -> StageVerdict:
        self.verdicts = [v for v in self.verdicts if v.stage != verdict.stage] + [verdict]
        return verdict

    def failures(self) -> List[StageVerdict]:
        return [v for v in self.verdicts if not v.passed]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "verdicts": [v.to_dict() for v in self.verdicts],
            "artifacts": dict(self.artifacts),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ValidationReport":
        return cls(
            verdicts=[StageVerdict(**v) for v in data.get("verdicts", [])],
            artifacts=dict(data.get("artifacts", {})),
        )
