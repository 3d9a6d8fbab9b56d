"""Pass interface for the transpiler pipeline."""
from abc import ABC, abstractmethod
from typing import Dict, Optional

from core.circuit import Circuit
from core.state import TranspileOptions
from infrastructure.platform import PlatformSpec
from .layout import Layout


class PassContext:
    """Mutable state shared by the passes of one transpile run."""

    def __init__(self, platform: PlatformSpec, options: TranspileOptions):
        self.platform = platform
        self.options = options
        self.initial_layout: Optional[Layout] = None
        self.final_layout: Optional[Layout] = None
        self.counts: Dict[str, Dict[str, int]] = {}
        self.swap_count = 0


class TranspilerPass(ABC):
    """One circuit → circuit stage."""

    name: str = "pass"

    @abstractmethod
    def run(self, circuit: Circuit, context: PassContext) -> Circuit:
        """Transform ``circuit``; may record layouts or counters on ``context``."""
        pass

    def __call__(self, circuit: Circuit, context: PassContext) -> Circuit:
        out = self.run(circuit, context)
        context.counts[self.name] = out.count_ops()
        return out
