"""Simulation result container and the sampling grid."""
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np
import pandas as pd

from core.pulse import PulseSchedule
from .density import DensityMatrix
from .hilbert import HilbertSpace

CHECKPOINTS = ("gate_end", "readout_onset", "readout_end")
TIME_EPS = 1e-9  # ns


@dataclass
class SimResult:
    """Sampled trajectory and the states at the named instants.

    ``populations`` has one column per computational label; ``leakage`` is the
    remaining population outside the 2^n subspace.
    """
    space: HilbertSpace
    times: np.ndarray
    populations: np.ndarray
    labels: List[str]
    leakage: np.ndarray
    final_state: DensityMatrix
    checkpoints: Dict[str, DensityMatrix]
    checkpoint_times: Dict[str, float]
    rhs_evaluations: int
    frames: Tuple[float, ...]
    engine: str
    duration: float = 0.0
    extra: dict = field(default_factory=dict)

    def state_at(self, instant: str) -> DensityMatrix:
        if instant not in self.checkpoints:
            raise KeyError(f"no checkpoint '{instant}'; available: {sorted(self.checkpoints)}")
        return self.checkpoints[instant]

    def populations_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(self.populations, columns=self.labels)
        frame.insert(0, "time_ns", self.times)
        frame["leakage"] = self.leakage
        return frame


def sample_times(total: float, dt: float) -> np.ndarray:
    """0, dt, 2dt, … up to ``total``, with ``total`` itself always the last entry."""
    count = int(np.floor(total / dt + 1e-9))
    times = np.arange(count + 1) * dt
    if total - times[-1] > TIME_EPS:
        times = np.append(times, total)
    return times


def checkpoint_times(schedule: PulseSchedule, total: float) -> Dict[str, float]:
    onset = schedule.readout_onset
    instants = {
        "gate_end": schedule.gate_end,
        "readout_onset": onset if onset is not None else total,
        "readout_end": schedule.total_duration if onset is not None else total,
    }
    return {name: t for name, t in instants.items() if t <= total + TIME_EPS}


def merge_breakpoints(points: List[float]) -> List[float]:
    merged: List[float] = []
    for t in sorted(points):
        if not merged or t - merged[-1] > TIME_EPS:
            merged.append(t)
    return merged
