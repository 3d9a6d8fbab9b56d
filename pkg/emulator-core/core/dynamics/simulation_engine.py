"""Integrator interface shared by the density-matrix and state-vector engines."""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np
from loguru import logger
from scipy.integrate import RK45

from config.settings import MAX_EVOLUTION_QUBITS
from core.errors import InvariantError, ScheduleError, StiffnessError
from core.pulse import PulseSchedule
from core.state.state_schema import SimOptions
from infrastructure.platform import PlatformSpec
from .density import DensityMatrix, TRACE_TOL
from .model import DynamicsModel, build_model
from .sim_result import SimResult, TIME_EPS, checkpoint_times, merge_breakpoints, sample_times


@dataclass
class EngineOutput:
    times: np.ndarray
    populations: np.ndarray  # (samples, 2^n)
    leakage: np.ndarray
    final_state: DensityMatrix
    checkpoints: Dict[str, DensityMatrix]
    rhs_evaluations: int


class SimulationEngine(ABC):
    """Adaptive Dormand–Prince 5(4) integration split at pulse edges.

    Subclasses choose the state representation; sampling, windowing, checkpoint
    capture and invariant checks live here.
    """
    name = "base"
    trace_tol = TRACE_TOL

    @abstractmethod
    def initial_vector(self, model: DynamicsModel, rho0: Optional[DensityMatrix]) -> np.ndarray:
        pass

    @abstractmethod
    def rhs(self, model: DynamicsModel, t: float, y: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def diagonals(self, model: DynamicsModel, ys: np.ndarray) -> np.ndarray:
        """Full-basis populations for a (samples, len(y)) block."""

    @abstractmethod
    def to_density(self, model: DynamicsModel, y: np.ndarray) -> DensityMatrix:
        pass

    def check_samples(self, model: DynamicsModel, times: np.ndarray, ys: np.ndarray,
                      diag: np.ndarray, first_index: int) -> None:
        drift = np.abs(diag.sum(axis=1) - 1.0)
        worst = int(np.argmax(drift))
        if drift[worst] > self.trace_tol:
            raise InvariantError("trace", float(times[worst]), float(drift[worst]))

    def run(self, model: DynamicsModel, rho0: Optional[DensityMatrix], times: np.ndarray,
            breakpoints: List[float], checkpoints: Dict[str, float], opts: SimOptions) -> EngineOutput:
        log = logger.bind(log_tag="dynamics")
        idx = model.space.computational_indices
        populations = np.empty((len(times), len(idx)))
        leakage = np.empty(len(times))
        states: Dict[str, DensityMatrix] = {}

        y = self.initial_vector(model, rho0)
        window = max(1, opts.max_window_bytes // (y.size * y.itemsize))
        fun = lambda t, v: self.rhs(model, t, v)

        def record(start: int, ts: np.ndarray, ys: np.ndarray) -> None:
            diag = self.diagonals(model, ys)
            if opts.check_invariants:
                self.check_samples(model, ts, ys, diag, start)
            comp = diag[:, idx]
            populations[start:start + len(ts)] = comp
            leakage[start:start + len(ts)] = np.maximum(0.0, diag.sum(axis=1) - comp.sum(axis=1))

        def capture(t: float) -> None:
            for name, when in checkpoints.items():
                if name not in states and abs(when - t) <= TIME_EPS:
                    states[name] = self.to_density(model, y).symmetrized()

        cursor = int(np.searchsorted(times, breakpoints[0] + TIME_EPS, side="right"))
        if cursor:
            record(0, times[:cursor], np.repeat(y[None, :], cursor, axis=0))
        capture(breakpoints[0])

        nfev = 0
        for b0, b1 in zip(breakpoints, breakpoints[1:]):
            solver = RK45(fun, b0, y, b1, rtol=opts.rtol, atol=opts.atol)
            while solver.status == "running":
                message = solver.step()
                if solver.status == "failed":
                    raise StiffnessError(message or "integration step failed", solver.t)
                if solver.t < b1 - TIME_EPS and solver.step_size < opts.min_step:
                    raise StiffnessError(f"step size {solver.step_size:.3e} ns below {opts.min_step:g}", solver.t)
                end = cursor + int(np.searchsorted(times[cursor:], solver.t + TIME_EPS, side="right"))
                if end > cursor:
                    dense = solver.dense_output()
                    for chunk in range(cursor, end, window):
                        stop = min(end, chunk + window)
                        record(chunk, times[chunk:stop], dense(times[chunk:stop]).T)
                    cursor = end
            nfev += solver.nfev
            y = solver.y
            capture(b1)

        if cursor < len(times):
            record(cursor, times[cursor:], np.repeat(y[None, :], len(times) - cursor, axis=0))
        final = self.to_density(model, y).symmetrized()
        log.debug(f"{self.name}: {len(times)} samples, {nfev} rhs evaluations")
        return EngineOutput(
            times=times,
            populations=populations,
            leakage=leakage,
            final_state=final,
            checkpoints=states,
            rhs_evaluations=nfev,
        )

    def evolve(self, schedule: PulseSchedule, p: PlatformSpec, rho0: Optional[DensityMatrix] = None,
               opts: Optional[SimOptions] = None, duration: Optional[float] = None) -> SimResult:
        """Build the model for ``schedule`` and integrate it over [0, duration]."""
        opts = opts or SimOptions()
        if schedule.n_qubits > MAX_EVOLUTION_QUBITS:
            raise ScheduleError(f"evolution is limited to {MAX_EVOLUTION_QUBITS} qubits, got {schedule.n_qubits}")
        total = schedule.total_duration if duration is None else float(duration)
        if total < 0:
            raise ScheduleError(f"duration must be >= 0, got {total}")

        model = build_model(schedule, p, opts)
        instants = checkpoint_times(schedule, total)
        edges = [t for t in model.breakpoints() + list(instants.values()) if t < total]
        breakpoints = merge_breakpoints([0.0, total] + edges)
        times = sample_times(total, opts.output_dt)

        log = logger.bind(log_tag="dynamics")
        log.info(
            f"{self.name}: {schedule.n_qubits} qubit(s), dim {model.space.dim}, {total:g} ns, "
            f"{len(times)} samples, decoherence={opts.decoherence}"
        )
        out = self.run(model, rho0, times, breakpoints, instants, opts)
        log.info(f"evolution done: {out.rhs_evaluations} rhs evaluations, final leakage {out.leakage[-1]:.3e}")
        return SimResult(
            space=model.space,
            times=out.times,
            populations=out.populations,
            labels=model.space.labels(),
            leakage=out.leakage,
            final_state=out.final_state,
            checkpoints=out.checkpoints,
            checkpoint_times=instants,
            rhs_evaluations=out.rhs_evaluations,
            frames=schedule.final_frames,
            engine=self.name,
            duration=total,
        )
