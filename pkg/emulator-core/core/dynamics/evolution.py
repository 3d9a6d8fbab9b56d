"""Module-level entry point for time evolution."""
from typing import Optional

from core.pulse import PulseSchedule
from core.state.state_schema import SimOptions
from infrastructure.platform import PlatformSpec
from .density import DensityMatrix
from .engine_factory import EngineFactory
from .sim_result import SimResult


def evolve(
    schedule: PulseSchedule,
    p: PlatformSpec,
    rho0: Optional[DensityMatrix] = None,
    opts: Optional[SimOptions] = None,
    duration: Optional[float] = None,
) -> SimResult:
    """Integrate ``schedule`` with the engine named in ``opts`` (Lindblad by default).

    Args:
        schedule: timed pulses
        p: platform the schedule was compiled for
        rho0: initial state on the full d^n space, ground state by default
        opts: solver options
        duration: integration span; defaults to the schedule's total duration

    Raises:
        ScheduleError: schedule wider than the platform or the evolution cap
        StiffnessError: step size underflow
        InvariantError: trace, positivity or purity breach at an output sample
    """
    opts = opts or SimOptions()
    return EngineFactory.create_from_options(opts).evolve(schedule, p, rho0, opts, duration)
