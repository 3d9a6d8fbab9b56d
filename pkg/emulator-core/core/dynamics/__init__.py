"""动力学引擎：多能级transmon的Lindblad主方程积分"""
from .hilbert import HilbertSpace, annihilation, number
from .hamiltonian import (
    CouplingTerm,
    CZTerm,
    DriveTerm,
    build_coupling_terms,
    build_cz_term,
    build_drive_term,
    build_static_hamiltonian,
)
from .dissipation import CollapseOp, build_collapse_ops
from .density import DensityMatrix
from .model import DynamicsModel, build_model
from .simulation_engine import SimulationEngine
from .lindblad_engine import LindbladEngine
from .schrodinger_engine import SchrodingerEngine
from .engine_factory import EngineFactory
from .sim_result import CHECKPOINTS, SimResult, sample_times
from .evolution import evolve
from .analysis import apply_frames, fidelity, project_computational, sample_counts

__all__ = [
    'HilbertSpace',
    'annihilation',
    'number',
    'CouplingTerm',
    'CZTerm',
    'DriveTerm',
    'build_coupling_terms',
    'build_cz_term',
    'build_drive_term',
    'build_static_hamiltonian',
    'CollapseOp',
    'build_collapse_ops',
    'DensityMatrix',
    'DynamicsModel',
    'build_model',
    'SimulationEngine',
    'LindbladEngine',
    'SchrodingerEngine',
    'EngineFactory',
    'CHECKPOINTS',
    'SimResult',
    'evolve',
    'sample_times',
    'apply_frames',
    'fidelity',
    'project_computational',
    'sample_counts',
]
