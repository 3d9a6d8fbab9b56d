"""流程编排模块"""
from .artifact_loader import load_circuit, load_layouts, load_native, load_schedule
from .pipeline_orchestrator import PipelineOrchestrator, RunOutcome

__all__ = [
    'load_circuit',
    'load_layouts',
    'load_native',
    'load_schedule',
    'PipelineOrchestrator',
    'RunOutcome',
]
