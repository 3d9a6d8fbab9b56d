"""编译流水线：预处理、布局、路由、展开与虚拟Z折叠"""
from .layout import Layout
from .native import NativeCircuit, PhaseFrame
from .preprocess import preprocess
from .placement import place
from .routing import route
from .decompose import translate_gate, unroll
from .virtual_z import fold_virtual_z
from .base_pass import PassContext, TranspilerPass
from .passes import Passes, TranspileReport, TranspileResult, transpile

__all__ = [
    'Layout',
    'NativeCircuit',
    'PhaseFrame',
    'preprocess',
    'place',
    'route',
    'translate_gate',
    'unroll',
    'fold_virtual_z',
    'PassContext',
    'TranspilerPass',
    'Passes',
    'TranspileReport',
    'TranspileResult',
    'transpile',
]
