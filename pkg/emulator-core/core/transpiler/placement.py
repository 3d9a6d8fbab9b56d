"""Initial placement strategies."""
import numpy as np

from core.circuit import Circuit
from core.errors import TranspileError
from core.state import TranspileOptions
from infrastructure.platform import PlatformSpec
from .layout import Layout


def place(c: Circuit, p: PlatformSpec, opts: TranspileOptions) -> Layout:
    """Choose the initial logical-to-physical layout.

    trivial maps l → l. random draws a uniform permutation from
    ``numpy.random.default_rng(seed)``, so equal seeds give equal layouts.
    """
    if c.n_qubits != p.n_qubits:
        raise TranspileError(f"placement expects a padded circuit ({c.n_qubits} != {p.n_qubits} qubits)")
    if opts.placement == "trivial":
        return Layout.trivial(p.n_qubits)
    if opts.placement == "random":
        rng = np.random.default_rng(opts.seed)
        return Layout(logical_to_physical=tuple(int(x) for x in rng.permutation(p.n_qubits)))
    raise TranspileError(f"unknown placement '{opts.placement}'")
