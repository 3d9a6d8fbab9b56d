"""The transpile pipeline: preprocess → place → route → unroll → fold."""
from typing import Dict, List, Optional, Tuple

from loguru import logger
from pydantic import BaseModel, ConfigDict

from core.circuit import Circuit
from core.state import TranspileOptions
from infrastructure.platform import PlatformSpec
from .base_pass import PassContext, TranspilerPass
from .decompose import unroll
from .layout import Layout
from .native import NativeCircuit
from .placement import place
from .preprocess import preprocess
from .routing import route
from .virtual_z import fold_virtual_z


class PreprocessPass(TranspilerPass):
    name = "preprocessed"

    def run(self, circuit, context):
        return preprocess(circuit, context.platform, optimize=context.options.optimize)


class PlaceAndRoutePass(TranspilerPass):
    name = "routed"

    def run(self, circuit, context):
        layout = place(circuit, context.platform, context.options)
        routed, final = route(circuit, layout, context.platform)
        context.initial_layout = layout
        context.final_layout = final
        # SWAPs already present in the input are not counted
        context.swap_count = routed.count_ops().get("SWAP", 0) - circuit.count_ops().get("SWAP", 0)
        return routed


class UnrollPass(TranspilerPass):
    name = "unrolled"

    def run(self, circuit, context):
        return unroll(circuit)


class VirtualZPass(TranspilerPass):
    name = "folded"

    def run(self, circuit, context):
        return fold_virtual_z(circuit)


class TranspileReport(BaseModel):
    """Pass report written next to the native circuit."""
    model_config = ConfigDict(frozen=True)

    platform: str
    options: dict
    counts: Dict[str, Dict[str, int]]
    gate_count_before: int
    gate_count_after: int
    native_gate_count: int
    swap_count: int
    initial_layout: Tuple[int, ...]
    final_layout: Tuple[int, ...]
    final_frames: Tuple[float, ...]
    physical_pulse_count: int
    virtual_z_reduction: float

    def to_dict(self) -> dict:
        return self.model_dump(mode="json")


class TranspileResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    original: Circuit
    native: NativeCircuit
    initial_layout: Layout
    final_layout: Layout
    report: TranspileReport


class Passes:
    """Ordered pipeline of transpiler passes.

    Each pass receives the previous pass's circuit; the context collects layouts
    and per-stage counts for the report.
    """

    def __init__(self, platform: PlatformSpec, options: Optional[TranspileOptions] = None,
                 pipeline: Optional[List[TranspilerPass]] = None):
        self.platform = platform
        self.options = options or TranspileOptions()
        if pipeline is None:
            pipeline = [PreprocessPass(), PlaceAndRoutePass(), UnrollPass()]
            if self.options.fold_virtual_z:
                pipeline.append(VirtualZPass())
        self.pipeline = pipeline

    def run(self, circuit: Circuit) -> TranspileResult:
        context = PassContext(self.platform, self.options)
        context.counts["input"] = circuit.count_ops()
        current = circuit
        for transpiler_pass in self.pipeline:
            current = transpiler_pass(current, context)
            logger.bind(log_tag="transpiler").debug(f"{transpiler_pass.name}: {len(current)} gates")

        native = current if isinstance(current, NativeCircuit) else unroll(current)
        initial = context.initial_layout or Layout.trivial(native.n_qubits)
        final = context.final_layout or initial
        unrolled = context.counts.get("unrolled", native.count_ops())
        native_count = sum(unrolled.values())
        after = len(native)
        report = TranspileReport(
            platform=self.platform.name,
            options=self.options.model_dump(mode="json"),
            counts=context.counts,
            gate_count_before=len(circuit),
            gate_count_after=after,
            native_gate_count=native_count,
            swap_count=context.swap_count,
            initial_layout=initial.logical_to_physical,
            final_layout=final.logical_to_physical,
            final_frames=native.frames,
            physical_pulse_count=native.physical_pulse_count(),
            virtual_z_reduction=(native_count - after) / native_count if native_count else 0.0,
        )
        logger.bind(log_tag="transpiler").info(
            f"transpiled {len(circuit)} → {after} gates on {self.platform.name} "
            f"({context.swap_count} SWAPs, {report.physical_pulse_count} pulses)"
        )
        return TranspileResult(
            original=circuit, native=native, initial_layout=initial, final_layout=final, report=report
        )


def transpile(c: Circuit, p: PlatformSpec, opts: Optional[TranspileOptions] = None) -> TranspileResult:
    """Compose the pipeline for ``opts`` and run it on ``c``."""
    return Passes(p, opts).run(c)
