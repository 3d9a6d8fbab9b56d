"""读取各阶段产物；格式错误统一转换为 ArtifactError"""
import os
from typing import Any, Callable, TypeVar

from pydantic import ValidationError

from core.circuit import Circuit
from core.errors import ArtifactError
from core.pulse import PulseSchedule
from core.transpiler import Layout, NativeCircuit
from infrastructure.storage import FileService
from qasm_frontend import parse_qasm

T = TypeVar("T")


def _decode(path: str, build: Callable[[dict], T]) -> T:
    data = FileService.read_json(path)
    try:
        return build(data)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(x) for x in first.get("loc", ())) or "<root>"
        raise ArtifactError(f"{where}: {first.get('msg', 'invalid value')}", path=path) from None
    except (KeyError, TypeError, ValueError) as e:
        raise ArtifactError(f"malformed document: {e!r}", path=path) from None


def load_circuit(path: str) -> Circuit:
    """按扩展名识别输入：.qasm 走QASM前端，.json 为电路JSON文档"""
    ext = os.path.splitext(path)[1].lower()
    if ext == ".qasm":
        return parse_qasm(FileService.read_text(path), path)
    if ext == ".json":
        return _decode(path, Circuit.from_dict)
    raise ArtifactError(f"unsupported input format '{ext or '<none>'}' (expected .qasm or .json)", path=path)


def load_native(path: str) -> NativeCircuit:
    return _decode(path, NativeCircuit.from_dict)


def load_schedule(path: str) -> PulseSchedule:
    return _decode(path, PulseSchedule.from_dict)


def load_layouts(report_path: str) -> tuple:
    """(initial, final) layouts recorded in a transpile report."""
    def build(data: dict) -> tuple:
        return (
            Layout(logical_to_physical=tuple(data["initial_layout"])),
            Layout(logical_to_physical=tuple(data["final_layout"])),
        )
    return _decode(report_path, build)


def load_json(path: str) -> Any:
    return FileService.read_json(path)
