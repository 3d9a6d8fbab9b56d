"""平台文件加载：实验室单位（GHz、MHz、µs/ns）与内部单位（rad/ns、ns）互转"""
import math
from typing import Any, Dict, List, Optional

from loguru import logger
from pydantic import ValidationError

from core.errors import PlatformError
from infrastructure.storage.file_service import FileService
from .platform_schema import Coupling, GateTimings, PlatformSpec, QubitParams

TWO_PI = 2.0 * math.pi

_QUBIT_KEYS = {"id", "frequency_ghz", "anharmonicity_mhz", "t1_us", "t1_ns", "t2_us", "t2_ns"}
_COUPLING_KEYS = {"pair", "strength_mhz"}
_TIMING_KEYS = {
    "gpi2_duration_ns": "gpi2_duration",
    "cz_duration_ns": "cz_duration",
    "readout_duration_ns": "readout_duration",
    "measurement_buffer_ns": "measurement_buffer",
}
_TOP_KEYS = {"name", "description", "qubits", "couplings", "timings", "levels_per_qubit"}


def _check_keys(raw: Any, allowed: set, where: str) -> Dict[str, Any]:
    if not isinstance(raw, dict):
        raise PlatformError("expected an object", field=where)
    unknown = sorted(set(raw) - allowed)
    if unknown:
        raise PlatformError(f"unknown field '{unknown[0]}'", field=where)
    return raw


def _number(raw: Dict[str, Any], key: str, where: str) -> float:
    value = raw[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise PlatformError("expected a number", field=f"{where}.{key}")
    return float(value)


def _time_ns(raw: Dict[str, Any], name: str, where: str) -> Optional[float]:
    """读取带单位后缀的时间字段（<name>_us 或 <name>_ns），缺省表示关闭"""
    us_key, ns_key = f"{name}_us", f"{name}_ns"
    if us_key in raw and ns_key in raw:
        raise PlatformError(f"give either {us_key} or {ns_key}, not both", field=where)
    if us_key in raw:
        return _number(raw, us_key, where) * 1000.0
    if ns_key in raw:
        return _number(raw, ns_key, where)
    return None


def _validation_error(e: ValidationError, where: str) -> PlatformError:
    first = e.errors()[0]
    loc = ".".join(str(p) for p in first.get("loc", ()))
    msg = str(first.get("msg", "invalid value")).removeprefix("Value error, ")
    field = f"{where}.{loc}" if loc else where
    return PlatformError(msg, field=field)


def _parse_qubit(raw: Any, index: int) -> QubitParams:
    where = f"qubits[{index}]"
    raw = _check_keys(raw, _QUBIT_KEYS, where)
    for key in ("id", "frequency_ghz", "anharmonicity_mhz"):
        if key not in raw:
            raise PlatformError("missing required field", field=f"{where}.{key}")
    try:
        return QubitParams(
            id=int(_number(raw, "id", where)),
            frequency=TWO_PI * _number(raw, "frequency_ghz", where),
            anharmonicity=TWO_PI * _number(raw, "anharmonicity_mhz", where) / 1000.0,
            t1=_time_ns(raw, "t1", where),
            t2=_time_ns(raw, "t2", where),
        )
    except ValidationError as e:
        raise _validation_error(e, where) from None


def _parse_coupling(raw: Any, index: int) -> Coupling:
    where = f"couplings[{index}]"
    raw = _check_keys(raw, _COUPLING_KEYS, where)
    pair = raw.get("pair")
    if not isinstance(pair, list) or len(pair) != 2:
        raise PlatformError("expected a two-element list", field=f"{where}.pair")
    strength = TWO_PI * _number(raw, "strength_mhz", where) / 1000.0 if "strength_mhz" in raw else 0.0
    try:
        return Coupling(pair=(int(pair[0]), int(pair[1])), strength=strength)
    except ValidationError as e:
        raise _validation_error(e, where) from None


def platform_from_dict(data: Dict[str, Any]) -> PlatformSpec:
    """由平台文档构造 PlatformSpec

    Args:
        data: 已解析的JSON对象

    Returns:
        校验后的平台模型

    Raises:
        PlatformError: 字段缺失、单位字段冲突或不变量违反（附字段路径）
    """
    data = _check_keys(data, _TOP_KEYS, "platform")
    if "name" not in data or "qubits" not in data:
        raise PlatformError("platform document needs 'name' and 'qubits'", field="platform")
    qubits = [_parse_qubit(q, i) for i, q in enumerate(data["qubits"])]
    couplings = [_parse_coupling(c, i) for i, c in enumerate(data.get("couplings") or [])]

    timings_raw = _check_keys(data.get("timings") or {}, set(_TIMING_KEYS), "timings")
    timings_kwargs = {_TIMING_KEYS[k]: _number(timings_raw, k, "timings") for k in timings_raw}

    try:
        return PlatformSpec(
            name=str(data["name"]),
            description=str(data.get("description") or ""),
            qubits=tuple(qubits),
            couplings=tuple(couplings),
            timings=GateTimings(**timings_kwargs),
            levels_per_qubit=data.get("levels_per_qubit", 3),
        )
    except ValidationError as e:
        raise _validation_error(e, "platform") from None


def load_platform(path: str) -> PlatformSpec:
    """加载平台文件

    Args:
        path: 平台JSON文件路径

    Returns:
        PlatformSpec（内部单位）
    """
    spec = platform_from_dict(FileService.read_json(path))
    logger.bind(log_tag="platform").debug(
        f"loaded platform {spec.name}: {spec.n_qubits} qubits, dim {spec.hilbert_dimension}"
    )
    return spec


def platform_to_dict(spec: PlatformSpec) -> Dict[str, Any]:
    """序列化为平台文档；时间统一写为 *_ns 字段"""
    qubits: List[Dict[str, Any]] = []
    for q in spec.qubits:
        entry: Dict[str, Any] = {
            "id": q.id,
            "frequency_ghz": q.frequency / TWO_PI,
            "anharmonicity_mhz": q.anharmonicity * 1000.0 / TWO_PI,
        }
        if q.t1 is not None:
            entry["t1_ns"] = q.t1
        if q.t2 is not None:
            entry["t2_ns"] = q.t2
        qubits.append(entry)
    return {
        "name": spec.name,
        "description": spec.description,
        "levels_per_qubit": spec.levels_per_qubit,
        "qubits": qubits,
        "couplings": [
            {"pair": list(c.pair), "strength_mhz": c.strength * 1000.0 / TWO_PI}
            for c in spec.couplings
        ],
        "timings": {
            "gpi2_duration_ns": spec.timings.gpi2_duration,
            "cz_duration_ns": spec.timings.cz_duration,
            "readout_duration_ns": spec.timings.readout_duration,
            "measurement_buffer_ns": spec.timings.measurement_buffer,
        },
    }


def save_platform(spec: PlatformSpec, path: str) -> str:
    return FileService.write_json(path, platform_to_dict(spec))
