import os
from typing import Optional

TOOL_NAME = "transmon-emu"
TOOL_VERSION = "0.3.0"

LOG_LEVEL = "INFO"
OUTPUT_DIR = "output"
DEFAULT_PLATFORM = "platforms/anyon_2q.json"

# 数值容差
EQUIVALENCE_TOL = 1e-9
EVOLUTION_TOL = 1e-5
FIDELITY_THRESHOLD = 0.99
OUTPUT_DT_NS = 0.01

# 预言机规模上限
MAX_UNITARY_QUBITS = 6
MAX_EVOLUTION_QUBITS = 4

_TRUE = ("1", "true", "yes", "y", "on")
_FALSE = ("0", "false", "no", "n", "off")


def get_project_root() -> str:
    return os.path.abspath(os.path.join(os.path.dirname(__file__), "..", ".."))


def resolve_path(path: str) -> str:
    """相对路径先按当前目录解析，不存在时再按项目根目录解析"""
    if os.path.isabs(path) or os.path.exists(path):
        return path
    candidate = os.path.join(get_project_root(), path)
    return candidate if os.path.exists(candidate) else path


def _env_float(name: str) -> Optional[float]:
    raw = (os.getenv(name) or "").strip()
    if not raw:
        return None
    try:
        return float(raw)
    except ValueError:
        return None


def resolve_flag(name: str, cli_value: Optional[bool], default: bool) -> bool:
    if cli_value is not None:
        return bool(cli_value)
    env = (os.getenv(name) or "").strip().lower()
    if env in _TRUE:
        return True
    if env in _FALSE:
        return False
    return bool(default)


def resolve_log_level(cli_value: Optional[str] = None) -> str:
    if cli_value:
        return cli_value.upper()
    env = (os.getenv("EMULATOR_LOG_LEVEL") or "").strip().upper()
    return env or LOG_LEVEL


def resolve_output_dir(cli_value: Optional[str] = None) -> str:
    if cli_value:
        return cli_value
    return (os.getenv("EMULATOR_OUTPUT_DIR") or "").strip() or OUTPUT_DIR


def resolve_output_dt(cli_value: Optional[float] = None) -> float:
    if cli_value is not None:
        return float(cli_value)
    env = _env_float("EMULATOR_OUTPUT_DT")
    return env if env is not None else OUTPUT_DT_NS


def resolve_equivalence_tol(cli_value: Optional[float] = None) -> float:
    if cli_value is not None:
        return float(cli_value)
    env = _env_float("EMULATOR_EQUIVALENCE_TOL")
    return env if env is not None else EQUIVALENCE_TOL


def resolve_fidelity_threshold(cli_value: Optional[float] = None) -> float:
    if cli_value is not None:
        return float(cli_value)
    env = _env_float("EMULATOR_FIDELITY_THRESHOLD")
    return env if env is not None else FIDELITY_THRESHOLD
