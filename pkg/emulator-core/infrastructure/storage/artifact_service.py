"""产物服务：写出各阶段中间产物并记录路径与内容哈希"""
import os
from typing import Any, Dict, Optional

from loguru import logger

from core.state.state_schema import RunManifest
from .file_service import FileService

ARTIFACT_FILES = {
    "original": "original.json",
    "native": "native.json",
    "transpile_report": "transpile_report.json",
    "schedule": "schedule.json",
    "populations": "populations.csv",
    "counts": "counts.json",
    "state": "state.json",
    "metrics": "metrics.json",
    "validation": "validation.json",
}
MANIFEST_FILE = "manifest.json"


class ArtifactService:
    """产物服务类：每次运行一个目录，manifest 最后写出"""

    def __init__(self, out_dir: str):
        self.out_dir = out_dir
        FileService.ensure_dir(out_dir)
        self.artifacts: Dict[str, str] = {}
        self.hashes: Dict[str, str] = {}

    def path_for(self, name: str) -> str:
        return os.path.join(self.out_dir, ARTIFACT_FILES.get(name, f"{name}.json"))

    def _record(self, name: str, path: str) -> str:
        self.artifacts[name] = os.path.relpath(path, self.out_dir).replace(os.sep, "/")
        self.hashes[name] = FileService.sha256_file(path)
        logger.bind(log_tag="pipeline").debug(f"wrote {name}: {path}")
        return path

    def write_json(self, name: str, data: Any) -> str:
        return self._record(name, FileService.write_json(self.path_for(name), data))

    def write_populations(self, frame) -> str:
        """Populations CSV: time_ns, one column per basis label, leakage."""
        path = self.path_for("populations")
        FileService.ensure_dir(os.path.dirname(path))
        frame.to_csv(path, index=False, float_format="%.12g", lineterminator="\n")
        return self._record("populations", path)

    def write_manifest(self, manifest: RunManifest) -> str:
        """清单最后写出，记录此前所有产物的相对路径与sha256"""
        manifest = manifest.model_copy(update={"artifacts": dict(self.artifacts), "hashes": dict(self.hashes)})
        return FileService.write_json(os.path.join(self.out_dir, MANIFEST_FILE), manifest.to_dict())

    @staticmethod
    def read_manifest(run_dir: str) -> Optional[Dict[str, Any]]:
        path = os.path.join(run_dir, MANIFEST_FILE)
        return FileService.read_json(path) if os.path.exists(path) else None

    @staticmethod
    def verify_hashes(run_dir: str, manifest: Dict[str, Any]) -> Dict[str, bool]:
        """name -> 当前文件哈希是否与清单一致"""
        result = {}
        for name, rel in manifest.get("artifacts", {}).items():
            path = os.path.join(run_dir, rel)
            expected = manifest.get("hashes", {}).get(name)
            result[name] = os.path.exists(path) and FileService.sha256_file(path) == expected
        return result
