"""文件操作服务"""
import hashlib
import json
import os
from typing import Any, Dict

from core.errors import ArtifactError


class FileService:
    """文件读写：UTF-8、LF换行、确定性JSON与sha256"""

    @staticmethod
    def ensure_dir(path: str) -> None:
        """确保目录存在"""
        if path:
            os.makedirs(path, exist_ok=True)

    @staticmethod
    def read_text(file_path: str) -> str:
        if not os.path.exists(file_path):
            raise ArtifactError("file not found", path=file_path)
        with open(file_path, "r", encoding="utf-8") as f:
            return f.read()

    @staticmethod
    def read_json(file_path: str) -> Dict[str, Any]:
        """读取JSON文件

        Args:
            file_path: JSON文件路径

        Returns:
            解析后的JSON对象

        Raises:
            ArtifactError: 文件缺失或格式错误（附带行列号）
        """
        text = FileService.read_text(file_path)
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ArtifactError(f"{e.lineno}:{e.colno}: {e.msg}", path=file_path) from e
        if not isinstance(data, dict):
            raise ArtifactError("top-level JSON value must be an object", path=file_path)
        return data

    @staticmethod
    def dumps_json(data: Any) -> str:
        """确定性序列化：键序保持插入顺序，float使用repr精度"""
        return json.dumps(data, ensure_ascii=False, indent=2, allow_nan=False) + "\n"

    @staticmethod
    def write_json(file_path: str, data: Any) -> str:
        """写入JSON文件

        Args:
            file_path: JSON文件路径
            data: 要写入的数据

        Returns:
            写入的文件路径
        """
        FileService.ensure_dir(os.path.dirname(file_path))
        with open(file_path, "w", encoding="utf-8", newline="\n") as f:
            f.write(FileService.dumps_json(data))
        return file_path

    @staticmethod
    def sha256_file(file_path: str) -> str:
        digest = hashlib.sha256()
        with open(file_path, "rb") as f:
            for chunk in iter(lambda: f.read(1 << 16), b""):
                digest.update(chunk)
        return digest.hexdigest()

    @staticmethod
    def sanitize_filename(name: str) -> str:
        """阶段名 → 安全文件名"""
        cleaned = "".join(ch if ch.isalnum() or ch in "-_." else "_" for ch in name.strip())
        return cleaned or "stage"
