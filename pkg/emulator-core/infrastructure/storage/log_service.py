"""日志服务：运行目录下的 run.log 与逐阶段 JSON 摘要"""
import os
import sys
from typing import Any, Dict, Optional

from loguru import logger

from .file_service import FileService

LOG_FORMAT = "{time:YYYY-MM-DD HH:mm:ss.SSS} | {level: <7} | {extra[log_tag]: <10} | {message}"

logger.configure(extra={"log_tag": "-"})


def configure_console(level: str = "INFO") -> None:
    """替换loguru默认的stderr输出，统一日志格式"""
    logger.remove()
    logger.configure(extra={"log_tag": "-"})
    logger.add(sys.stderr, level=level.upper(), format=LOG_FORMAT)


class LogService:
    """日志服务类"""

    def __init__(self, log_dir: str, level: str = "DEBUG"):
        """初始化日志服务

        Args:
            log_dir: 运行目录路径
            level: run.log 的最低日志级别
        """
        self.log_dir = log_dir
        self.level = level.upper()
        FileService.ensure_dir(log_dir)

        self.stages_dir = os.path.join(log_dir, "stages")
        FileService.ensure_dir(self.stages_dir)
        self.log_path = os.path.join(log_dir, "run.log")
        self._sink_id: Optional[int] = None

    def attach(self) -> "LogService":
        """把loguru输出同时写入 run.log"""
        if self._sink_id is None:
            self._sink_id = logger.add(
                self.log_path, level=self.level, format=LOG_FORMAT, encoding="utf-8", mode="w",
            )
        return self

    def detach(self) -> None:
        if self._sink_id is not None:
            logger.remove(self._sink_id)
            self._sink_id = None

    def __enter__(self) -> "LogService":
        return self.attach()

    def __exit__(self, *exc) -> None:
        self.detach()

    def save_stage(self, stage: str, data: Dict[str, Any], extra: Optional[Dict[str, Any]] = None) -> str:
        """保存阶段摘要

        Args:
            stage: 阶段名称（transpile, compile, simulate, validate）
            data: 摘要内容
            extra: 额外信息

        Returns:
            保存的文件路径
        """
        payload = {"stage": stage, **data}
        if extra:
            payload.update(extra)
        path = os.path.join(self.stages_dir, f"{FileService.sanitize_filename(stage)}.json")
        return FileService.write_json(path, payload)
