"""存储服务层：提供文件、日志、产物等服务"""
from .file_service import FileService
from .log_service import LogService, configure_console
from .artifact_service import ARTIFACT_FILES, ArtifactService

__all__ = [
    'FileService',
    'LogService',
    'configure_console',
    'ARTIFACT_FILES',
    'ArtifactService',
]
