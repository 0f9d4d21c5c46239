import logging
import sys
from typing import Optional, Sequence

from exceptional_modules.api.cli import run
from exceptional_modules.core.config import settings


def setup_logging():
    """配置日志，日志只写到标准错误与可选的日志文件"""
    handlers = [logging.StreamHandler(sys.stderr)]
    if settings.log_file:
        handlers.append(logging.FileHandler(settings.log_file, encoding="utf-8"))
    level = logging.DEBUG if settings.debug else getattr(logging, settings.log_level.upper(), logging.INFO)
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )


logger = logging.getLogger(__name__)


def main(argv: Optional[Sequence[str]] = None) -> int:
    setup_logging()
    logger.debug(f"{settings.app_name} {settings.app_version} 启动")
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
