"""日志安装：控制台 + 可选滚动文件"""
import logging
from logging.handlers import RotatingFileHandler
from pathlib import Path

from biaozhun.config import LoggingConfig

FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def setup_logging(cfg: LoggingConfig, level: str | None = None) -> logging.Logger:
    """
    按配置安装根 logger ``biaozhun`` 的 handler，重复调用时先清理旧 handler

    Args:
        cfg: 日志配置节
        level: 命令行覆盖的级别，None 表示使用配置

    Returns:
        logging.Logger: 包级 logger
    """
    logger = logging.getLogger("biaozhun")
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    logger.setLevel((level or cfg.level).upper())
    logger.propagate = False
    formatter = logging.Formatter(FORMAT)

    if cfg.console:
        console = logging.StreamHandler()
        console.setFormatter(formatter)
        logger.addHandler(console)

    if cfg.file:
        path = Path(cfg.file)
        path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = RotatingFileHandler(
            path,
            maxBytes=cfg.max_size_mb * 1024 * 1024,
            backupCount=cfg.backup_count,
            encoding="utf-8",
        )
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    if not logger.handlers:
        logger.addHandler(logging.NullHandler())
    return logger
