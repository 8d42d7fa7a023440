"""
工具类模块

日志配置与计时
"""

import logging
import sys
import time
from contextlib import contextmanager
from typing import Iterator

import colorlog


# =============================================================================
# 日志配置
# =============================================================================

def setup_logging(
    level: str = "INFO",
    log_file: str | None = None,
    format_string: str | None = None,
) -> logging.Logger:
    """配置日志系统

    控制台输出到 stderr（带颜色），stdout 只留给结构化结果。

    Args:
        level: 日志级别 (DEBUG, INFO, WARNING, ERROR)
        log_file: 日志文件路径
        format_string: 日志格式字符串（文件处理器使用）

    Returns:
        项目根日志器
    """
    if format_string is None:
        format_string = "[%(asctime)s] [%(name)s] [%(levelname)s] %(message)s"

    console = colorlog.StreamHandler(sys.stderr)
    console.setFormatter(colorlog.ColoredFormatter(
        "%(log_color)s[%(asctime)s] [%(name)s] [%(levelname)s]%(reset)s %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        log_colors={
            "DEBUG": "cyan",
            "INFO": "green",
            "WARNING": "yellow",
            "ERROR": "red",
            "CRITICAL": "bold_red",
        },
    ))

    root = logging.getLogger()
    root.handlers.clear()
    root.addHandler(console)
    root.setLevel(getattr(logging, level.upper()))

    logger = logging.getLogger("app")

    # 添加文件处理器
    if log_file:
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setFormatter(logging.Formatter(format_string, datefmt="%Y-%m-%d %H:%M:%S"))
        root.addHandler(file_handler)

    return logger


# =============================================================================
# 性能计时
# =============================================================================

@contextmanager
def timer(name: str, logger: logging.Logger | None = None) -> Iterator[None]:
    """性能计时上下文管理器

    Args:
        name: 计时名称
        logger: 日志记录器，默认使用 app 日志器

    Examples:
        >>> with timer("collect"):
        ...     result = collect(tree, factors, algebra)
    """
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    (logger or logging.getLogger("app")).info("%s took %.3f seconds", name, elapsed)


__all__ = [
    "setup_logging",
    "timer",
]
