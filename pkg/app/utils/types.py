"""
类型别名定义
"""

from pathlib import Path
from typing import Callable, TypeAlias

PathLike: TypeAlias = str | Path

# 回调函数类型
ProgressCallback: TypeAlias = Callable[[str, float], None]
ErrorCallback: TypeAlias = Callable[[Exception], None]


__all__ = [
    "PathLike",
    "ProgressCallback",
    "ErrorCallback",
]
