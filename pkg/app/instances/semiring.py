"""
半环定义

所有实例内部都以“取最大”作为投影（析取）；组合为各自的乘法。
min-plus 以取负后的 max-plus 表实现，对外取值再取负还原。
"""

import operator
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from app.models import SemiringName


@dataclass(frozen=True)
class Semiring:
    """半环描述

    Attributes:
        name: 实例标签
        multiply: 内部表的逐元素乘法（numpy ufunc）
        unit: 外部取值中的乘法单位元
        null: 外部取值中的零元（最劣值）
        times: 外部标量乘法
        plus: 外部标量加法（取优）
        sign: 内部表 = sign × 外部取值
        integral: 默认使用整数表
        tolerance: 默认比较容差
    """
    name: SemiringName
    multiply: np.ufunc
    unit: Any
    null: Any
    times: Callable[[Any, Any], Any]
    plus: Callable[[Any, Any], Any]
    sign: int = 1
    integral: bool = True
    tolerance: float = 0.0

    def encode(self, values: np.ndarray) -> np.ndarray:
        return values if self.sign == 1 else -values

    def decode(self, value: Any) -> Any:
        return value if self.sign == 1 else -value

    @property
    def internal_unit(self) -> Any:
        return self.unit * self.sign


BOOLEAN = Semiring(
    name=SemiringName.BOOLEAN,
    multiply=np.minimum,  # {0,1} 上的合取
    unit=1,
    null=0,
    times=min,
    plus=max,
)

MAX_PLUS = Semiring(
    name=SemiringName.MAX_PLUS,
    multiply=np.add,
    unit=0,
    null=float("-inf"),
    times=operator.add,
    plus=max,
)

MIN_PLUS = Semiring(
    name=SemiringName.MIN_PLUS,
    multiply=np.add,
    unit=0,
    null=float("inf"),
    times=operator.add,
    plus=min,
    sign=-1,
)

MAX_TIMES = Semiring(
    name=SemiringName.MAX_TIMES,
    multiply=np.multiply,
    unit=1.0,
    null=0.0,
    times=operator.mul,
    plus=max,
    integral=False,
    tolerance=1e-9,
)

SEMIRINGS: dict[SemiringName, Semiring] = {
    s.name: s for s in (BOOLEAN, MAX_PLUS, MIN_PLUS, MAX_TIMES)
}


__all__ = [
    "Semiring",
    "BOOLEAN",
    "MAX_PLUS",
    "MIN_PLUS",
    "MAX_TIMES",
    "SEMIRINGS",
]
