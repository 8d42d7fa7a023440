"""
稠密表赋值

以 numpy 多维数组存储的半环赋值：轴按规范变量顺序排列（末变量变化最快）。
组合为广播后的逐元素乘法，投影为对消去轴取最大。
"""

import logging
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

import numpy as np

from app.algebra import Valuation, ValuationAlgebra
from app.configuration import VariableSystem
from app.exceptions import InvalidInputError
from app.instances.semiring import Semiring
from app.models import Configuration, Domain, SemiringName

logger = logging.getLogger(__name__)


# =============================================================================
# 稠密表赋值
# =============================================================================

@dataclass(frozen=True, eq=False)
class DenseTableValuation(Valuation):
    """稠密表赋值

    Attributes:
        semiring: 所属半环
        scope: 标签
        table: 内部表（只读；min-plus 中为取负后的权重）
        system: 构造时使用的变量系统
    """
    semiring: Semiring
    scope: Domain
    table: np.ndarray
    system: VariableSystem

    def __post_init__(self) -> None:
        self.table.setflags(write=False)

    @property
    def tag(self) -> str:  # type: ignore[override]
        return self.semiring.name.value

    @property
    def label(self) -> Domain:
        return self.scope

    @property
    def values(self) -> list[Any]:
        """外部取值（规范布局展平）"""
        return [self.semiring.decode(v) for v in self.table.ravel().tolist()]

    def __repr__(self) -> str:
        return f"Dense<{self.tag}>{self.scope!r}{self.values}"


# =============================================================================
# 半环诱导的赋值代数
# =============================================================================

class SemiringAlgebra(ValuationAlgebra):
    """半环诱导的赋值代数（布尔、max-plus、min-plus、max-times）

    Attributes:
        semiring: 半环
    """

    def __init__(self, semiring: Semiring, system: VariableSystem, tolerance: float | None = None):
        super().__init__(system, semiring.tolerance if tolerance is None else tolerance)
        self.semiring = semiring
        self.name = semiring.name.value
        self.unit = semiring.unit
        self.null = semiring.null

    # -------------------------------------------------------------------------
    # 构造
    # -------------------------------------------------------------------------

    def _dtype(self, values: np.ndarray) -> type:
        if self.semiring.integral and values.dtype.kind in "biu":
            return np.int64
        if self.semiring.integral and values.dtype.kind == "f" and np.all(np.mod(values, 1) == 0):
            return np.int64
        return np.float64

    def tabulate(self, scope: Iterable[str], values: Sequence[Any]) -> DenseTableValuation:
        """由规范布局的取值构造稠密表

        Raises:
            InvalidInputError: 表长度与框架不符，或取值越出半环的取值范围
        """
        scope = Domain(scope)
        shape = self.system.shape(scope)
        raw = np.asarray(values)
        if raw.dtype.kind not in "biuf":
            raise InvalidInputError("table values must be numeric", field="table", value=list(values))
        expected = int(np.prod(shape, dtype=np.int64))
        if raw.size != expected:
            raise InvalidInputError(
                f"table over {scope!r} needs {expected} values, got {raw.size}",
                field="table", value=raw.size,
            )
        name = self.semiring.name
        if name == SemiringName.BOOLEAN and not np.isin(raw, (0, 1)).all():
            raise InvalidInputError("boolean tables contain only 0 and 1", field="table", value=raw.tolist())
        if name == SemiringName.MAX_TIMES and (raw < 0).any():
            raise InvalidInputError("max-times tables contain only nonnegative values", field="table", value=raw.tolist())
        table = self.semiring.encode(raw.astype(self._dtype(raw)).reshape(shape))
        return DenseTableValuation(self.semiring, scope, np.array(table), self.system)

    def identity(self) -> DenseTableValuation:
        return self.neutral(())

    def neutral(self, domain: Iterable[str]) -> DenseTableValuation:
        domain = Domain(domain)
        dtype = np.float64 if not self.semiring.integral else np.int64
        table = np.full(self.system.shape(domain), self.semiring.internal_unit, dtype=dtype)
        return DenseTableValuation(self.semiring, domain, table, self.system)

    # -------------------------------------------------------------------------
    # 原语
    # -------------------------------------------------------------------------

    def _align(self, phi: DenseTableValuation, target: Domain) -> np.ndarray:
        """在缺失的轴上插入长度为 1 的维度，以便广播"""
        shape = [self.system.size(v) if v in phi.scope else 1 for v in target.ordered]
        return phi.table.reshape(shape)

    def _combine(self, phi: DenseTableValuation, psi: DenseTableValuation) -> DenseTableValuation:  # type: ignore[override]
        union = phi.scope | psi.scope
        table = self.semiring.multiply(self._align(phi, union), self._align(psi, union))
        return DenseTableValuation(self.semiring, union, np.asarray(table), self.system)

    def _project(self, phi: DenseTableValuation, domain: Domain) -> DenseTableValuation:  # type: ignore[override]
        axes = tuple(k for k, v in enumerate(phi.scope.ordered) if v not in domain)
        table = np.max(phi.table, axis=axes)
        return DenseTableValuation(self.semiring, domain, np.asarray(table), self.system)

    def _evaluate(self, phi: DenseTableValuation, z: Configuration) -> Any:  # type: ignore[override]
        index = tuple(z[v] for v in phi.scope.ordered)
        return self.semiring.decode(phi.table[index].item())

    def times(self, a: Any, b: Any) -> Any:
        return self.semiring.times(a, b)

    def plus(self, a: Any, b: Any) -> Any:
        return self.semiring.plus(a, b)

    # -------------------------------------------------------------------------
    # 最优扩展
    # -------------------------------------------------------------------------

    def argmax_extensions(self, phi: DenseTableValuation, x: Configuration) -> list[Configuration]:
        """φ 在固定 x 后取到投影值的全部完整配置（规范枚举顺序）"""
        ordered = phi.scope.ordered
        fixed = x.values
        index = tuple(fixed[v] if v in fixed else slice(None) for v in ordered)
        free = [v for v in ordered if v not in fixed]
        sub = np.asarray(phi.table[index])
        target = sub.max()
        if self.tolerance == 0:
            hits = np.argwhere(sub == target)
        else:
            hits = np.argwhere(np.isclose(sub, target, rtol=self.tolerance, atol=0.0))
        return [Configuration(x.items + tuple(zip(free, row.tolist()))) for row in hits]


__all__ = [
    "DenseTableValuation",
    "SemiringAlgebra",
]
