"""
计算结果数据模型

Collect / Extend / 求解阶段的不可变输出
"""

from dataclasses import dataclass, field
from typing import Any, TYPE_CHECKING

from app.models import Configuration, describe

if TYPE_CHECKING:
    from app.algebra import Valuation


# =============================================================================
# Collect 结果
# =============================================================================

@dataclass(frozen=True)
class CollectResult:
    """Collect 算法输出

    Attributes:
        initial: 节点 -> 初始内容 ψ_i（单位元与所分配因子的组合）
        collected: 节点 -> 收集后的内容 ψ'_i，标签等于 λ(i)
        messages: (子节点, 父节点) -> 消息 μ，标签等于子节点的分隔集
        root: 收集时的根节点
    """
    initial: dict[int, "Valuation"]
    collected: dict[int, "Valuation"]
    messages: dict[tuple[int, int], "Valuation"]
    root: int

    @property
    def root_marginal(self) -> "Valuation":
        return self.collected[self.root]


# =============================================================================
# Extend 结果
# =============================================================================

@dataclass(frozen=True)
class ExtendResult:
    """Extend 算法输出

    Attributes:
        received: 节点 -> 从父节点收到的配置 ν_i（范围为分隔集，根为 ⋄）
        selected: 节点 -> 选中的局部配置 η_i（范围为 λ(i)）
        solution: 所有 η_i 的合并 z
    """
    received: dict[int, Configuration]
    selected: dict[int, Configuration]
    solution: Configuration


# =============================================================================
# 求解结果
# =============================================================================

@dataclass
class SolveResult:
    """单解求解结果

    Attributes:
        assignment: 解配置 z
        objective: z 处所有因子组合的取值
        satisfiable: 最优值是否非零元（布尔实例中即可满足性）
        tree_nodes: 所用连接树节点数
        extend: Extend 阶段的完整输出
    """
    assignment: Configuration
    objective: Any
    satisfiable: bool
    tree_nodes: int = 0
    extend: ExtendResult | None = field(default=None, repr=False)

    def to_dict(self) -> dict[str, Any]:
        return {
            "assignment": self.assignment.to_dict(),
            "objective": describe(self.objective),
            "satisfiable": self.satisfiable,
        }


@dataclass
class SolveAllResult:
    """全解求解结果

    Attributes:
        solutions: 按字典序排列的全部解
        objective: 最优值
        satisfiable: 最优值是否非零元
        complete: 是否在上限内枚举完毕
        rejected: 合并后未通过取值验证而被丢弃的配置数
    """
    solutions: list[Configuration]
    objective: Any
    satisfiable: bool
    complete: bool = True
    rejected: int = 0

    @property
    def count(self) -> int:
        return len(self.solutions)

    def to_dict(self) -> dict[str, Any]:
        return {
            "solutions": [s.to_dict() for s in self.solutions],
            "count": self.count,
            "objective": describe(self.objective),
            "satisfiable": self.satisfiable,
            "complete": self.complete,
        }


__all__ = [
    "CollectResult",
    "ExtendResult",
    "SolveResult",
    "SolveAllResult",
]
