"""
数据模型模块

定义系统中使用的基础数据结构：变量域、配置以及各类枚举
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Iterator, Mapping

from app.exceptions import DomainError


# =============================================================================
# 枚举类型
# =============================================================================

class SemiringName(str, Enum):
    """具体代数实例标签"""
    BOOLEAN = "boolean"                    # 合取/析取（约束满足）
    MAX_PLUS = "max-plus"                  # 最大-加（加性权重）
    MIN_PLUS = "min-plus"                  # 最小-加（内部以取负的最大-加实现）
    MAX_TIMES = "max-times"                # 最大-乘（MAP）
    SPARSE_MAX_TIMES = "sparse-max-times"  # 稀疏势函数


class Heuristic(str, Enum):
    """消元顺序启发式"""
    MIN_DEGREE = "min-degree"  # 最小度
    MIN_FILL = "min-fill"      # 最小填充
    GIVEN = "given"            # 使用给定顺序


class Picker(str, Enum):
    """扩展集选取策略"""
    LEXICOGRAPHIC = "lexicographic"  # 字典序最小（默认，确定性）
    FIRST_FOUND = "first-found"      # 枚举顺序中的第一个


# =============================================================================
# 变量域
# =============================================================================

class Domain(frozenset):
    """变量域：变量标识的有限集合

    幂集格中的元素，偏序为包含关系；并为 join，交为 meet，空集为底元。
    变量标识按字符串字典序排列，作为规范顺序（决定稠密表的轴顺序）。

    Examples:
        >>> Domain(["v", "u"]).ordered
        ('u', 'v')
        >>> Domain("u") <= Domain(["u", "v"])
        True
    """

    __slots__ = ()

    def __new__(cls, variables: Iterable[str] | str = ()) -> "Domain":
        if isinstance(variables, str):
            variables = (variables,)
        return super().__new__(cls, variables)

    @classmethod
    def of(cls, *variables: str) -> "Domain":
        return cls(variables)

    @classmethod
    def join_all(cls, domains: Iterable[Iterable[str]]) -> "Domain":
        """多个域的并"""
        result: set[str] = set()
        for d in domains:
            result.update(d)
        return cls(result)

    @property
    def ordered(self) -> tuple[str, ...]:
        """按规范顺序排列的变量"""
        return tuple(sorted(self))

    def join(self, other: Iterable[str]) -> "Domain":
        return Domain(frozenset.union(self, other))

    def meet(self, other: Iterable[str]) -> "Domain":
        return Domain(frozenset.intersection(self, other))

    def minus(self, other: Iterable[str]) -> "Domain":
        return Domain(frozenset.difference(self, other))

    def __or__(self, other: Iterable[str]) -> "Domain":  # type: ignore[override]
        return self.join(other)

    def __and__(self, other: Iterable[str]) -> "Domain":  # type: ignore[override]
        return self.meet(other)

    def __sub__(self, other: Iterable[str]) -> "Domain":  # type: ignore[override]
        return self.minus(other)

    def __repr__(self) -> str:
        return "{" + ",".join(self.ordered) + "}"

    def to_list(self) -> list[str]:
        return list(self.ordered)


BOTTOM = Domain()


# =============================================================================
# 配置
# =============================================================================

@dataclass(frozen=True)
class Configuration:
    """配置（元组）：对一个变量域上每个变量的赋值

    取值为变量框架中的下标（0 起），标签与下标的转换由变量系统负责。
    空域上的配置唯一，即 ⋄（见 ``DIAMOND``）。

    Attributes:
        items: 按规范变量顺序排列的 (变量, 取值下标) 对
    """
    items: tuple[tuple[str, int], ...] = field(default=())

    def __post_init__(self) -> None:
        items = tuple(sorted((str(v), int(i)) for v, i in self.items))
        names = [v for v, _ in items]
        if len(names) != len(set(names)):
            raise DomainError("variable assigned more than once", offending={
                v for v in names if names.count(v) > 1
            })
        object.__setattr__(self, "items", items)

    @classmethod
    def from_mapping(cls, values: Mapping[str, int]) -> "Configuration":
        return cls(tuple(values.items()))

    @classmethod
    def of(cls, **values: int) -> "Configuration":
        """关键字构造，如 ``Configuration.of(x=1, y=0)``"""
        return cls(tuple(values.items()))

    @classmethod
    def from_key(cls, scope: Domain, key: Iterable[int]) -> "Configuration":
        """从规范顺序的取值序列构造"""
        return cls(tuple(zip(scope.ordered, key)))

    @property
    def scope(self) -> Domain:
        return Domain(v for v, _ in self.items)

    @property
    def values(self) -> dict[str, int]:
        return dict(self.items)

    @property
    def key(self) -> tuple[int, ...]:
        """规范顺序下的取值序列，即字典序比较键"""
        return tuple(i for _, i in self.items)

    def __getitem__(self, variable: str) -> int:
        for v, i in self.items:
            if v == variable:
                return i
        raise KeyError(variable)

    def __iter__(self) -> Iterator[tuple[str, int]]:
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def restrict(self, scope: Iterable[str]) -> "Configuration":
        """限制到子域，丢弃其余变量的取值

        Raises:
            DomainError: 目标域不是当前范围的子集
        """
        scope = Domain(scope)
        own = self.scope
        if not scope <= own:
            raise DomainError(
                f"cannot restrict configuration over {own!r} to {scope!r}",
                offending=scope - own,
            )
        return Configuration(tuple((v, i) for v, i in self.items if v in scope))

    def __repr__(self) -> str:
        if not self.items:
            return "⋄"
        return "(" + ", ".join(f"{v}={i}" for v, i in self.items) + ")"

    def to_dict(self) -> dict[str, int]:
        return dict(self.items)


DIAMOND = Configuration()


def sort_configurations(configs: Iterable[Configuration]) -> list[Configuration]:
    """按（范围, 字典序）排序，保证输出确定"""
    return sorted(configs, key=lambda c: (c.scope.ordered, c.key))


def describe(value: Any) -> Any:
    """把 numpy 标量等转换为可序列化的 Python 值"""
    if hasattr(value, "item"):
        value = value.item()
    if isinstance(value, float) and value.is_integer():
        return int(value)
    return value


__all__ = [
    "SemiringName",
    "Heuristic",
    "Picker",
    "Domain",
    "BOTTOM",
    "Configuration",
    "DIAMOND",
    "sort_configurations",
    "describe",
]
