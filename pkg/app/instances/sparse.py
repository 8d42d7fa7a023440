"""
稀疏势函数

只存储非零条目的最大-乘赋值，缺省条目取 0。
组合：对可合并的支撑条目对相乘；投影：对限制相同的条目取最大。
"""

from collections import defaultdict
from dataclasses import dataclass
from types import MappingProxyType
from typing import Any, Iterable, Mapping, Sequence

from app.algebra import Valuation, ValuationAlgebra
from app.configuration import VariableSystem, merge
from app.exceptions import DomainError, InvalidInputError
from app.models import DIAMOND, Configuration, Domain, SemiringName, sort_configurations


@dataclass(frozen=True, eq=False)
class SparsePotential(Valuation):
    """稀疏势函数

    Attributes:
        scope: 标签
        entries: 支撑配置 -> 正值（范式中不含显式零）
        system: 构造时使用的变量系统
    """
    scope: Domain
    entries: Mapping[Configuration, float]
    system: VariableSystem

    tag = SemiringName.SPARSE_MAX_TIMES.value

    def __post_init__(self) -> None:
        clean = {}
        for z, value in self.entries.items():
            if z.scope != self.scope:
                raise DomainError(f"entry {z!r} is not over {self.scope!r}", offending=z.scope ^ self.scope)
            if value < 0:
                raise InvalidInputError("sparse potentials are nonnegative", field="entries", value=value)
            if value != 0:
                clean[z] = float(value)
        object.__setattr__(self, "entries", MappingProxyType(clean))

    @property
    def label(self) -> Domain:
        return self.scope

    @property
    def support(self) -> list[Configuration]:
        return sort_configurations(self.entries)

    def __repr__(self) -> str:
        body = ", ".join(f"{z!r}: {v:g}" for z, v in self.entries.items())
        return f"Sparse{self.scope!r}{{{body}}}"


class SparsePotentialAlgebra(ValuationAlgebra):
    """稀疏势函数代数（最大-乘语义，缺省 0）"""

    name = SemiringName.SPARSE_MAX_TIMES.value
    unit = 1.0
    null = 0.0

    def __init__(self, system: VariableSystem, tolerance: float = 1e-9):
        super().__init__(system, tolerance)

    # -------------------------------------------------------------------------
    # 构造
    # -------------------------------------------------------------------------

    def tabulate(self, scope: Iterable[str], values: Sequence[Any]) -> SparsePotential:
        scope = Domain(scope)
        configs = list(self.system.gamma(scope))
        if len(values) != len(configs):
            raise InvalidInputError(
                f"table over {scope!r} needs {len(configs)} values, got {len(values)}",
                field="table", value=len(values),
            )
        return SparsePotential(scope, {z: float(v) for z, v in zip(configs, values)}, self.system)

    def from_entries(self, scope: Iterable[str], entries: Mapping[Configuration, float]) -> SparsePotential:
        scope = Domain(scope)
        for z in entries:
            if not self.system.contains(z):
                raise InvalidInputError(f"entry {z!r} outside the variable frames", field="entries")
        return SparsePotential(scope, dict(entries), self.system)

    def identity(self) -> SparsePotential:
        return SparsePotential(Domain(), {DIAMOND: 1.0}, self.system)

    def neutral(self, domain: Iterable[str]) -> SparsePotential:
        domain = Domain(domain)
        return SparsePotential(domain, {z: 1.0 for z in self.system.gamma(domain)}, self.system)

    # -------------------------------------------------------------------------
    # 原语
    # -------------------------------------------------------------------------

    def _combine(self, phi: SparsePotential, psi: SparsePotential) -> SparsePotential:  # type: ignore[override]
        shared = phi.scope & psi.scope
        index: dict[Configuration, list[tuple[Configuration, float]]] = defaultdict(list)
        for y, b in psi.entries.items():
            index[y.restrict(shared)].append((y, b))
        entries: dict[Configuration, float] = {}
        for x, a in phi.entries.items():
            for y, b in index.get(x.restrict(shared), ()):
                entries[merge([x, y])] = a * b
        return SparsePotential(phi.scope | psi.scope, entries, self.system)

    def _project(self, phi: SparsePotential, domain: Domain) -> SparsePotential:  # type: ignore[override]
        entries: dict[Configuration, float] = {}
        for z, value in phi.entries.items():
            key = z.restrict(domain)
            if value > entries.get(key, 0.0):
                entries[key] = value
        return SparsePotential(domain, entries, self.system)

    def _evaluate(self, phi: SparsePotential, z: Configuration) -> float:  # type: ignore[override]
        return phi.entries.get(z, 0.0)

    def times(self, a: float, b: float) -> float:
        return a * b

    def plus(self, a: float, b: float) -> float:
        return max(a, b)

    # -------------------------------------------------------------------------
    # 最优扩展
    # -------------------------------------------------------------------------

    def argmax_extensions(self, phi: SparsePotential, x: Configuration) -> list[Configuration]:
        """φ 在固定 x 后取到投影值的全部完整配置

        x 下没有支撑条目时投影值为 0，所有补全都取到它。
        """
        scope = x.scope
        matching = [(z, v) for z, v in phi.entries.items() if z.restrict(scope) == x]
        if not matching:
            return [merge([x, y]) for y in self.system.gamma(phi.scope - scope)]
        target = max(v for _, v in matching)
        return sort_configurations(z for z, v in matching if self.same_value(v, target))


__all__ = [
    "SparsePotential",
    "SparsePotentialAlgebra",
]
