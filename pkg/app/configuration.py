"""
配置系统

变量系统（每个变量一个有限框架）及其推广：配置系统 ⟨Γ, π⟩。
提供限制、相容性判断、合并以及合并友好性检查。
"""

import itertools
import logging
from abc import ABC, abstractmethod
from typing import Any, Callable, Iterable, Iterator, Mapping, Sequence

import numpy as np

from app.exceptions import DomainError, IncompatibleConfigurationError, InvalidInputError
from app.models import BOTTOM, DIAMOND, Configuration, Domain, sort_configurations
from app.models.reports import PropertyReport

logger = logging.getLogger(__name__)

ScopeSampler = Callable[[np.random.Generator], tuple[Domain, Domain]]


# =============================================================================
# 限制 / 相容 / 合并（变量系统语义）
# =============================================================================

def restrict(x: Configuration, scope: Iterable[str]) -> Configuration:
    """丢弃 scope 之外变量的取值

    Raises:
        DomainError: scope 不是 x 范围的子集
    """
    return x.restrict(scope)


def _conflict(x: Configuration, y: Configuration) -> str | None:
    """返回 x、y 在公共变量上第一个取值不同的变量"""
    xv = x.values
    for v, i in y.items:
        if v in xv and xv[v] != i:
            return v
    return None


def compatible(x: Configuration, y: Configuration) -> bool:
    """两个配置在公共变量上取值一致"""
    return _conflict(x, y) is None


def merge(configs: Sequence[Configuration]) -> Configuration:
    """合并两两相容的配置，得到唯一的合并配置

    Raises:
        InvalidInputError: 输入为空
        IncompatibleConfigurationError: 存在冲突变量
    """
    if not configs:
        raise InvalidInputError("merge needs at least one configuration", field="configs")
    values: dict[str, int] = {}
    for c in configs:
        for v, i in c.items:
            if values.setdefault(v, i) != i:
                raise IncompatibleConfigurationError(
                    f"configurations disagree on variable {v!r}", variable=v,
                )
    return Configuration.from_mapping(values)


# =============================================================================
# 配置系统接口
# =============================================================================

class ConfigurationSystem(ABC):
    """配置系统 ⟨Γ, π⟩

    每个域 s 对应配置集合 Γ_s，s ≤ t 时限制映射 Γ_t → Γ_s 满射，Γ_⊥ = {⋄}。
    """

    @property
    @abstractmethod
    def variables(self) -> Domain:
        """顶域（全部变量）"""

    @abstractmethod
    def gamma(self, scope: Domain) -> Iterator[Configuration]:
        """枚举 Γ_scope"""

    def restrict(self, z: Configuration, scope: Iterable[str]) -> Configuration:
        return z.restrict(scope)

    def compatible(self, x: Configuration, y: Configuration) -> bool:
        return compatible(x, y)

    def merge(self, configs: Sequence[Configuration]) -> Configuration:
        return merge(configs)


class VariableSystem(ConfigurationSystem):
    """变量系统 ⟨V, Ω⟩

    Attributes:
        frames: 变量 -> 取值标签列表（非空）
    """

    def __init__(self, frames: Mapping[str, Sequence[Any]]):
        self.frames: dict[str, list[Any]] = {}
        for name in sorted(frames):
            frame = list(frames[name])
            if not frame:
                raise InvalidInputError(f"frame of variable {name!r} is empty", field=name)
            if len(set(map(str, frame))) != len(frame):
                raise InvalidInputError(f"frame of variable {name!r} has duplicate values", field=name, value=frame)
            self.frames[name] = frame

    @classmethod
    def from_sizes(cls, sizes: Mapping[str, int]) -> "VariableSystem":
        """框架为 0..n-1 的变量系统"""
        return cls({v: list(range(n)) for v, n in sizes.items()})

    @classmethod
    def random(cls, rng: np.random.Generator, n_vars: int, max_frame: int = 3) -> "VariableSystem":
        """随机变量系统，变量名 a, b, c, ..."""
        names = [chr(ord("a") + k) for k in range(n_vars)]
        return cls.from_sizes({v: int(rng.integers(1, max_frame + 1)) for v in names})

    @property
    def variables(self) -> Domain:
        return Domain(self.frames)

    def size(self, variable: str) -> int:
        return len(self.frames[variable])

    def shape(self, scope: Domain) -> tuple[int, ...]:
        self.check_known(scope)
        return tuple(self.size(v) for v in scope.ordered)

    def count(self, scope: Domain) -> int:
        return int(np.prod(self.shape(scope), dtype=np.int64)) if scope else 1

    def check_known(self, scope: Iterable[str]) -> None:
        unknown = set(scope) - set(self.frames)
        if unknown:
            raise DomainError("unknown variables", offending=unknown)

    def gamma(self, scope: Domain) -> Iterator[Configuration]:
        """按规范布局（末变量最快）枚举 Ω_scope"""
        scope = Domain(scope)
        ordered = scope.ordered
        for key in itertools.product(*(range(n) for n in self.shape(scope))):
            yield Configuration(tuple(zip(ordered, key)))

    def contains(self, z: Configuration) -> bool:
        return all(v in self.frames and 0 <= i < self.size(v) for v, i in z.items)

    def random_configuration(self, rng: np.random.Generator, scope: Domain) -> Configuration:
        return Configuration(tuple((v, int(rng.integers(self.size(v)))) for v in scope.ordered))

    # -- 标签转换 --------------------------------------------------------------

    def index_of(self, variable: str, label: Any) -> int:
        frame = self.frames[variable]
        for i, value in enumerate(frame):
            if value == label or str(value) == str(label):
                return i
        raise InvalidInputError(f"value {label!r} not in frame of {variable!r}", field=variable, value=label)

    def label_of(self, variable: str, index: int) -> Any:
        return self.frames[variable][index]

    def labelled(self, z: Configuration) -> dict[str, Any]:
        """配置 -> {变量: 取值标签}"""
        return {v: self.label_of(v, i) for v, i in z.items}

    def to_dict(self) -> dict[str, list[Any]]:
        return {v: list(f) for v, f in self.frames.items()}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VariableSystem):
            return NotImplemented
        return self is other or self.frames == other.frames

    def __hash__(self) -> int:
        return hash(tuple((v, len(f)) for v, f in self.frames.items()))


class SupportSystem(ConfigurationSystem):
    """由顶域上的支撑集导出的配置系统

    Γ_s = { z_s : z ∈ S }。限制映射自然满射，但一般不是变量系统，
    且不一定合并友好。

    Attributes:
        base: 底层变量系统
        support: 顶域上的支撑配置
    """

    def __init__(self, base: VariableSystem, support: Iterable[Configuration]):
        self.base = base
        self.support = sort_configurations(set(support))
        top = base.variables
        for z in self.support:
            if z.scope != top:
                raise DomainError(f"support configuration {z!r} is not over {top!r}", offending=top ^ z.scope)
        self._cache: dict[Domain, list[Configuration]] = {}

    @property
    def variables(self) -> Domain:
        return self.base.variables

    def gamma(self, scope: Domain) -> Iterator[Configuration]:
        scope = Domain(scope)
        if scope not in self._cache:
            if not scope:
                self._cache[scope] = [DIAMOND]
            else:
                self._cache[scope] = sort_configurations({z.restrict(scope) for z in self.support})
        return iter(self._cache[scope])

    def mergers(self, x: Configuration, y: Configuration) -> list[Configuration]:
        scope = x.scope | y.scope
        return [z for z in self.gamma(scope) if z.restrict(x.scope) == x and z.restrict(y.scope) == y]

    def compatible(self, x: Configuration, y: Configuration) -> bool:
        return bool(self.mergers(x, y))

    def merge(self, configs: Sequence[Configuration]) -> Configuration:
        if not configs:
            raise InvalidInputError("merge needs at least one configuration", field="configs")
        scope = Domain.join_all(c.scope for c in configs)
        for z in self.gamma(scope):
            if all(z.restrict(c.scope) == c for c in configs):
                return z
        conflict = next((v for a, b in itertools.combinations(configs, 2) if (v := _conflict(a, b))), None)
        raise IncompatibleConfigurationError("no merger in the support system", variable=conflict)


# =============================================================================
# 合并友好性检查
# =============================================================================

def random_subdomain(rng: np.random.Generator, domain: Domain) -> Domain:
    """域的均匀随机子集"""
    ordered = domain.ordered
    if not ordered:
        return BOTTOM
    mask = rng.integers(0, 2, size=len(ordered))
    return Domain(v for v, keep in zip(ordered, mask) if keep)


def check_merge_friendly(
    system: ConfigurationSystem,
    sampler: ScopeSampler | None = None,
    trials: int = 500,
    seed: int = 0,
    exhaustive: bool = False,
) -> PropertyReport:
    """检查合并友好性：x_{s∧t} = y_{s∧t} ⇒ x 与 y 相容

    每次试验抽取一对域 (s, t)，穷举 Γ_s × Γ_t。exhaustive=True 时忽略
    trials，遍历顶域所有子集对。

    Args:
        system: 配置系统
        sampler: 域对采样器，默认取顶域的两个随机子集
        trials: 试验次数
        seed: 随机种子
        exhaustive: 是否遍历所有域对

    Returns:
        性质报告
    """
    rng = np.random.default_rng(seed)
    top = system.variables
    if exhaustive:
        subsets = [Domain(c) for k in range(len(top) + 1) for c in itertools.combinations(top.ordered, k)]
        pairs: Iterable[tuple[Domain, Domain]] = itertools.product(subsets, subsets)
        report = PropertyReport(name="merge-friendly", trials=len(subsets) ** 2)
    else:
        draw = sampler or (lambda g: (random_subdomain(g, top), random_subdomain(g, top)))
        pairs = (draw(rng) for _ in range(trials))
        report = PropertyReport(name="merge-friendly", trials=trials)

    for s, t in pairs:
        common = s & t
        ys = list(system.gamma(t))
        for x in system.gamma(s):
            xc = x.restrict(common)
            for y in ys:
                if y.restrict(common) != xc:
                    continue
                report.record(system.compatible(x, y), {
                    "s": s.to_list(), "t": t.to_list(), "x": x.to_dict(), "y": y.to_dict(),
                })
    if not report.ok:
        logger.info("merge-friendly check: %d violation(s), first %s", report.failures, report.first_violation)
    return report


__all__ = [
    "restrict",
    "compatible",
    "merge",
    "ConfigurationSystem",
    "VariableSystem",
    "SupportSystem",
    "random_subdomain",
    "check_merge_friendly",
]
