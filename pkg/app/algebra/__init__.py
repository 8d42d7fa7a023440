"""
赋值代数核心

定义赋值（valuation）与赋值代数的抽象接口：标签、组合、投影与单位元。
具体实例（布尔函数、最大-加、最大-乘、稀疏势函数）见 app.instances。

所有赋值在构造后不可变，任意操作可在多线程中并发调用。
"""

import math
from abc import ABC, abstractmethod
from typing import Any, Iterable, Sequence

from app.configuration import VariableSystem
from app.exceptions import DomainError, InstanceMismatchError
from app.models import BOTTOM, Configuration, Domain, describe


# =============================================================================
# 赋值
# =============================================================================

class Valuation(ABC):
    """赋值：带标签的信息片段

    Attributes:
        tag: 所属代数实例名（用于检测混合运算）
        system: 构造时使用的变量系统
    """

    tag: str = ""
    system: VariableSystem | None = None

    @property
    @abstractmethod
    def label(self) -> Domain:
        """标签 d(φ)"""

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}<{self.tag}>{self.label!r}"


class IdentityValuation(Valuation):
    """形式单位元 e

    标签为 ⊥，被组合吸收。用于没有原生单位元的代数。
    """

    tag = "identity"
    _instance: "IdentityValuation | None" = None

    def __new__(cls) -> "IdentityValuation":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    @property
    def label(self) -> Domain:
        return BOTTOM

    def __repr__(self) -> str:
        return "e"


IDENTITY = IdentityValuation()


# =============================================================================
# 赋值代数
# =============================================================================

class ValuationAlgebra(ABC):
    """赋值代数 ⟨Φ, D⟩ 的抽象接口

    子类实现 ``_combine`` / ``_project`` / ``_evaluate`` / ``tabulate``
    以及标量半环运算；公开方法负责实例归属与域的前置检查。

    Attributes:
        name: 实例名
        system: 变量系统（提供框架）
        tolerance: 观察等价的相对容差
    """

    name: str = "abstract"

    def __init__(self, system: VariableSystem, tolerance: float = 0.0):
        self.system = system
        self.tolerance = tolerance

    # -------------------------------------------------------------------------
    # 子类原语
    # -------------------------------------------------------------------------

    @abstractmethod
    def _combine(self, phi: Valuation, psi: Valuation) -> Valuation:
        ...

    @abstractmethod
    def _project(self, phi: Valuation, domain: Domain) -> Valuation:
        ...

    @abstractmethod
    def _evaluate(self, phi: Valuation, z: Configuration) -> Any:
        ...

    @abstractmethod
    def tabulate(self, scope: Iterable[str], values: Sequence[Any]) -> Valuation:
        """由规范布局（末变量最快）的取值序列构造赋值"""

    # 标量半环：乘法对应组合，加法（取优）对应投影
    unit: Any = None
    null: Any = None

    @abstractmethod
    def times(self, a: Any, b: Any) -> Any:
        ...

    @abstractmethod
    def plus(self, a: Any, b: Any) -> Any:
        ...

    # -------------------------------------------------------------------------
    # 单位元
    # -------------------------------------------------------------------------

    def identity(self) -> Valuation:
        """单位元 e；默认返回形式单位元"""
        return IDENTITY

    def neutral(self, domain: Iterable[str]) -> Valuation:
        """domain 上的中性赋值（用于把内容扩展到节点标签）"""
        domain = Domain(domain)
        if not domain:
            return self.identity()
        raise NotImplementedError(f"{self.name} has no neutral valuation over {domain!r}")

    # -------------------------------------------------------------------------
    # 公开操作
    # -------------------------------------------------------------------------

    def owns(self, phi: Valuation) -> bool:
        """φ 属于本实例：实例名相同且建立在相等的变量系统上"""
        if phi is IDENTITY:
            return True
        return phi.tag == self.name and phi.system == self.system

    def _check_owned(self, phi: Valuation) -> None:
        if self.owns(phi):
            return
        if phi.tag != self.name:
            message = f"valuation of instance {phi.tag!r} used with {self.name!r}"
        else:
            message = f"{self.name!r} valuation over {phi.label!r} was built on a different variable system"
        raise InstanceMismatchError(message, expected=self.name, actual=phi.tag)

    def label(self, phi: Valuation) -> Domain:
        return phi.label

    def combine(self, phi: Valuation, psi: Valuation) -> Valuation:
        """组合 φ ⊗ ψ，结果标签为 d(φ) ∨ d(ψ)

        Raises:
            InstanceMismatchError: 两个赋值属于不同实例
        """
        self._check_owned(phi)
        self._check_owned(psi)
        if psi is IDENTITY:
            return phi
        if phi is IDENTITY:
            return psi
        return self._combine(phi, psi)

    def combine_all(self, valuations: Iterable[Valuation]) -> Valuation:
        """按顺序组合，空序列返回单位元"""
        result = self.identity()
        for phi in valuations:
            result = self.combine(result, phi)
        return result

    def project(self, phi: Valuation, domain: Iterable[str]) -> Valuation:
        """投影 φ↓x，要求 x ≤ d(φ)

        Raises:
            DomainError: x 含有不在 d(φ) 中的变量
        """
        self._check_owned(phi)
        domain = Domain(domain)
        if not domain <= phi.label:
            raise DomainError(
                f"cannot project {phi.label!r} to {domain!r}",
                offending=domain - phi.label,
            )
        if domain == phi.label:
            return phi
        return self._project(phi, domain)

    def evaluate(self, phi: Valuation, z: Configuration) -> Any:
        """φ(z)，要求 z 的范围等于 d(φ)

        Raises:
            DomainError: 范围不一致
        """
        self._check_owned(phi)
        if z.scope != phi.label:
            raise DomainError(
                f"configuration over {z.scope!r} cannot evaluate valuation over {phi.label!r}",
                offending=z.scope ^ phi.label,
            )
        if phi is IDENTITY:
            return self.unit
        return self._evaluate(phi, z)

    def evaluate_product(self, factors: Iterable[Valuation], z: Configuration) -> Any:
        """逐因子求值并相乘：(φ_1 ⊗ … ⊗ φ_n)(z)，z 覆盖所有因子的标签"""
        value = self.unit
        for phi in factors:
            value = self.times(value, self.evaluate(phi, z.restrict(phi.label)))
        return value

    # -------------------------------------------------------------------------
    # 取值比较
    # -------------------------------------------------------------------------

    def same_value(self, a: Any, b: Any, tolerance: float | None = None) -> bool:
        tol = self.tolerance if tolerance is None else tolerance
        if tol == 0:
            return a == b
        return math.isclose(a, b, rel_tol=tol, abs_tol=0.0)

    def is_null(self, value: Any) -> bool:
        """取值是否为零元（布尔实例中表示不可满足）"""
        return self.null is not None and self.same_value(value, self.null)

    def equal(self, phi: Valuation, psi: Valuation, tolerance: float | None = None) -> bool:
        """观察等价：标签相同且在标签框架的每个配置上取值相同"""
        if phi.label != psi.label:
            return False
        return all(
            self.same_value(self.evaluate(phi, z), self.evaluate(psi, z), tolerance)
            for z in self.system.gamma(phi.label)
        )

    def values(self, phi: Valuation) -> list[Any]:
        """规范布局下的全部取值"""
        return [describe(self.evaluate(phi, z)) for z in self.system.gamma(phi.label)]

    def describe(self, phi: Valuation) -> dict[str, Any]:
        """可序列化描述，用于报告反例"""
        return {"scope": phi.label.to_list(), "values": self.values(phi)}

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.name})"


__all__ = [
    "Valuation",
    "IdentityValuation",
    "IDENTITY",
    "ValuationAlgebra",
]
