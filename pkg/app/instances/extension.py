"""
配置扩展集族

E_φ(x)：对赋值 φ 与范围 s ≤ d(φ) 的配置 x，给出 d(φ) 上扩展 x 的配置集合。
本项目的实例都使用取优扩展族：

    E_φ(x) = { z ∈ Γ_{d(φ)} : z_s = x 且 φ(z) = φ↓s(x) }

并提供对族条件（完整范围单点、两步分解、解等于 ⋄ 的扩展）的穷举检查。
"""

import logging
from abc import ABC, abstractmethod

import numpy as np
from tqdm import tqdm

from app.algebra import IDENTITY, Valuation, ValuationAlgebra
from app.algebra.sampling import ValuationSampler
from app.configuration import merge
from app.exceptions import DomainError, LocalCompError
from app.models import DIAMOND, Configuration, sort_configurations
from app.models.reports import SuiteReport

logger = logging.getLogger(__name__)


# =============================================================================
# 扩展集族接口
# =============================================================================

class ExtensionFamily(ABC):
    """配置扩展集族（绑定到一个代数实例）

    Attributes:
        algebra: 所属代数
    """

    def __init__(self, algebra: ValuationAlgebra):
        self.algebra = algebra

    @abstractmethod
    def extension_set(self, phi: Valuation, x: Configuration) -> list[Configuration]:
        """E_φ(x)，按枚举顺序返回

        Raises:
            DomainError: x 的范围不是 d(φ) 的子集
        """

    def is_extension(self, phi: Valuation, x: Configuration, z: Configuration) -> bool:
        """z ∈ E_φ(x)"""
        return z in set(self.extension_set(phi, x))

    def extends(self, phi: Valuation, x: Configuration, z: Configuration) -> bool:
        """z 是 x 到 φ 的扩展：z_{d(φ)} ∈ E_φ(x_{s∧d(φ)})，x、z 的范围任意"""
        d = phi.label
        if not d <= z.scope:
            return False
        return self.is_extension(phi, x.restrict(x.scope & d), z.restrict(d))

    def free_extensions(self, phi: Valuation, x: Configuration) -> list[Configuration]:
        """变量系统形式 W_φ(x) ⊆ Ω_{d(φ)−s}：每个扩展去掉 x 本身的部分"""
        free = phi.label - x.scope
        return sort_configurations({z.restrict(free) for z in self.extension_set(phi, x)})

    def solutions(self, phi: Valuation) -> list[Configuration]:
        """c_φ = E_φ(⋄)"""
        return self.extension_set(phi, DIAMOND)


class ArgmaxExtensionFamily(ExtensionFamily):
    """取优扩展族：固定 x 后取到 φ↓s(x) 的完整配置"""

    def _check_scope(self, phi: Valuation, x: Configuration) -> None:
        if not x.scope <= phi.label:
            raise DomainError(
                f"configuration over {x.scope!r} is not within {phi.label!r}",
                offending=x.scope - phi.label,
            )

    def extension_set(self, phi: Valuation, x: Configuration) -> list[Configuration]:
        self._check_scope(phi, x)
        if phi is IDENTITY:
            return [DIAMOND]
        fast = getattr(self.algebra, "argmax_extensions", None)
        if fast is not None:
            return fast(phi, x)
        target = self.algebra.evaluate(self.algebra.project(phi, x.scope), x)
        candidates = (merge([x, y]) for y in self.algebra.system.gamma(phi.label - x.scope))
        return [z for z in candidates if self.algebra.same_value(self.algebra.evaluate(phi, z), target)]

    def is_extension(self, phi: Valuation, x: Configuration, z: Configuration) -> bool:
        self._check_scope(phi, x)
        if z.scope != phi.label or z.restrict(x.scope) != x:
            return False
        target = self.algebra.evaluate(self.algebra.project(phi, x.scope), x)
        return self.algebra.same_value(self.algebra.evaluate(phi, z), target)


# =============================================================================
# 族条件检查
# =============================================================================

def _argmax_by_enumeration(algebra: ValuationAlgebra, phi: Valuation) -> set[Configuration]:
    """穷举求 φ 的全部最优配置（不经过扩展集）"""
    configs = list(algebra.system.gamma(phi.label))
    values = [algebra.evaluate(phi, z) for z in configs]
    best = values[0]
    for v in values[1:]:
        best = algebra.plus(best, v)
    return {z for z, v in zip(configs, values) if algebra.same_value(v, best)}


def check_family(
    family: ExtensionFamily,
    sampler: ValuationSampler,
    trials: int = 200,
    seed: int = 0,
    progress: bool = False,
) -> SuiteReport:
    """穷举检查扩展集族的三个条件

    - full-scope: x ∈ Γ_{d(φ)} 时 E_φ(x) = {x}
    - two-step: s < t ≤ d(φ) 时
      E_φ(x) = { y : y_t ∈ E_{φ↓t}(x) 且 y ∈ E_φ(y_t) }
    - solution: c_φ（穷举最优）= E_φ(⋄)

    Returns:
        三项性质的报告集合
    """
    algebra = family.algebra
    rng = np.random.default_rng(seed)
    report = SuiteReport(name="extension-family", instance=algebra.name)
    full_scope = report.add("full-scope", trials)
    two_step = report.add("two-step", trials)
    solution = report.add("solution", trials)

    for _ in tqdm(range(trials), desc=f"family[{algebra.name}]", disable=not progress):
        phi = sampler(rng)
        d = phi.label
        described = algebra.describe(phi)
        try:
            z = sampler.configuration(rng, d)
            full_scope.record(family.extension_set(phi, z) == [z], {"phi": described, "x": z.to_dict()})

            t = sampler.between(rng, sampler.subdomain(rng, d), d)
            s = sampler.subdomain(rng, t)
            if s == t and t:
                s = t - {t.ordered[-1]}
            if s != t:
                projected = algebra.project(phi, t)
                for x in algebra.system.gamma(s):
                    direct = set(family.extension_set(phi, x))
                    staged = {
                        y for y in algebra.system.gamma(d)
                        if family.is_extension(projected, x, y.restrict(t))
                        and family.is_extension(phi, y.restrict(t), y)
                    }
                    two_step.record(direct == staged, {
                        "phi": described, "s": s.to_list(), "t": t.to_list(), "x": x.to_dict(),
                        "direct": [c.to_dict() for c in sort_configurations(direct)],
                        "two_step": [c.to_dict() for c in sort_configurations(staged)],
                    })

            expected = _argmax_by_enumeration(algebra, phi)
            solution.record(set(family.solutions(phi)) == expected, {"phi": described})
        except LocalCompError as exc:
            solution.record(False, {"phi": described, "error": exc.to_dict()})

    if not report.ok:
        logger.warning("extension family conditions failing for %s: %s", algebra.name, ", ".join(report.failed()))
    return report


__all__ = [
    "ExtensionFamily",
    "ArgmaxExtensionFamily",
    "check_family",
]
