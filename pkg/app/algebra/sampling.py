"""
随机赋值采样

为公理检查、扩展集族检查和随机语料测试提供可复现的随机赋值与子域。
"""

from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from app.algebra import Valuation, ValuationAlgebra
from app.configuration import random_subdomain
from app.models import Configuration, Domain


@dataclass
class ValuationSampler:
    """随机赋值生成器

    表项从 pool 中均匀抽取；标签为变量系统中至多 max_scope 个变量。

    Attributes:
        algebra: 目标代数
        pool: 表项候选值（外部取值）
        max_scope: 随机标签的最大变量数
    """
    algebra: ValuationAlgebra
    pool: Sequence[Any]
    max_scope: int = 3

    def scope(self, rng: np.random.Generator, within: Domain | None = None, size: int | None = None) -> Domain:
        """随机标签"""
        variables = (self.algebra.system.variables if within is None else within).ordered
        if size is None:
            size = int(rng.integers(0, min(self.max_scope, len(variables)) + 1))
        size = min(size, len(variables))
        chosen = rng.choice(len(variables), size=size, replace=False) if size else []
        return Domain(variables[int(k)] for k in chosen)

    def __call__(self, rng: np.random.Generator, scope: Domain | None = None) -> Valuation:
        if scope is None:
            scope = self.scope(rng)
        n = self.algebra.system.count(scope)
        picks = rng.integers(len(self.pool), size=n)
        return self.algebra.tabulate(scope, [self.pool[int(k)] for k in picks])

    def subdomain(self, rng: np.random.Generator, domain: Domain) -> Domain:
        return random_subdomain(rng, domain)

    def between(self, rng: np.random.Generator, low: Domain, high: Domain) -> Domain:
        """low ≤ d ≤ high 的随机域"""
        return low | random_subdomain(rng, high - low)

    def configuration(self, rng: np.random.Generator, scope: Domain) -> Configuration:
        return self.algebra.system.random_configuration(rng, scope)


__all__ = ["ValuationSampler"]
