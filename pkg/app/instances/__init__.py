"""
具体赋值代数实例

- boolean: 合取组合、析取（max）投影的约束函数
- max-plus / min-plus: 加性权重
- max-times: 非负势函数（MAP）
- sparse-max-times: 稀疏势函数

以及实例工厂、默认随机取值池与随机问题生成。
"""

from typing import Any, Sequence

import numpy as np

from app.algebra import Valuation, ValuationAlgebra
from app.algebra.sampling import ValuationSampler
from app.configuration import VariableSystem
from app.exceptions import InvalidInputError
from app.instances.dense import DenseTableValuation, SemiringAlgebra
from app.instances.extension import ArgmaxExtensionFamily, ExtensionFamily, check_family
from app.instances.semiring import SEMIRINGS, Semiring
from app.instances.sparse import SparsePotential, SparsePotentialAlgebra
from app.models import SemiringName


# =============================================================================
# 实例工厂
# =============================================================================

def create_algebra(
    name: str | SemiringName,
    system: VariableSystem,
    tolerance: float | None = None,
) -> ValuationAlgebra:
    """创建代数实例

    Args:
        name: 实例名 (boolean, max-plus, min-plus, max-times, sparse-max-times)
        system: 变量系统
        tolerance: 比较容差，None 使用实例默认值

    Returns:
        代数实例

    Raises:
        InvalidInputError: 未知实例名
    """
    try:
        tag = SemiringName(name)
    except ValueError:
        raise InvalidInputError(
            f"unknown semiring: {name}. Supported: {', '.join(s.value for s in SemiringName)}",
            field="semiring", value=name,
        ) from None

    if tag == SemiringName.SPARSE_MAX_TIMES:
        return SparsePotentialAlgebra(system) if tolerance is None else SparsePotentialAlgebra(system, tolerance)
    return SemiringAlgebra(SEMIRINGS[tag], system, tolerance)


def extension_family(algebra: ValuationAlgebra) -> ExtensionFamily:
    """实例绑定的扩展集族"""
    return ArgmaxExtensionFamily(algebra)


# =============================================================================
# 随机取值池
# =============================================================================

DEFAULT_POOLS: dict[SemiringName, tuple[Any, ...]] = {
    SemiringName.BOOLEAN: (0, 1),
    SemiringName.MAX_PLUS: tuple(range(-5, 6)),
    SemiringName.MIN_PLUS: tuple(range(0, 10)),
    SemiringName.MAX_TIMES: (0.0, 0.5, 1.0, 2.0, 3.0),
    SemiringName.SPARSE_MAX_TIMES: (0.0, 0.0, 0.5, 1.0, 2.0, 3.0),
}

# 严格为正：全解枚举精确性所需
POSITIVE_POOLS: dict[SemiringName, tuple[Any, ...]] = {
    SemiringName.MAX_TIMES: (0.5, 1.0, 2.0, 3.0),
    SemiringName.SPARSE_MAX_TIMES: (0.5, 1.0, 2.0, 3.0),
}


def default_sampler(
    algebra: ValuationAlgebra,
    max_scope: int = 3,
    positive: bool = False,
    pool: Sequence[Any] | None = None,
) -> ValuationSampler:
    """实例的默认随机赋值生成器"""
    tag = SemiringName(algebra.name)
    if pool is None:
        pool = POSITIVE_POOLS.get(tag, DEFAULT_POOLS[tag]) if positive else DEFAULT_POOLS[tag]
    return ValuationSampler(algebra, pool, max_scope)


def random_problem(
    rng: np.random.Generator,
    name: str | SemiringName,
    n_vars: int = 6,
    n_factors: int = 6,
    max_frame: int = 3,
    max_scope: int = 3,
    positive: bool = False,
) -> tuple[ValuationAlgebra, list[Valuation]]:
    """随机问题：随机变量系统上的 1..n_factors 个非空标签因子

    Returns:
        (代数实例, 因子列表)
    """
    system = VariableSystem.random(rng, n_vars, max_frame)
    algebra = create_algebra(name, system)
    sampler = default_sampler(algebra, max_scope=max_scope, positive=positive)
    count = int(rng.integers(1, n_factors + 1))
    factors = [
        sampler(rng, sampler.scope(rng, size=int(rng.integers(1, max_scope + 1))))
        for _ in range(count)
    ]
    return algebra, factors


__all__ = [
    "Semiring",
    "SemiringAlgebra",
    "DenseTableValuation",
    "SparsePotential",
    "SparsePotentialAlgebra",
    "ExtensionFamily",
    "ArgmaxExtensionFamily",
    "check_family",
    "create_algebra",
    "extension_family",
    "DEFAULT_POOLS",
    "POSITIVE_POOLS",
    "default_sampler",
    "random_problem",
]
