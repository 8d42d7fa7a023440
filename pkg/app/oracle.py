"""
穷举参照实现

不使用连接树与消息传递：在所有因子标签之并上逐一枚举配置，
直接计算组合后的取值。用作测试中的对照，以及反例演示。
"""

import logging
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from app.algebra import Valuation, ValuationAlgebra
from app.config import config
from app.configuration import VariableSystem
from app.exceptions import StateSpaceTooLargeError
from app.instances import create_algebra
from app.instances.extension import ArgmaxExtensionFamily, ExtensionFamily
from app.models import DIAMOND, Configuration, Domain, SemiringName, sort_configurations

logger = logging.getLogger(__name__)


# =============================================================================
# 穷举
# =============================================================================

def _enumerate(
    factors: Sequence[Valuation],
    algebra: ValuationAlgebra,
    max_states: int | None,
) -> list[tuple[Configuration, Any]]:
    """全部因子标签之并上的 (配置, 组合取值)

    Raises:
        StateSpaceTooLargeError: 配置总数超过 max_states（None 时取配置中的上限）
    """
    domain = Domain.join_all(f.label for f in factors)
    if max_states is None:
        max_states = config.oracle.max_states
    states = algebra.system.count(domain)
    if states > max_states:
        raise StateSpaceTooLargeError(
            f"refusing to enumerate {states} configurations over {domain!r}",
            states=states, limit=max_states,
        )
    return [(z, algebra.evaluate_product(factors, z)) for z in algebra.system.gamma(domain)]


def brute_marginal(
    factors: Sequence[Valuation],
    query: Iterable[str],
    algebra: ValuationAlgebra,
    max_states: int | None = None,
) -> Valuation:
    """直接组合再投影：(φ_1 ⊗ … ⊗ φ_n)↓X"""
    query = Domain(query)
    best: dict[Configuration, Any] = {}
    for z, value in _enumerate(factors, algebra, max_states):
        x = z.restrict(query)
        best[x] = value if x not in best else algebra.plus(best[x], value)
    return algebra.tabulate(query, [best[x] for x in algebra.system.gamma(query)])


def brute_optimum(
    factors: Sequence[Valuation],
    algebra: ValuationAlgebra,
    max_states: int | None = None,
) -> Any:
    """⊥ 上的边缘取值，即全局最优值"""
    value = algebra.null
    for _, v in _enumerate(factors, algebra, max_states):
        value = algebra.plus(value, v)
    return value


def brute_solutions(
    factors: Sequence[Valuation],
    algebra: ValuationAlgebra,
    max_states: int | None = None,
) -> list[Configuration]:
    """取到全局最优值的全部配置（字典序）"""
    table = _enumerate(factors, algebra, max_states)
    optimum = algebra.null
    for _, v in table:
        optimum = algebra.plus(optimum, v)
    return sort_configurations(z for z, v in table if algebra.same_value(v, optimum))


# =============================================================================
# 解集投影恒等式的反例
# =============================================================================

def _render_set(configs: Iterable[Configuration]) -> str:
    items = ["(" + ",".join(str(i) for i in c.key) + ")" for c in sort_configurations(configs)]
    return "{" + ", ".join(items) + "}"


@dataclass(frozen=True)
class CounterexampleReport:
    """解集投影恒等式两侧的计算结果

    Attributes:
        lhs: c_φ 在 X∪Y 上的限制
        rhs: { z : z_Y ∈ c_φ 在 Y 上的限制，且 z_{X−Y} ∈ W_{φ↓X}(z_{X∩Y}) }
        w_x: W_{φ↓X}(⋄)
        c_y: c_φ 在 Y 上的限制
    """
    lhs: tuple[Configuration, ...]
    rhs: tuple[Configuration, ...]
    w_x: tuple[Configuration, ...]
    c_y: tuple[Configuration, ...]

    @property
    def refuted(self) -> bool:
        return set(self.lhs) != set(self.rhs)

    def to_dict(self) -> dict[str, Any]:
        return {
            "lhs": [c.to_dict() for c in self.lhs],
            "rhs": [c.to_dict() for c in self.rhs],
            "w_x": [c.to_dict() for c in self.w_x],
            "c_y": [c.to_dict() for c in self.c_y],
            "refuted": self.refuted,
        }

    def render(self) -> str:
        verdict = "Theorem 8.1 REFUTED" if self.refuted else "identity holds"
        lines = [
            "phi(x, y) = 1 if x = y else 0 over boolean frames {0,1}; X = {x}, Y = {y}",
            f"LHS  c_phi restricted to X u Y : {_render_set(self.lhs)}",
            f"     W_(phi->X)(<>)            : {_render_set(self.w_x)}",
            f"     c_phi restricted to Y     : {_render_set(self.c_y)}",
            f"RHS  A                         : {_render_set(self.rhs)}",
            f"LHS {'!=' if self.refuted else '=='} RHS: {verdict}",
        ]
        return "\n".join(lines) + "\n"


def solution_projection_sides(
    family: ExtensionFamily,
    phi: Valuation,
    x_vars: Iterable[str],
    y_vars: Iterable[str],
) -> CounterexampleReport:
    """按定义计算恒等式两侧

    左侧是 c_φ 在 X∪Y 上的限制；右侧在 Ω_{X∪Y} 中挑出满足
    z_Y ∈ c_φ 在 Y 上的限制且 z_{X−Y} ∈ W_{φ↓X}(z_{X∩Y}) 的配置。
    """
    algebra = family.algebra
    x_vars, y_vars = Domain(x_vars), Domain(y_vars)
    union = x_vars | y_vars
    solutions = family.solutions(phi)
    lhs = {z.restrict(union) for z in solutions}
    c_y = {z.restrict(y_vars) for z in solutions}
    phi_x = algebra.project(phi, x_vars)

    rhs = set()
    for z in algebra.system.gamma(union):
        free = family.free_extensions(phi_x, z.restrict(x_vars & y_vars))
        if z.restrict(y_vars) in c_y and z.restrict(x_vars - y_vars) in free:
            rhs.add(z)

    return CounterexampleReport(
        lhs=tuple(sort_configurations(lhs)),
        rhs=tuple(sort_configurations(rhs)),
        w_x=tuple(family.free_extensions(phi_x, DIAMOND)),
        c_y=tuple(sort_configurations(c_y)),
    )


def counterexample_fixture() -> tuple[ValuationAlgebra, Valuation]:
    """布尔函数 φ(x, y) = [x = y]，x、y 的框架为 {0, 1}"""
    system = VariableSystem({"x": [0, 1], "y": [0, 1]})
    algebra = create_algebra(SemiringName.BOOLEAN, system)
    return algebra, algebra.tabulate(["x", "y"], [1, 0, 0, 1])


def reproduce_counterexample() -> CounterexampleReport:
    """在固定的布尔反例上计算恒等式两侧"""
    algebra, phi = counterexample_fixture()
    report = solution_projection_sides(ArgmaxExtensionFamily(algebra), phi, ["x"], ["y"])
    logger.debug("counterexample sides: %s", report.to_dict())
    return report


__all__ = [
    "brute_marginal",
    "brute_optimum",
    "brute_solutions",
    "CounterexampleReport",
    "solution_projection_sides",
    "counterexample_fixture",
    "reproduce_counterexample",
]
