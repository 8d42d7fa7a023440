"""
公理检查器

对随机采样的赋值逐项验证 A1–A6 以及单位元性质，等价性为观察等价
（标签相同且在框架上逐点相等，容差内）。
"""

import logging
from typing import Any, Callable

import numpy as np
from tqdm import tqdm

from app.algebra import Valuation, ValuationAlgebra
from app.algebra.sampling import ValuationSampler
from app.exceptions import LocalCompError
from app.models.reports import AxiomReport, PropertyReport

logger = logging.getLogger(__name__)


def _guarded(report: PropertyReport, check: Callable[[], tuple[bool, dict[str, Any]]]) -> None:
    """执行单次检查，运算中抛出的错误也记为违反"""
    try:
        holds, witness = check()
    except LocalCompError as exc:
        holds, witness = False, {"error": exc.to_dict()}
    report.record(holds, witness)


def check_axioms(
    algebra: ValuationAlgebra,
    sampler: ValuationSampler,
    trials: int = 500,
    tolerance: float | None = None,
    seed: int = 0,
    progress: bool = False,
) -> AxiomReport:
    """检查赋值代数公理

    - A1 组合交换、结合
    - A2 d(φ⊗ψ) = d(φ) ∨ d(ψ)
    - A3 d(φ↓x) = x
    - A4 投影传递：(φ↓y)↓x = φ↓x，x ≤ y ≤ d(φ)
    - A5 组合公理：(ψ⊗φ)↓z = φ ⊗ ψ↓(z∧y)，x ≤ z ≤ x∨y
    - A6 φ↓d(φ) = φ
    - identity: d(e) = ⊥ 且 φ⊗e = φ

    Args:
        algebra: 被检查的代数
        sampler: 随机赋值生成器
        trials: 试验次数
        tolerance: 等价容差，None 表示使用代数默认值
        seed: 随机种子
        progress: 是否显示进度条

    Returns:
        公理检查报告（失败是数据，不抛异常）
    """
    rng = np.random.default_rng(seed)
    report = AxiomReport(name="axioms", instance=algebra.name)
    for axiom in AxiomReport.AXIOMS:
        report.add(axiom, trials)

    def eq(a: Valuation, b: Valuation) -> bool:
        return algebra.equal(a, b, tolerance)

    d = algebra.describe
    for _ in tqdm(range(trials), desc=f"axioms[{algebra.name}]", disable=not progress):
        phi, psi, chi = sampler(rng), sampler(rng), sampler(rng)
        x_ = phi.label
        y_ = psi.label

        def a1() -> tuple[bool, dict[str, Any]]:
            assoc = eq(
                algebra.combine(algebra.combine(phi, psi), chi),
                algebra.combine(phi, algebra.combine(psi, chi)),
            )
            comm = eq(algebra.combine(phi, psi), algebra.combine(psi, phi))
            return assoc and comm, {
                "phi": d(phi), "psi": d(psi), "chi": d(chi),
                "associative": assoc, "commutative": comm,
            }

        def a2() -> tuple[bool, dict[str, Any]]:
            label = algebra.combine(phi, psi).label
            return label == x_ | y_, {"phi": d(phi), "psi": d(psi), "label": label.to_list()}

        small = sampler.subdomain(rng, x_)
        middle = sampler.between(rng, small, x_)

        def a3() -> tuple[bool, dict[str, Any]]:
            return algebra.project(phi, small).label == small, {"phi": d(phi), "x": small.to_list()}

        def a4() -> tuple[bool, dict[str, Any]]:
            lhs = algebra.project(algebra.project(phi, middle), small)
            rhs = algebra.project(phi, small)
            return eq(lhs, rhs), {"phi": d(phi), "x": small.to_list(), "y": middle.to_list()}

        z_ = sampler.between(rng, x_, x_ | y_)

        def a5() -> tuple[bool, dict[str, Any]]:
            lhs = algebra.project(algebra.combine(psi, phi), z_)
            rhs = algebra.combine(phi, algebra.project(psi, z_ & y_))
            return eq(lhs, rhs), {"phi": d(phi), "psi": d(psi), "z": z_.to_list()}

        def a6() -> tuple[bool, dict[str, Any]]:
            return eq(algebra.project(phi, x_), phi), {"phi": d(phi)}

        def identity() -> tuple[bool, dict[str, Any]]:
            e = algebra.identity()
            holds = not e.label and eq(algebra.combine(phi, e), phi) and eq(algebra.combine(e, phi), phi)
            return holds, {"phi": d(phi)}

        for name, check in zip(AxiomReport.AXIOMS, (a1, a2, a3, a4, a5, a6, identity)):
            _guarded(report[name], check)

    if report.ok:
        logger.info("axioms hold for %s over %d trials", algebra.name, trials)
    else:
        logger.warning("axioms failing for %s: %s", algebra.name, ", ".join(report.failed()))
    return report


__all__ = ["check_axioms"]
