"""
求解：Extend / ExtendAll 以及可扩展性检查

Collect 之后自根向叶选择局部扩展（Extend），合并得到全局解；
ExtendAll 在每个节点上枚举全部扩展，得到全部解。
本模块同时提供（完全）分段可扩展性及其多元推广的穷举检查器。
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

import numpy as np
from tqdm import tqdm

from app.algebra import Valuation, ValuationAlgebra
from app.algebra.sampling import ValuationSampler
from app.configuration import merge
from app.exceptions import (
    DomainError,
    IncompatibleConfigurationError,
    LocalCompError,
    NoSolutionError,
    SolutionError,
    TreeMismatchError,
)
from app.instances import extension_family
from app.instances.extension import ExtensionFamily
from app.jointree import CoveringJoinTree, build_covering_join_tree
from app.models import BOTTOM, DIAMOND, Configuration, Domain, Heuristic, Picker, sort_configurations
from app.models.reports import PropertyReport, SuiteReport
from app.models.results import CollectResult, ExtendResult, SolveAllResult, SolveResult
from app.propagation import collect

logger = logging.getLogger(__name__)

DEFAULT_CAP = 1_000_000

# 多元引理检查中每个部分解允许尝试的合并组合数
_MAX_MERGERS = 4096


# =============================================================================
# Extend
# =============================================================================

def pick(options: Sequence[Configuration], picker: Picker | str = Picker.LEXICOGRAPHIC) -> Configuration:
    """从非空扩展集中选一个配置"""
    if Picker(picker) == Picker.FIRST_FOUND:
        return options[0]
    return min(options, key=lambda c: c.key)


def depth_levels(tree: CoveringJoinTree) -> list[list[int]]:
    """按深度分层（根在第 0 层）"""
    depths = tree.depths()
    levels: list[list[int]] = [[] for _ in range(max(depths.values()) + 1)]
    for node in tree.nodes:
        levels[depths[node]].append(node)
    return levels


def extend(
    tree: CoveringJoinTree,
    collected: CollectResult,
    family: ExtensionFamily,
    picker: Picker | str = Picker.LEXICOGRAPHIC,
    max_workers: int = 1,
) -> ExtendResult:
    """Extend 算法

    根从 ν_r = ⋄ 开始；每个节点从 E_{ψ'_i}(ν_i) 中选出 η_i，
    并向子节点 j 发送 ν_j = η_i 在 s_j 上的限制。最后合并所有 η_i。

    Args:
        tree: Collect 使用的同一棵树
        collected: Collect 输出
        family: 扩展集族
        picker: 扩展集中有多个元素时的选择策略
        max_workers: 同层节点的并发线程数

    Returns:
        各节点收到的配置、选中的局部配置以及合并后的解

    Raises:
        TreeMismatchError: collected 不是在该树上计算的
        NoSolutionError: 某节点的扩展集为空
    """
    if collected.root != tree.root or set(collected.collected) != set(tree.nodes):
        raise TreeMismatchError("collect result was computed on a different tree", node=collected.root)

    received: dict[int, Configuration] = {tree.root: DIAMOND}
    selected: dict[int, Configuration] = {}

    def choose(node: int) -> tuple[int, Configuration]:
        options = family.extension_set(collected.collected[node], received[node])
        if not options:
            raise NoSolutionError(f"node {node} cannot extend {received[node]!r}", node=node)
        return node, pick(options, picker)

    levels = depth_levels(tree)
    pool = ThreadPoolExecutor(max_workers=max_workers) if max_workers > 1 and len(tree) > 1 else None
    try:
        for level in levels:
            results = pool.map(choose, level) if pool is not None else map(choose, level)
            for node, eta in results:
                selected[node] = eta
                for child in tree.children(node):
                    received[child] = eta.restrict(tree.separator(child))
                logger.debug("node %d selected %r", node, eta)
    finally:
        if pool is not None:
            pool.shutdown()

    solution = merge([selected[node] for node in tree.nodes])
    return ExtendResult(received=received, selected=selected, solution=solution)


@dataclass
class _Enumeration:
    """ExtendAll 的共享状态：上限与是否被截断"""
    cap: int
    complete: bool = True

    def overflow(self, results: list[Configuration]) -> bool:
        """结果超过上限时截断到上限并标记为不完整

        恰好达到上限不算截断，只有出现第 cap+1 个候选时才停止。
        """
        if len(results) > self.cap:
            del results[self.cap:]
            self.complete = False
            return True
        return False


def extend_all(
    tree: CoveringJoinTree,
    collected: CollectResult,
    family: ExtensionFamily,
    cap: int = DEFAULT_CAP,
) -> tuple[list[Configuration], bool]:
    """ExtendAll：集合值的自根向叶扩展

    节点 i 对收到的每个 ν 枚举 E_{ψ'_i}(ν) 的全部元素，与各子树结果做笛卡尔积
    后合并。结果按 (节点, ν) 缓存。

    Returns:
        (合并后的配置列表, 是否在上限内枚举完毕)
    """
    if collected.root != tree.root:
        raise TreeMismatchError("collect result was computed on a different tree", node=collected.root)
    state = _Enumeration(cap=cap)
    memo: dict[tuple[int, Configuration], list[Configuration]] = {}

    def below(node: int, nu: Configuration) -> list[Configuration]:
        key = (node, nu)
        if key in memo:
            return memo[key]
        results: list[Configuration] = []
        children = tree.children(node)
        stopped = False
        for eta in family.extension_set(collected.collected[node], nu):
            parts = [below(child, eta.restrict(tree.separator(child))) for child in children]
            for combo in itertools.product(*parts):
                try:
                    results.append(merge([eta, *combo]))
                except IncompatibleConfigurationError:
                    continue
                if state.overflow(results):
                    stopped = True
                    break
            if stopped:
                break
        memo[key] = results
        return results

    configs = below(tree.root, DIAMOND)
    if not state.complete:
        logger.warning("solution enumeration stopped at cap %d", cap)
    return configs, state.complete


# =============================================================================
# 求解入口
# =============================================================================

def _prepare(
    factors: Sequence[Valuation],
    algebra: ValuationAlgebra,
    heuristic: Heuristic | str,
    order: Sequence[str] | None,
    max_workers: int,
) -> tuple[CoveringJoinTree, CollectResult, Any]:
    tree = build_covering_join_tree(factors, order=order, heuristic=heuristic)
    collected = collect(tree, factors, algebra, max_workers=max_workers)
    optimum = algebra.evaluate(algebra.project(collected.root_marginal, BOTTOM), DIAMOND)
    logger.info("collect done on %d node(s), optimum %s", len(tree), optimum)
    return tree, collected, optimum


def solve(
    factors: Sequence[Valuation],
    algebra: ValuationAlgebra,
    heuristic: Heuristic | str = Heuristic.MIN_FILL,
    order: Sequence[str] | None = None,
    picker: Picker | str = Picker.LEXICOGRAPHIC,
    family: ExtensionFamily | None = None,
    max_workers: int = 1,
) -> SolveResult:
    """Collect + Extend：求一个解

    目标值在解上逐因子求值得到，并与根边缘投影到 ⊥ 的值核对。
    最优值为零元时（如不可满足的布尔系统）仍返回一个取优配置，
    但 satisfiable 为 False。

    Raises:
        NoSolutionError: Extend 中某节点扩展集为空
        SolutionError: 解的取值与最优值不一致（扩展集族不满足分段可扩展性）
    """
    factors = list(factors)
    if not factors:
        return SolveResult(assignment=DIAMOND, objective=algebra.unit, satisfiable=True, tree_nodes=0)
    family = family or extension_family(algebra)
    tree, collected, optimum = _prepare(factors, algebra, heuristic, order, max_workers)
    result = extend(tree, collected, family, picker=picker, max_workers=max_workers)

    objective = algebra.evaluate_product(factors, result.solution)
    if not algebra.same_value(objective, optimum):
        raise SolutionError(
            f"merged configuration scores {objective}, optimum is {optimum}",
            details={"assignment": result.solution.to_dict()},
        )
    return SolveResult(
        assignment=result.solution,
        objective=objective,
        satisfiable=not algebra.is_null(optimum),
        tree_nodes=len(tree),
        extend=result,
    )


def solve_all(
    factors: Sequence[Valuation],
    algebra: ValuationAlgebra,
    heuristic: Heuristic | str = Heuristic.MIN_FILL,
    order: Sequence[str] | None = None,
    family: ExtensionFamily | None = None,
    cap: int = DEFAULT_CAP,
    max_workers: int = 1,
) -> SolveAllResult:
    """Collect + ExtendAll：求全部解

    每个合并得到的配置都按取值重新验证，未取到最优值的被丢弃并计数。
    扩展集族完全分段可扩展时结果恰为全部解。
    """
    factors = list(factors)
    if not factors:
        return SolveAllResult(solutions=[DIAMOND], objective=algebra.unit, satisfiable=True)
    family = family or extension_family(algebra)
    tree, collected, optimum = _prepare(factors, algebra, heuristic, order, max_workers)
    configs, complete = extend_all(tree, collected, family, cap=cap)

    verified: set[Configuration] = set()
    rejected = 0
    for z in configs:
        if algebra.same_value(algebra.evaluate_product(factors, z), optimum):
            verified.add(z)
        else:
            rejected += 1
    if rejected:
        logger.warning("%d merged configuration(s) failed verification and were dropped", rejected)
    return SolveAllResult(
        solutions=sort_configurations(verified),
        objective=optimum,
        satisfiable=not algebra.is_null(optimum),
        complete=complete,
        rejected=rejected,
    )


# =============================================================================
# 分段可扩展性
# =============================================================================

def _extends(ext: set[Configuration], z: Configuration, domain: Domain) -> bool:
    return z.restrict(domain) in ext


def piecewise_witnesses(
    family: ExtensionFamily,
    phi1: Valuation,
    phi2: Valuation,
    t: Iterable[str],
    full: bool = False,
) -> list[dict[str, Any]]:
    """对固定的 φ1、φ2、t 穷举 x ∈ Γ_t 与 z ∈ Γ_{d1∨d2}，列出全部违反

    - pieces-to-product: z 是 x 到 φ1 与 φ2 的扩展，却不是到 φ1⊗φ2 的扩展
    - product-to-pieces（仅 full）: 反方向

    Raises:
        DomainError: 不满足 d1∧d2 ≤ t ≤ d1∨d2
    """
    algebra = family.algebra
    d1, d2 = phi1.label, phi2.label
    t = Domain(t)
    whole = d1 | d2
    if not (d1 & d2) <= t <= whole:
        raise DomainError(f"{t!r} is not between {d1 & d2!r} and {whole!r}", offending=t - whole)
    product = algebra.combine(phi1, phi2)

    witnesses: list[dict[str, Any]] = []
    for x in algebra.system.gamma(t):
        ext1 = set(family.extension_set(phi1, x.restrict(t & d1)))
        ext2 = set(family.extension_set(phi2, x.restrict(t & d2)))
        joint = set(family.extension_set(product, x))
        for y in algebra.system.gamma(whole - t):
            z = merge([x, y])
            pieces = _extends(ext1, z, d1) and _extends(ext2, z, d2)
            combined = z in joint
            if pieces and not combined:
                direction = "pieces-to-product"
            elif full and combined and not pieces:
                direction = "product-to-pieces"
            else:
                continue
            witnesses.append({
                "direction": direction,
                "phi1": algebra.describe(phi1),
                "phi2": algebra.describe(phi2),
                "t": t.to_list(),
                "x": x.to_dict(),
                "z": z.to_dict(),
            })
    return witnesses


def _check_pairs(
    name: str,
    family: ExtensionFamily,
    sampler: ValuationSampler,
    trials: int,
    seed: int,
    full: bool,
    progress: bool,
) -> PropertyReport:
    rng = np.random.default_rng(seed)
    report = PropertyReport(name=name, trials=trials)
    for _ in tqdm(range(trials), desc=f"{name}[{family.algebra.name}]", disable=not progress):
        phi1, phi2 = sampler(rng), sampler(rng)
        t = sampler.between(rng, phi1.label & phi2.label, phi1.label | phi2.label)
        try:
            witnesses = piecewise_witnesses(family, phi1, phi2, t, full=full)
        except LocalCompError as exc:
            report.record(False, {"error": exc.to_dict()})
            continue
        report.record(not witnesses, witnesses[0] if witnesses else None)
    if not report.ok:
        logger.warning("%s fails for %s in %d trial(s)", name, family.algebra.name, report.failures)
    return report


def check_piecewise_extensible(
    family: ExtensionFamily,
    sampler: ValuationSampler,
    trials: int = 500,
    seed: int = 0,
    progress: bool = False,
) -> PropertyReport:
    """随机检查分段可扩展性（单向）"""
    return _check_pairs("piecewise-extensible", family, sampler, trials, seed, False, progress)


def check_fully_piecewise_extensible(
    family: ExtensionFamily,
    sampler: ValuationSampler,
    trials: int = 500,
    seed: int = 0,
    progress: bool = False,
) -> PropertyReport:
    """随机检查完全分段可扩展性（双向）"""
    return _check_pairs("fully-piecewise-extensible", family, sampler, trials, seed, True, progress)


def overlap_domains(domains: Sequence[Domain]) -> list[Domain]:
    """r_i = d_i ∧ (∨_{j≠i} d_j)"""
    return [
        d & Domain.join_all(other for j, other in enumerate(domains) if j != i)
        for i, d in enumerate(domains)
    ]


def check_nary_lemmas(
    family: ExtensionFamily,
    sampler: ValuationSampler,
    trials: int = 200,
    seed: int = 0,
    max_factors: int = 4,
    progress: bool = False,
) -> SuiteReport:
    """穷举验证分段扩展与解扩展的多元形式

    - piecewise-extension: ∨d_i ≥ t ≥ ∨r_i，x ∈ Γ_t，z 是 x 到每个 φ_i 的扩展
      ⇒ z 是 x 到 ∏φ_i 的扩展
    - solution-extension: d_ρ ≥ ∨r_i，x ∈ c_{φ↓d_ρ}，y_i 是 x 到 φ_i 的扩展
      ⇒ x 与各 y_i 的合并属于 c_φ，其中 φ = φ_ρ ⊗ ∏φ_i
    """
    algebra = family.algebra
    rng = np.random.default_rng(seed)
    report = SuiteReport(name="nary-lemmas", instance=algebra.name)
    piecewise = report.add("piecewise-extension", trials)
    solution = report.add("solution-extension", trials)

    for _ in tqdm(range(trials), desc=f"nary[{algebra.name}]", disable=not progress):
        m = int(rng.integers(2, max_factors + 1))
        phis = [sampler(rng) for _ in range(m)]
        domains = [phi.label for phi in phis]
        shared = Domain.join_all(overlap_domains(domains))
        whole = Domain.join_all(domains)
        described = [algebra.describe(phi) for phi in phis]

        try:
            t = sampler.between(rng, shared, whole)
            product = algebra.combine_all(phis)
            for x in algebra.system.gamma(t):
                exts = [set(family.extension_set(phi, x.restrict(t & d))) for phi, d in zip(phis, domains)]
                joint = set(family.extension_set(product, x))
                for y in algebra.system.gamma(whole - t):
                    z = merge([x, y])
                    if all(_extends(e, z, d) for e, d in zip(exts, domains)):
                        piecewise.record(z in joint, {
                            "factors": described, "t": t.to_list(), "x": x.to_dict(), "z": z.to_dict(),
                        })

            rho = sampler(rng, sampler.between(rng, shared, whole))
            phi = algebra.combine(rho, product)
            c_phi = set(family.solutions(phi))
            d_rho = rho.label
            for x in family.solutions(algebra.project(phi, d_rho)):
                options = [family.extension_set(p, x.restrict(d_rho & d)) for p, d in zip(phis, domains)]
                for combo in itertools.islice(itertools.product(*options), _MAX_MERGERS):
                    try:
                        z = merge([x, *combo])
                    except IncompatibleConfigurationError:
                        continue
                    solution.record(z in c_phi, {
                        "rho": algebra.describe(rho), "factors": described, "x": x.to_dict(), "z": z.to_dict(),
                    })
        except LocalCompError as exc:
            solution.record(False, {"factors": described, "error": exc.to_dict()})

    if not report.ok:
        logger.warning("n-ary lemmas failing for %s: %s", algebra.name, ", ".join(report.failed()))
    return report


__all__ = [
    "DEFAULT_CAP",
    "pick",
    "depth_levels",
    "extend",
    "extend_all",
    "solve",
    "solve_all",
    "piecewise_witnesses",
    "check_piecewise_extensible",
    "check_fully_piecewise_extensible",
    "overlap_domains",
    "check_nary_lemmas",
]
