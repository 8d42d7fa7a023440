"""
Collect 消息传递与边缘查询

自叶向根传递消息：节点在收到全部子节点消息后，把收集到的内容投影到
分隔集发给父节点。根处得到整个因子分解在根标签上的边缘。
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, Sequence

from app.algebra import Valuation, ValuationAlgebra
from app.exceptions import DomainError, TreeMismatchError
from app.jointree import (
    CoveringJoinTree,
    build_covering_join_tree,
    root_towards,
    verify_covering,
)
from app.models import Domain, Heuristic
from app.models.results import CollectResult

logger = logging.getLogger(__name__)


def _check_tree(tree: CoveringJoinTree, factors: Sequence[Valuation]) -> None:
    extra = sorted(k for k in tree.assignment if not 0 <= k < len(factors))
    if extra:
        raise TreeMismatchError(f"tree assigns unknown factor index {extra[0]}", factor=extra[0])
    ok, k = verify_covering(tree, factors)
    if not ok:
        raise TreeMismatchError(
            f"factor {k} over {factors[k].label!r} is not covered by its node",
            factor=k, node=tree.assignment.get(k),
        )


def height_levels(tree: CoveringJoinTree) -> list[list[int]]:
    """按高度分层（叶子在第 0 层），同层节点互不依赖"""
    heights = tree.heights()
    levels: list[list[int]] = [[] for _ in range(max(heights.values()) + 1)]
    for node in tree.nodes:
        levels[heights[node]].append(node)
    return levels


def collect(
    tree: CoveringJoinTree,
    factors: Sequence[Valuation],
    algebra: ValuationAlgebra,
    max_workers: int = 1,
) -> CollectResult:
    """Collect 算法

    ψ_i = e ⊗ 分配到 i 的因子；ψ'_i = ψ_i ⊗ 各子节点消息（按节点序），
    不足 λ(i) 时与中性赋值组合补齐；发给父节点的消息是 ψ'_i↓s_i。

    Args:
        tree: 覆盖连接树
        factors: 因子列表，下标与 tree.assignment 对应
        algebra: 因子所属代数
        max_workers: 同层节点的并发线程数，1 为顺序执行

    Returns:
        各节点初始内容、收集后内容以及每条边上的消息

    Raises:
        TreeMismatchError: 树的分配与因子不一致
    """
    _check_tree(tree, factors)

    initial = {
        node: algebra.combine_all([algebra.identity()] + [factors[k] for k in tree.assigned(node)])
        for node in tree.nodes
    }
    collected: dict[int, Valuation] = {}
    messages: dict[tuple[int, int], Valuation] = {}

    def absorb(node: int) -> tuple[int, Valuation, Valuation | None]:
        content = initial[node]
        for child in tree.children(node):
            content = algebra.combine(content, messages[(child, node)])
        label = tree.labels[node]
        if content.label != label:
            content = algebra.combine(content, algebra.neutral(label))
        parent = tree.parents[node]
        message = None if parent is None else algebra.project(content, tree.separator(node))
        return node, content, message

    levels = height_levels(tree)
    pool = ThreadPoolExecutor(max_workers=max_workers) if max_workers > 1 and len(tree) > 1 else None
    try:
        for level in levels:
            results = pool.map(absorb, level) if pool is not None else map(absorb, level)
            for node, content, message in results:
                collected[node] = content
                if message is not None:
                    messages[(node, tree.parents[node])] = message
                    logger.debug("message %d -> %d over %r", node, tree.parents[node], message.label)
    finally:
        if pool is not None:
            pool.shutdown()

    return CollectResult(initial=initial, collected=collected, messages=messages, root=tree.root)


def query_marginal(
    factors: Sequence[Valuation],
    query: Iterable[str],
    algebra: ValuationAlgebra,
    heuristic: Heuristic | str = Heuristic.MIN_FILL,
    order: Sequence[str] | None = None,
    max_workers: int = 1,
) -> Valuation:
    """求 (φ_1 ⊗ … ⊗ φ_n)↓X

    构造树时把 X 强制放进同一节点，以该节点为根执行 Collect，再投影到 X。

    Raises:
        DomainError: X 含有不在任何因子标签中的变量
    """
    query = Domain(query)
    variables = Domain.join_all(f.label for f in factors)
    if not query <= variables:
        raise DomainError(
            f"query {query!r} is not within the factor domains {variables!r}",
            offending=query - variables,
        )
    if not factors:
        return algebra.identity()
    tree = build_covering_join_tree(factors, order=order, heuristic=heuristic, forced=query)
    tree = root_towards(tree, query)
    result = collect(tree, factors, algebra, max_workers=max_workers)
    return algebra.project(result.root_marginal, query)


__all__ = ["collect", "height_levels", "query_marginal"]
