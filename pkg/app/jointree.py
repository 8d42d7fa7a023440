"""
覆盖连接树

标签树、连接树（running intersection）验证，以及用桶消元为给定因子分解
构造覆盖连接树。消元顺序可给定，或由最小度/最小填充启发式在交互图上求出。
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable, Sequence

import networkx as nx

from app.algebra import Valuation
from app.exceptions import EliminationOrderError, QueryDomainError, StructureError
from app.models import BOTTOM, Domain, Heuristic

logger = logging.getLogger(__name__)

Factor = Valuation | Domain


def _label_of(factor: Factor | Iterable[str]) -> Domain:
    if isinstance(factor, Valuation):
        return factor.label
    return Domain(factor)


# =============================================================================
# 覆盖连接树
# =============================================================================

@dataclass
class CoveringJoinTree:
    """有根标签树

    Attributes:
        labels: 节点 -> 标签 λ(i)
        parents: 节点 -> 父节点（根为 None）
        root: 根节点
        assignment: 因子下标 -> 所分配的节点
    """
    labels: dict[int, Domain]
    parents: dict[int, int | None]
    root: int
    assignment: dict[int, int] = field(default_factory=dict)

    @classmethod
    def from_edges(
        cls,
        labels: dict[int, Iterable[str]],
        edges: Iterable[tuple[int, int]],
        root: int,
        assignment: dict[int, int] | None = None,
    ) -> "CoveringJoinTree":
        """由无向边构造并定向到 root

        Raises:
            StructureError: 边不构成覆盖全部节点的树
        """
        graph = nx.Graph()
        graph.add_nodes_from(labels)
        graph.add_edges_from(edges)
        if not nx.is_tree(graph):
            raise StructureError("edges do not form a tree over the labelled nodes")
        return cls(
            labels={i: Domain(d) for i, d in labels.items()},
            parents=_orient(graph, root),
            root=root,
            assignment=dict(assignment or {}),
        )

    @property
    def nodes(self) -> list[int]:
        return sorted(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def children(self, node: int) -> list[int]:
        return sorted(i for i, p in self.parents.items() if p == node)

    def separator(self, node: int) -> Domain:
        """s_i = λ(i) ∧ λ(p(i))，根为 ⊥"""
        parent = self.parents[node]
        if parent is None:
            return BOTTOM
        return self.labels[node] & self.labels[parent]

    def assigned(self, node: int) -> list[int]:
        """a⁻¹(i)：分配到该节点的因子下标"""
        return sorted(k for k, n in self.assignment.items() if n == node)

    def graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.labels)
        graph.add_edges_from((i, p) for i, p in self.parents.items() if p is not None)
        return graph

    def post_order(self) -> list[int]:
        """子节点先于父节点，兄弟按节点序"""
        order: list[int] = []

        def visit(node: int) -> None:
            for child in self.children(node):
                visit(child)
            order.append(node)

        visit(self.root)
        return order

    def pre_order(self) -> list[int]:
        return list(reversed(self.post_order()))

    def subtree(self, node: int) -> list[int]:
        """T_i：以 node 为根的子树"""
        result = [node]
        for child in self.children(node):
            result.extend(self.subtree(child))
        return sorted(result)

    def heights(self) -> dict[int, int]:
        """叶子为 0，父节点为子节点最大高度加 1"""
        heights: dict[int, int] = {}
        for node in self.post_order():
            heights[node] = 1 + max((heights[c] for c in self.children(node)), default=-1)
        return heights

    def depths(self) -> dict[int, int]:
        depths = {self.root: 0}
        for node in self.pre_order():
            for child in self.children(node):
                depths[child] = depths[node] + 1
        return depths

    def to_dict(self) -> dict[str, Any]:
        return {
            "root": self.root,
            "nodes": [
                {
                    "id": i,
                    "label": self.labels[i].to_list(),
                    "parent": self.parents[i],
                    "factors": self.assigned(i),
                }
                for i in self.nodes
            ],
        }


def _orient(graph: nx.Graph, root: int) -> dict[int, int | None]:
    parents: dict[int, int | None] = {root: None}
    queue = deque([root])
    while queue:
        node = queue.popleft()
        for nb in sorted(graph.neighbors(node)):
            if nb not in parents:
                parents[nb] = node
                queue.append(nb)
    return parents


# =============================================================================
# 验证
# =============================================================================

def verify_running_intersection(tree: CoveringJoinTree) -> tuple[bool, tuple[int, int, int] | None]:
    """检查 running intersection：i–j 路径上每个 k 都有 λ(i)∧λ(j) ≤ λ(k)

    Returns:
        (是否成立, 第一个违反三元组 (i, j, k))

    Raises:
        StructureError: 父链接不构成树（不连通或含环）
    """
    graph = tree.graph()
    if not nx.is_tree(graph):
        raise StructureError("parent links do not form a tree")
    for i, j in combinations(tree.nodes, 2):
        shared = tree.labels[i] & tree.labels[j]
        if not shared:
            continue
        for k in nx.shortest_path(graph, i, j)[1:-1]:
            if not shared <= tree.labels[k]:
                return False, (i, j, k)
    return True, None


def verify_covering(tree: CoveringJoinTree, factors: Sequence[Factor]) -> tuple[bool, int | None]:
    """检查覆盖条件：每个因子都已分配且 d(φ_k) ≤ λ(a(φ_k))

    Returns:
        (是否成立, 第一个违反的因子下标)
    """
    for k, factor in enumerate(factors):
        node = tree.assignment.get(k)
        if node not in tree.labels or not _label_of(factor) <= tree.labels[node]:
            return False, k
    return True, None


# =============================================================================
# 消元顺序
# =============================================================================

def interaction_graph(domains: Iterable[Domain], forced: Domain = BOTTOM) -> nx.Graph:
    """交互（原始）图：同一因子中的变量两两相连；forced 构成团"""
    graph = nx.Graph()
    for d in list(domains) + [forced]:
        ordered = d.ordered
        graph.add_nodes_from(ordered)
        graph.add_edges_from(combinations(ordered, 2))
    return graph


def _fill_in(graph: nx.Graph, node: str) -> int:
    return sum(1 for a, b in combinations(graph.neighbors(node), 2) if not graph.has_edge(a, b))


def elimination_order(
    domains: Iterable[Factor],
    heuristic: Heuristic | str = Heuristic.MIN_FILL,
    forced: Iterable[str] = (),
) -> list[str]:
    """贪心消元顺序

    Args:
        domains: 因子或其标签
        heuristic: min-degree 或 min-fill（平局按变量规范顺序）
        forced: 需要落在同一团中的变量

    Returns:
        覆盖全部变量的消元顺序
    """
    heuristic = Heuristic(heuristic)
    if heuristic == Heuristic.GIVEN:
        raise EliminationOrderError("heuristic 'given' needs an explicit order")
    graph = interaction_graph([_label_of(d) for d in domains], Domain(forced))
    order: list[str] = []
    while graph.number_of_nodes():
        if heuristic == Heuristic.MIN_DEGREE:
            node = min(graph.nodes, key=lambda v: (graph.degree(v), v))
        else:
            node = min(graph.nodes, key=lambda v: (_fill_in(graph, v), v))
        graph.add_edges_from(combinations(sorted(graph.neighbors(node)), 2))
        graph.remove_node(node)
        order.append(node)
    logger.debug("%s elimination order: %s", heuristic.value, order)
    return order


def _validate_order(order: Sequence[str], variables: Domain) -> list[str]:
    seen: set[str] = set()
    duplicated = {v for v in order if v in seen or seen.add(v)}
    missing = variables - set(order)
    if missing or duplicated:
        raise EliminationOrderError(
            "elimination order must list every variable exactly once",
            missing=missing, duplicated=duplicated,
        )
    return [v for v in order if v in variables]


# =============================================================================
# 构造
# =============================================================================

def build_covering_join_tree(
    factors: Sequence[Factor],
    order: Sequence[str] | None = None,
    heuristic: Heuristic | str = Heuristic.MIN_FILL,
    forced: Iterable[str] = (),
) -> CoveringJoinTree:
    """桶消元构造覆盖连接树

    按消元顺序为每个变量建一个桶：因子进入其最早消元变量的桶，
    桶标签为其中因子与收到消息的标签之并，消去该变量后的消息送往
    消息域中最早消元变量的桶。不同连通分量的根以空分隔集挂到最后一个根下，
    空标签因子分配给根。

    Args:
        factors: 因子（或其标签）列表，非空
        order: 消元顺序；给定时忽略 heuristic
        heuristic: 未给定顺序时使用的启发式
        forced: 需要被某个节点标签包含的变量集（如查询域）

    Returns:
        满足 running intersection 与覆盖条件的树

    Raises:
        EliminationOrderError: 顺序缺少变量或重复
    """
    if not factors:
        raise EliminationOrderError("at least one factor is needed to build a join tree")
    domains = [_label_of(f) for f in factors]
    forced = Domain(forced)
    variables = Domain.join_all(domains) | forced

    if order is None:
        order = elimination_order(domains, heuristic, forced)
    else:
        order = _validate_order(order, variables)

    if not order:
        return CoveringJoinTree(
            labels={0: BOTTOM}, parents={0: None}, root=0,
            assignment={k: 0 for k in range(len(factors))},
        )

    position = {v: i for i, v in enumerate(order)}
    labels: dict[int, Domain] = {i: BOTTOM for i in range(len(order))}
    assignment: dict[int, int] = {}
    empty: list[int] = []

    def first(domain: Domain) -> int:
        return min(position[v] for v in domain)

    for k, d in enumerate(domains):
        if not d:
            empty.append(k)
            continue
        bucket = first(d)
        assignment[k] = bucket
        labels[bucket] = labels[bucket] | d
    if forced:
        bucket = first(forced)
        labels[bucket] = labels[bucket] | forced

    parents: dict[int, int | None] = {}
    for i, variable in enumerate(order):
        message = labels[i] - {variable}
        if message:
            target = first(message)
            labels[target] = labels[target] | message
            parents[i] = target
        else:
            parents[i] = None

    roots = [i for i, p in parents.items() if p is None]
    root = roots[-1]
    for r in roots[:-1]:
        parents[r] = root
    for k in empty:
        assignment[k] = root

    tree = CoveringJoinTree(labels=labels, parents=parents, root=root, assignment=assignment)
    logger.debug("join tree with %d node(s), root %d", len(tree), root)
    return tree


def root_towards(tree: CoveringJoinTree, query: Iterable[str]) -> CoveringJoinTree:
    """重定根到一个标签包含 query 的节点

    Raises:
        QueryDomainError: 没有节点覆盖 query（需要把 query 强制进同一团重建树）
    """
    query = Domain(query)
    if query <= tree.labels[tree.root]:
        return tree
    candidates = [i for i in tree.nodes if query <= tree.labels[i]]
    if not candidates:
        raise QueryDomainError(
            f"no node covers {query!r}; rebuild the tree with the query forced into one clique",
            query=query,
        )
    root = candidates[0]
    return CoveringJoinTree(
        labels=dict(tree.labels),
        parents=_orient(tree.graph(), root),
        root=root,
        assignment=dict(tree.assignment),
    )


__all__ = [
    "CoveringJoinTree",
    "verify_running_intersection",
    "verify_covering",
    "interaction_graph",
    "elimination_order",
    "build_covering_join_tree",
    "root_towards",
]
