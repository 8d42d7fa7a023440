"""
覆盖连接树测试
"""

import numpy as np
import pytest

from app.exceptions import EliminationOrderError, QueryDomainError, StructureError
from app.instances import random_problem
from app.jointree import (
    CoveringJoinTree,
    build_covering_join_tree,
    elimination_order,
    interaction_graph,
    root_towards,
    verify_covering,
    verify_running_intersection,
)
from app.models import BOTTOM, Domain, Heuristic


def labels(*scopes):
    return [Domain(s) for s in scopes]


# =============================================================================
# 验证
# =============================================================================

class TestVerification:
    def test_running_intersection_witness(self):
        tree = CoveringJoinTree.from_edges(
            {1: ["x", "y"], 2: ["y", "z"], 3: ["z", "x"]}, [(1, 2), (2, 3)], root=1,
        )
        assert verify_running_intersection(tree) == (False, (1, 3, 2))

    def test_running_intersection_holds(self):
        tree = CoveringJoinTree.from_edges(
            {0: ["x", "y"], 1: ["y", "z"], 2: ["y"]}, [(0, 2), (1, 2)], root=2,
        )
        assert verify_running_intersection(tree) == (True, None)

    def test_not_a_tree(self):
        with pytest.raises(StructureError):
            CoveringJoinTree.from_edges({0: "a", 1: "b", 2: "c"}, [(0, 1)], root=0)
        tree = CoveringJoinTree(labels={0: Domain("a"), 1: Domain("b")}, parents={0: None, 1: None}, root=0)
        with pytest.raises(StructureError):
            verify_running_intersection(tree)

    def test_covering(self):
        tree = CoveringJoinTree.from_edges(
            {0: ["x", "y"], 1: ["y", "z"]}, [(0, 1)], root=1, assignment={0: 0, 1: 0},
        )
        assert verify_covering(tree, labels(["x"], ["y", "z"])) == (False, 1)
        tree.assignment[1] = 1
        assert verify_covering(tree, labels(["x"], ["y", "z"])) == (True, None)
        assert verify_covering(tree, labels(["x"], ["y", "z"], ["z"])) == (False, 2)


# =============================================================================
# 消元顺序
# =============================================================================

class TestEliminationOrder:
    def test_interaction_graph(self):
        graph = interaction_graph(labels(["a", "b"], ["b", "c"]), forced=Domain.of("a", "c"))
        assert sorted(graph.edges) == [("a", "b"), ("a", "c"), ("b", "c")]

    @pytest.mark.parametrize("heuristic", [Heuristic.MIN_DEGREE, Heuristic.MIN_FILL])
    def test_chain_ties_by_name(self, heuristic):
        assert elimination_order(labels(["a", "b"], ["b", "c"]), heuristic) == ["a", "b", "c"]

    def test_min_fill_prefers_simplicial(self):
        domains = labels(["a", "b"], ["b", "c"], ["b", "d"], ["c", "d"])
        assert elimination_order(domains, Heuristic.MIN_FILL)[0] == "a"

    def test_given_needs_order(self):
        with pytest.raises(EliminationOrderError):
            elimination_order(labels(["a", "b"]), Heuristic.GIVEN)

    def test_explicit_order_validated(self):
        with pytest.raises(EliminationOrderError) as exc:
            build_covering_join_tree(labels(["x", "y"], ["y", "z"]), order=["x", "x", "y"])
        assert exc.value.missing == ["z"]
        assert exc.value.duplicated == ["x"]


# =============================================================================
# 构造
# =============================================================================

class TestBuild:
    def test_chain_with_given_order(self):
        tree = build_covering_join_tree(labels(["x", "y"], ["y", "z"]), order=["x", "z", "y"])
        assert len(tree) == 3
        assert tree.root == 2
        assert tree.labels == {0: Domain.of("x", "y"), 1: Domain.of("y", "z"), 2: Domain.of("y")}
        assert tree.separator(0) == Domain.of("y")
        assert tree.separator(2) == BOTTOM
        assert tree.assigned(0) == [0]
        assert tree.assigned(1) == [1]

    def test_empty_factor_list(self):
        with pytest.raises(EliminationOrderError):
            build_covering_join_tree([])

    def test_only_empty_labels(self):
        tree = build_covering_join_tree(labels([], []))
        assert tree.labels == {0: BOTTOM}
        assert tree.assigned(0) == [0, 1]

    def test_forest_attached_to_last_root(self):
        tree = build_covering_join_tree(labels("a", "b", []))
        assert tree.root == 1
        assert tree.parents[0] == 1
        assert tree.separator(0) == BOTTOM
        assert tree.assignment[2] == tree.root

    def test_forced_clique(self):
        factors = labels(["a", "b"], ["b", "c"])
        tree = build_covering_join_tree(factors, forced=["a", "c"])
        assert any(Domain.of("a", "c") <= d for d in tree.labels.values())
        assert verify_running_intersection(tree)[0]

    def test_orders(self):
        tree = build_covering_join_tree(labels(["x", "y"], ["y", "z"]), order=["x", "z", "y"])
        assert tree.post_order()[-1] == tree.root
        assert tree.pre_order()[0] == tree.root
        assert tree.heights() == {0: 0, 1: 0, 2: 1}
        assert tree.depths() == {2: 0, 0: 1, 1: 1}
        assert tree.subtree(2) == [0, 1, 2]
        assert tree.to_dict()["root"] == 2


class TestRootTowards:
    def test_reroot(self):
        tree = build_covering_join_tree(labels(["x", "y"], ["y", "z"]), order=["x", "z", "y"])
        rerooted = root_towards(tree, ["z"])
        assert rerooted.root == 1
        assert rerooted.parents == {1: None, 2: 1, 0: 2}
        assert verify_running_intersection(rerooted)[0]

    def test_root_already_covers(self):
        tree = build_covering_join_tree(labels(["x", "y"], ["y", "z"]), order=["x", "z", "y"])
        assert root_towards(tree, ["y"]) is tree

    def test_uncovered_query(self):
        tree = build_covering_join_tree(labels(["x", "y"], ["y", "z"]), order=["x", "z", "y"])
        with pytest.raises(QueryDomainError) as exc:
            root_towards(tree, ["x", "z"])
        assert exc.value.query == ["x", "z"]


@pytest.mark.parametrize("heuristic", [Heuristic.MIN_DEGREE, Heuristic.MIN_FILL])
def test_random_factorizations(heuristic):
    rng = np.random.default_rng(11)
    for _ in range(200):
        algebra, factors = random_problem(rng, "boolean", n_vars=6, n_factors=6)
        variables = Domain.join_all(f.label for f in factors)
        forced = Domain(v for v in variables.ordered if rng.random() < 0.3)
        tree = build_covering_join_tree(factors, heuristic=heuristic, forced=forced)
        assert verify_running_intersection(tree)[0]
        assert verify_covering(tree, factors)[0]
        assert Domain.join_all(tree.labels.values()) == variables
        assert any(forced <= d for d in tree.labels.values())
        order = elimination_order(factors, heuristic)
        same = build_covering_join_tree(factors, order=order)
        assert verify_running_intersection(same)[0]
