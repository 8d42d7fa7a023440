"""
穷举参照与反例复现测试
"""

import pytest

from app.config import config
from app.configuration import VariableSystem
from app.exceptions import StateSpaceTooLargeError
from app.instances import ArgmaxExtensionFamily, create_algebra
from app.models import Configuration, Domain
from app.oracle import (
    brute_marginal,
    brute_optimum,
    brute_solutions,
    reproduce_counterexample,
    solution_projection_sides,
)


def test_brute_fixture(max_plus, max_plus_factors):
    assert max_plus.values(brute_marginal(max_plus_factors, ["u"], max_plus)) == [6, 8]
    assert brute_optimum(max_plus_factors, max_plus) == 8
    assert brute_solutions(max_plus_factors, max_plus) == [Configuration.of(u=1, v=1)]


def test_state_space_limit():
    system = VariableSystem.from_sizes({v: 10 for v in "abcd"})
    algebra = create_algebra("max-plus", system)
    factors = [algebra.neutral(["a", "b"]), algebra.neutral(["c", "d"])]
    with pytest.raises(StateSpaceTooLargeError) as exc:
        brute_optimum(factors, algebra, max_states=1000)
    assert exc.value.states == 10_000
    assert exc.value.limit == 1000


class TestCounterexample:
    def test_sides(self):
        report = reproduce_counterexample()
        pairs = [(0, 0), (1, 1)]
        assert [c.key for c in report.lhs] == pairs
        assert [c.key for c in report.c_y] == [(0,), (1,)]
        assert [c.key for c in report.w_x] == [(0,), (1,)]
        assert [c.key for c in report.rhs] == [(0, 0), (0, 1), (1, 0), (1, 1)]
        assert report.refuted
        assert report.to_dict()["refuted"] is True

    def test_render_is_stable(self):
        text = reproduce_counterexample().render()
        assert text == reproduce_counterexample().render()
        assert text.endswith("LHS != RHS: Theorem 8.1 REFUTED\n")
        assert "{(0,0), (1,1)}" in text
        assert "{(0,0), (0,1), (1,0), (1,1)}" in text

    def test_identity_holds_when_y_covers_x(self, counterexample):
        algebra, phi = counterexample
        report = solution_projection_sides(ArgmaxExtensionFamily(algebra), phi, ["x"], ["x", "y"])
        assert not report.refuted
        assert report.render().endswith("LHS == RHS: identity holds\n")

    def test_single_solution_not_refuted(self, max_plus, max_plus_factors):
        phi = max_plus.combine(*max_plus_factors)
        report = solution_projection_sides(ArgmaxExtensionFamily(max_plus), phi, ["u"], ["v"])
        assert set(report.lhs) == set(report.rhs) == {Configuration.of(u=1, v=1)}
        assert Domain.of("u", "v") == report.lhs[0].scope


def test_limit_from_configuration(monkeypatch, max_plus, max_plus_factors):
    monkeypatch.setattr(config.oracle, "max_states", 3)
    with pytest.raises(StateSpaceTooLargeError):
        brute_solutions(max_plus_factors, max_plus)
    assert brute_solutions(max_plus_factors, max_plus, max_states=4) == [Configuration.of(u=1, v=1)]
