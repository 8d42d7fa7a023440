"""
配置系统测试
"""

import numpy as np
import pytest

from app.configuration import (
    SupportSystem,
    VariableSystem,
    check_merge_friendly,
    compatible,
    merge,
    random_subdomain,
)
from app.exceptions import DomainError, IncompatibleConfigurationError, InvalidInputError
from app.models import BOTTOM, DIAMOND, Configuration, Domain


class TestVariableSystem:
    def test_gamma_layout_last_variable_fastest(self):
        system = VariableSystem.from_sizes({"u": 2, "v": 3})
        keys = [z.key for z in system.gamma(Domain.of("u", "v"))]
        assert keys == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
        assert system.count(Domain.of("u", "v")) == 6

    def test_gamma_bottom(self):
        system = VariableSystem.from_sizes({"u": 2})
        assert list(system.gamma(BOTTOM)) == [DIAMOND]
        assert system.count(BOTTOM) == 1

    def test_empty_frame_rejected(self):
        with pytest.raises(InvalidInputError):
            VariableSystem({"u": []})

    def test_duplicate_frame_values_rejected(self):
        with pytest.raises(InvalidInputError):
            VariableSystem({"u": ["a", "a"]})

    def test_unknown_variable(self):
        system = VariableSystem.from_sizes({"u": 2})
        with pytest.raises(DomainError) as exc:
            system.shape(Domain.of("u", "w"))
        assert exc.value.offending == ["w"]

    def test_labels(self):
        system = VariableSystem({"start": ["home", "office"]})
        assert system.index_of("start", "office") == 1
        assert system.labelled(Configuration.of(start=0)) == {"start": "home"}
        with pytest.raises(InvalidInputError):
            system.index_of("start", "moon")

    def test_random_is_seeded(self):
        a = VariableSystem.random(np.random.default_rng(3), 4, 3)
        b = VariableSystem.random(np.random.default_rng(3), 4, 3)
        assert a.to_dict() == b.to_dict()
        assert a.variables == Domain.of("a", "b", "c", "d")


class TestMerge:
    def test_merge_compatible(self):
        z = merge([Configuration.of(u=1), Configuration.of(u=1, v=0), DIAMOND])
        assert z == Configuration.of(u=1, v=0)

    def test_merge_conflict_names_variable(self):
        with pytest.raises(IncompatibleConfigurationError) as exc:
            merge([Configuration.of(u=1, v=0), Configuration.of(v=1)])
        assert exc.value.variable == "v"

    def test_merge_empty(self):
        with pytest.raises(InvalidInputError):
            merge([])

    def test_compatible(self):
        assert compatible(Configuration.of(u=0), Configuration.of(v=1))
        assert not compatible(Configuration.of(u=0), Configuration.of(u=1))


class TestMergeFriendly:
    def test_variable_system_is_merge_friendly(self):
        system = VariableSystem.from_sizes({"a": 2, "b": 3, "c": 2})
        report = check_merge_friendly(system, exhaustive=True)
        assert report.ok
        assert report.checked > 0

    def test_support_system_violation(self):
        base = VariableSystem.from_sizes({"a": 2, "b": 2, "c": 2})
        support = [
            Configuration.of(a=0, b=0, c=0),
            Configuration.of(a=0, b=1, c=1),
            Configuration.of(a=1, b=1, c=0),
        ]
        system = SupportSystem(base, support)
        report = check_merge_friendly(system, exhaustive=True)
        assert not report.ok
        assert report.first_violation is not None

    def test_support_gamma_is_restriction(self):
        base = VariableSystem.from_sizes({"a": 2, "b": 2})
        system = SupportSystem(base, [Configuration.of(a=0, b=0), Configuration.of(a=1, b=1)])
        assert list(system.gamma(Domain.of("a"))) == [Configuration.of(a=0), Configuration.of(a=1)]
        assert list(system.gamma(BOTTOM)) == [DIAMOND]
        with pytest.raises(IncompatibleConfigurationError):
            system.merge([Configuration.of(a=0), Configuration.of(b=1)])

    def test_support_must_cover_top(self):
        base = VariableSystem.from_sizes({"a": 2, "b": 2})
        with pytest.raises(DomainError):
            SupportSystem(base, [Configuration.of(a=0)])


def test_random_subdomain_within(rng):
    domain = Domain.of("a", "b", "c")
    for _ in range(20):
        assert random_subdomain(rng, domain) <= domain
    assert random_subdomain(rng, BOTTOM) == BOTTOM
