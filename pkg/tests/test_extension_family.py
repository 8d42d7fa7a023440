"""
取优扩展集族测试
"""

import pytest

from app.configuration import VariableSystem
from app.exceptions import DomainError
from app.instances import ArgmaxExtensionFamily, check_family, create_algebra, default_sampler, extension_family
from app.models import DIAMOND, Configuration, SemiringName


@pytest.fixture
def phi(max_plus, max_plus_factors):
    return max_plus.combine(*max_plus_factors)


def test_extension_set_fixture(max_plus, phi):
    family = extension_family(max_plus)
    assert family.extension_set(phi, Configuration.of(u=0)) == [Configuration.of(u=0, v=1)]
    assert family.free_extensions(phi, Configuration.of(u=0)) == [Configuration.of(v=1)]
    assert family.solutions(phi) == [Configuration.of(u=1, v=1)]


def test_full_scope_is_singleton(max_plus, phi):
    family = extension_family(max_plus)
    z = Configuration.of(u=1, v=0)
    assert family.extension_set(phi, z) == [z]


def test_ties_are_all_returned(counterexample):
    algebra, psi = counterexample
    family = extension_family(algebra)
    assert family.solutions(psi) == [Configuration.of(x=0, y=0), Configuration.of(x=1, y=1)]
    assert family.extension_set(psi, Configuration.of(x=1)) == [Configuration.of(x=1, y=1)]


def test_scope_outside_label(max_plus, max_plus_factors):
    family = extension_family(max_plus)
    with pytest.raises(DomainError):
        family.extension_set(max_plus_factors[0], Configuration.of(v=0))


def test_extends_restricts_both_sides(max_plus, phi):
    family = extension_family(max_plus)
    x = Configuration.of(u=0, w=1)
    assert family.extends(phi, x, Configuration.of(u=0, v=1, w=1))
    assert not family.extends(phi, x, Configuration.of(u=0, v=0, w=1))
    assert not family.extends(phi, x, Configuration.of(u=0))


def test_identity_solutions(max_plus):
    family = extension_family(max_plus)
    assert family.solutions(max_plus.identity()) == [DIAMOND]


def test_sparse_unsupported_x_extends_everywhere():
    algebra = create_algebra("sparse-max-times", VariableSystem.from_sizes({"a": 2, "b": 2}))
    psi = algebra.from_entries(["a", "b"], {Configuration.of(a=0, b=1): 2.0})
    family = extension_family(algebra)
    assert family.extension_set(psi, Configuration.of(a=0)) == [Configuration.of(a=0, b=1)]
    assert family.extension_set(psi, Configuration.of(a=1)) == [
        Configuration.of(a=1, b=0),
        Configuration.of(a=1, b=1),
    ]


@pytest.mark.parametrize("name", [s.value for s in SemiringName])
def test_family_conditions(rng, name):
    system = VariableSystem.random(rng, 4, 3)
    algebra = create_algebra(name, system)
    family = ArgmaxExtensionFamily(algebra)
    report = check_family(family, default_sampler(algebra), trials=200, seed=1)
    assert report.ok, report.to_dict()
    assert report["full-scope"].checked == 200
