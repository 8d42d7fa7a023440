"""
具体代数实例测试
"""

import numpy as np
import pytest

from app.algebra import IDENTITY
from app.configuration import VariableSystem
from app.exceptions import DomainError, InstanceMismatchError, InvalidInputError
from app.instances import create_algebra, default_sampler, random_problem
from app.instances.dense import DenseTableValuation, SemiringAlgebra
from app.instances.sparse import SparsePotential, SparsePotentialAlgebra
from app.models import BOTTOM, DIAMOND, Configuration, Domain, SemiringName


class TestFactory:
    @pytest.mark.parametrize("name", [s.value for s in SemiringName])
    def test_create(self, uv_system, name):
        algebra = create_algebra(name, uv_system)
        assert algebra.name == name
        assert algebra.system is uv_system

    def test_sparse_class(self, uv_system):
        assert isinstance(create_algebra("sparse-max-times", uv_system), SparsePotentialAlgebra)
        assert isinstance(create_algebra("max-times", uv_system), SemiringAlgebra)

    def test_unknown(self, uv_system):
        with pytest.raises(InvalidInputError) as exc:
            create_algebra("tropical", uv_system)
        assert exc.value.field == "semiring"

    def test_random_problem_seeded(self):
        _, a = random_problem(np.random.default_rng(5), "max-plus")
        _, b = random_problem(np.random.default_rng(5), "max-plus")
        assert [f.label for f in a] == [f.label for f in b]
        assert all(f.label for f in a)


class TestMaxPlus:
    def test_combine_fixture(self, max_plus, max_plus_factors):
        phi = max_plus.combine(*max_plus_factors)
        assert phi.label == Domain.of("u", "v")
        assert max_plus.values(phi) == [3, 6, 5, 8]

    def test_project_fixture(self, max_plus, max_plus_factors):
        phi = max_plus.combine(*max_plus_factors)
        assert max_plus.values(max_plus.project(phi, ["u"])) == [6, 8]
        assert max_plus.values(max_plus.project(phi, ["v"])) == [5, 8]
        assert max_plus.values(max_plus.project(phi, BOTTOM)) == [8]

    def test_project_outside_label(self, max_plus, max_plus_factors):
        with pytest.raises(DomainError) as exc:
            max_plus.project(max_plus_factors[0], ["v"])
        assert exc.value.offending == ["v"]

    def test_project_to_own_label_is_same(self, max_plus, max_plus_factors):
        phi = max_plus_factors[1]
        assert max_plus.project(phi, phi.label) is phi

    def test_evaluate(self, max_plus, max_plus_factors):
        phi = max_plus_factors[1]
        assert max_plus.evaluate(phi, Configuration.of(u=0, v=1)) == 4
        with pytest.raises(DomainError):
            max_plus.evaluate(phi, Configuration.of(u=0))

    def test_identity(self, max_plus, max_plus_factors):
        phi = max_plus_factors[1]
        e = max_plus.identity()
        assert e.label == BOTTOM
        assert max_plus.equal(max_plus.combine(e, phi), phi)
        assert max_plus.combine(phi, IDENTITY) is phi

    def test_neutral_extends_label(self, max_plus, max_plus_factors):
        phi = max_plus.combine(max_plus_factors[0], max_plus.neutral(["u", "v"]))
        assert phi.label == Domain.of("u", "v")
        assert max_plus.values(phi) == [2, 2, 5, 5]

    def test_table_is_read_only(self, max_plus, max_plus_factors):
        phi = max_plus_factors[0]
        assert isinstance(phi, DenseTableValuation)
        with pytest.raises(ValueError):
            phi.table[0] = 9

    def test_wrong_length(self, max_plus):
        with pytest.raises(InvalidInputError):
            max_plus.tabulate(["u", "v"], [1, 2, 3])

    def test_non_numeric(self, max_plus):
        with pytest.raises(InvalidInputError):
            max_plus.tabulate(["u"], ["a", "b"])

    def test_negative_infinity_allowed(self, max_plus):
        phi = max_plus.tabulate(["u"], [float("-inf"), 1])
        assert max_plus.values(phi) == [float("-inf"), 1]
        assert max_plus.is_null(max_plus.evaluate(phi, Configuration.of(u=0)))


class TestOtherSemirings:
    def test_boolean_combination_is_conjunction(self, uv_system):
        algebra = create_algebra("boolean", uv_system)
        phi = algebra.combine(algebra.tabulate(["u"], [1, 0]), algebra.tabulate(["u", "v"], [1, 0, 1, 1]))
        assert algebra.values(phi) == [1, 0, 0, 0]
        assert algebra.values(algebra.project(phi, BOTTOM)) == [1]

    def test_boolean_range(self, uv_system):
        algebra = create_algebra("boolean", uv_system)
        with pytest.raises(InvalidInputError):
            algebra.tabulate(["u"], [0, 2])

    def test_min_plus(self, uv_system):
        algebra = create_algebra("min-plus", uv_system)
        phi = algebra.combine(algebra.tabulate(["u"], [3, 1]), algebra.tabulate(["u"], [0, 5]))
        assert algebra.values(phi) == [3, 6]
        assert algebra.values(algebra.project(phi, BOTTOM)) == [3]
        assert algebra.values(algebra.identity()) == [0]

    def test_max_times(self, uv_system):
        algebra = create_algebra("max-times", uv_system)
        phi = algebra.combine(algebra.tabulate(["u"], [0.5, 2]), algebra.tabulate(["u"], [2, 0.25]))
        assert algebra.values(phi) == [1, 0.5]
        with pytest.raises(InvalidInputError):
            algebra.tabulate(["u"], [-1.0, 1.0])

    def test_max_times_tolerance(self, uv_system):
        algebra = create_algebra("max-times", uv_system)
        a = algebra.tabulate(["u"], [1.0, 2.0])
        b = algebra.tabulate(["u"], [1.0 + 1e-12, 2.0])
        assert algebra.equal(a, b)
        assert not algebra.equal(a, b, tolerance=0.0)

    def test_instance_mismatch(self, uv_system):
        boolean = create_algebra("boolean", uv_system)
        max_plus = create_algebra("max-plus", uv_system)
        with pytest.raises(InstanceMismatchError):
            max_plus.combine(max_plus.tabulate(["u"], [0, 1]), boolean.tabulate(["u"], [0, 1]))

    @pytest.mark.parametrize("name", ["max-plus", "sparse-max-times"])
    def test_different_variable_systems(self, name):
        small = create_algebra(name, VariableSystem.from_sizes({"u": 2}))
        large = create_algebra(name, VariableSystem.from_sizes({"u": 3}))
        with pytest.raises(InstanceMismatchError, match="different variable system"):
            small.combine(small.tabulate(["u"], [1, 2]), large.tabulate(["u"], [1, 2, 3]))
        with pytest.raises(InstanceMismatchError):
            small.project(large.tabulate(["u"], [1, 2, 3]), [])
        relabelled = create_algebra(name, VariableSystem({"u": ["lo", "hi"]}))
        with pytest.raises(InstanceMismatchError):
            small.combine(small.tabulate(["u"], [1, 2]), relabelled.tabulate(["u"], [1, 2]))

    def test_equal_variable_systems_interoperate(self):
        first = create_algebra("max-plus", VariableSystem.from_sizes({"u": 2}))
        second = create_algebra("max-plus", VariableSystem.from_sizes({"u": 2}))
        phi = first.combine(first.tabulate(["u"], [1, 2]), second.tabulate(["u"], [3, 4]))
        assert first.values(phi) == [4, 6]


class TestSparse:
    @pytest.fixture
    def algebra(self):
        return create_algebra("sparse-max-times", VariableSystem.from_sizes({"a": 3, "b": 2}))

    def test_zeros_dropped(self, algebra):
        phi = algebra.tabulate(["a"], [0.0, 2.0, 0.0])
        assert isinstance(phi, SparsePotential)
        assert phi.support == [Configuration.of(a=1)]
        assert algebra.evaluate(phi, Configuration.of(a=0)) == 0.0

    def test_combine_and_project(self, algebra):
        phi = algebra.from_entries(["a", "b"], {
            Configuration.of(a=0, b=1): 0.5,
            Configuration.of(a=2, b=0): 2.0,
            Configuration.of(a=1, b=1): 1.5,
        })
        psi = algebra.tabulate(["b"], [1.0, 2.0])
        product = algebra.combine(phi, psi)
        assert algebra.values(product) == [0, 1, 0, 3, 2, 0]
        assert algebra.values(algebra.project(product, ["b"])) == [2, 3]
        assert algebra.values(algebra.project(product, BOTTOM)) == [3]

    def test_identity_and_neutral(self, algebra):
        phi = algebra.tabulate(["a"], [1.0, 0.0, 3.0])
        assert algebra.equal(algebra.combine(algebra.identity(), phi), phi)
        assert algebra.values(algebra.neutral(["b"])) == [1, 1]
        assert algebra.identity().entries == {DIAMOND: 1.0}

    def test_negative_rejected(self, algebra):
        with pytest.raises(InvalidInputError):
            algebra.tabulate(["b"], [-1.0, 1.0])

    def test_entry_outside_frames(self, algebra):
        with pytest.raises(InvalidInputError):
            algebra.from_entries(["a"], {Configuration.of(a=7): 1.0})

    def test_sparse_matches_dense(self, rng):
        system = VariableSystem.from_sizes({"a": 2, "b": 3, "c": 2})
        sparse = create_algebra("sparse-max-times", system)
        dense = create_algebra("max-times", system)
        sampler = default_sampler(dense, positive=False)
        for _ in range(50):
            phi, psi = sampler(rng), sampler(rng)
            s_phi = sparse.tabulate(phi.label, dense.values(phi))
            s_psi = sparse.tabulate(psi.label, dense.values(psi))
            combined = dense.combine(phi, psi)
            assert sparse.values(sparse.combine(s_phi, s_psi)) == pytest.approx(dense.values(combined))
            target = Domain(combined.label.ordered[:1])
            assert sparse.values(sparse.project(sparse.combine(s_phi, s_psi), target)) == pytest.approx(
                dense.values(dense.project(combined, target))
            )
