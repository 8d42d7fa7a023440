"""
问题文件解析测试
"""

import textwrap

import pytest
import yaml

from app.exceptions import ProblemParseError
from app.models import Configuration, Domain
from app.problem import load_problem, marginal_output, parse_problem, render


def parse(text: str):
    return parse_problem(textwrap.dedent(text))


class TestLoad:
    def test_max_plus(self, problems_dir):
        problem = load_problem(problems_dir / "max_plus.yaml")
        assert problem.algebra.name == "max-plus"
        assert [f.label for f in problem.factors] == [Domain.of("u"), Domain.of("u", "v")]
        assert problem.algebra.values(problem.factors[1]) == [1, 4, 0, 3]
        assert problem.path.endswith("max_plus.yaml")

    def test_row_major_file_order_is_transposed(self, problems_dir):
        problem = load_problem(problems_dir / "route.yaml")
        via_end = problem.factors[1]
        assert via_end.label.ordered == ("end", "via")
        assert problem.algebra.values(via_end) == [5, 1, 3, 2, 6, 3]
        z = Configuration.of(end=1, via=0)
        assert problem.algebra.evaluate(via_end, z) == 2

    def test_options(self, problems_dir):
        assert load_problem(problems_dir / "chain.yaml").options.order == ["x", "z", "y"]
        assert load_problem(problems_dir / "route.yaml").options.to_dict() == {"heuristic": "min-degree"}

    def test_sparse_entries(self, problems_dir):
        problem = load_problem(problems_dir / "sparse_map.yaml")
        phi = problem.factors[0]
        assert len(phi.entries) == 3
        assert problem.algebra.evaluate(phi, Configuration.of(a=2, b=0)) == 2.0
        assert problem.algebra.evaluate(phi, Configuration.of(a=0, b=0)) == 0.0

    def test_dense_entries_default_to_null(self):
        problem = parse("""\
            semiring: max-plus
            variables:
              - {name: u, frame: [lo, hi]}
            factors:
              - scope: [u]
                entries:
                  - {assignment: [hi], value: 3}
            """)
        assert problem.algebra.values(problem.factors[0]) == [float("-inf"), 3]

    def test_missing_file(self, tmp_path):
        with pytest.raises(ProblemParseError) as exc:
            load_problem(tmp_path / "absent.yaml")
        assert exc.value.path.endswith("absent.yaml")


class TestErrors:
    def test_unknown_semiring_position(self):
        with pytest.raises(ProblemParseError) as exc:
            parse("""\
                semiring: tropical
                variables: []
                factors: []
                """)
        assert (exc.value.line, exc.value.column) == (1, 11)

    def test_unknown_scope_variable(self):
        with pytest.raises(ProblemParseError) as exc:
            parse("""\
                semiring: boolean
                variables:
                  - {name: x, frame: [0, 1]}
                factors:
                  - scope: [x, w]
                    table: [1, 0, 0, 1]
                """)
        assert "w" in str(exc.value)
        assert exc.value.line == 5

    def test_wrong_table_length(self):
        with pytest.raises(ProblemParseError) as exc:
            parse("""\
                semiring: boolean
                variables:
                  - {name: x, frame: [0, 1]}
                factors:
                  - scope: [x]
                    table: [1, 0, 1]
                """)
        assert exc.value.line == 6
        assert "needs 2 values" in str(exc.value)

    def test_value_outside_semiring(self):
        with pytest.raises(ProblemParseError) as exc:
            parse("""\
                semiring: boolean
                variables:
                  - {name: x, frame: [0, 1]}
                factors:
                  - scope: [x]
                    table: [1, 2]
                """)
        assert exc.value.line == 6

    def test_duplicate_variable(self):
        with pytest.raises(ProblemParseError, match="duplicate variable"):
            parse("""\
                semiring: boolean
                variables:
                  - {name: x, frame: [0, 1]}
                  - {name: x, frame: [0, 1]}
                factors: []
                """)

    def test_empty_frame(self):
        with pytest.raises(ProblemParseError, match="empty"):
            parse("""\
                semiring: boolean
                variables:
                  - {name: x, frame: []}
                factors: []
                """)

    def test_missing_key(self):
        with pytest.raises(ProblemParseError, match="'factors'"):
            parse("""\
                semiring: boolean
                variables: []
                """)

    def test_malformed_yaml(self):
        with pytest.raises(ProblemParseError) as exc:
            parse_problem("semiring: [boolean\n")
        assert exc.value.line is not None

    def test_unknown_option(self):
        with pytest.raises(ProblemParseError, match="unknown option"):
            parse("""\
                semiring: boolean
                variables:
                  - {name: x, frame: [0, 1]}
                factors:
                  - {scope: [x], table: [1, 1]}
                options:
                  speed: fast
                """)

    def test_bad_cap(self):
        with pytest.raises(ProblemParseError, match="cap"):
            parse("""\
                semiring: boolean
                variables:
                  - {name: x, frame: [0, 1]}
                factors:
                  - {scope: [x], table: [1, 1]}
                options:
                  cap: 0
                """)


def test_marginal_output_uses_frame_labels(problems_dir):
    problem = load_problem(problems_dir / "route.yaml")
    marginal = problem.algebra.project(problem.factors[0], ["start"])
    out = marginal_output(problem, marginal)
    assert out["scope"] == ["start"]
    assert out["table"] == [4, 3]
    assert out["entries"][1] == {"assignment": {"start": "office"}, "value": 3}
    assert yaml.safe_load(render(out)) == out
