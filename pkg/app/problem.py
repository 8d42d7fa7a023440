"""
问题文件

YAML 格式的因子分解问题：半环、变量框架、因子表以及可选的求解选项。
加载时保留每个节点的位置，语义错误也能报告行号与列号。

示例::

    semiring: max-plus
    variables:
      - {name: u, frame: [0, 1]}
      - {name: v, frame: [0, 1]}
    factors:
      - {scope: [u], table: [2, 5]}
      - {scope: [u, v], table: [1, 4, 0, 3]}
    options:
      heuristic: min-fill

因子表按文件中 scope 的顺序行主序展开（最后一个变量变化最快）。
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import yaml

from app.algebra import Valuation, ValuationAlgebra
from app.configuration import VariableSystem
from app.exceptions import LocalCompError, ProblemParseError
from app.instances import create_algebra
from app.instances.sparse import SparsePotentialAlgebra
from app.models import Configuration, Domain, Heuristic, Picker, SemiringName, describe
from app.utils.types import PathLike

logger = logging.getLogger(__name__)


# =============================================================================
# 带位置的 YAML 加载
# =============================================================================

class _MarkedDict(dict):
    mark: yaml.Mark | None = None
    marks: dict[Any, yaml.Mark] = {}


class _MarkedList(list):
    mark: yaml.Mark | None = None
    marks: list[yaml.Mark] = []


class _MarkedLoader(yaml.SafeLoader):
    """记录映射与序列节点起始位置的 SafeLoader"""


def _construct_map(loader: _MarkedLoader, node: yaml.MappingNode) -> _MarkedDict:
    data = _MarkedDict(loader.construct_mapping(node, deep=True))
    data.mark = node.start_mark
    data.marks = {key.value: value.start_mark for key, value in node.value}
    return data


def _construct_seq(loader: _MarkedLoader, node: yaml.SequenceNode) -> _MarkedList:
    data = _MarkedList(loader.construct_sequence(node, deep=True))
    data.mark = node.start_mark
    data.marks = [item.start_mark for item in node.value]
    return data


_MarkedLoader.add_constructor(yaml.resolver.BaseResolver.DEFAULT_MAPPING_TAG, _construct_map)
_MarkedLoader.add_constructor(yaml.resolver.BaseResolver.DEFAULT_SEQUENCE_TAG, _construct_seq)


# =============================================================================
# 数据模型
# =============================================================================

@dataclass
class ProblemOptions:
    """问题文件中的求解选项（未给出的项为 None，由配置补齐）"""
    order: list[str] | None = None
    heuristic: str | None = None
    picker: str | None = None
    cap: int | None = None

    def to_dict(self) -> dict[str, Any]:
        return {k: v for k, v in self.__dict__.items() if v is not None}


@dataclass
class Problem:
    """已加载的问题

    Attributes:
        algebra: 绑定到问题变量系统的代数实例
        factors: 因子（按文件顺序）
        options: 求解选项
        path: 来源文件
    """
    algebra: ValuationAlgebra
    factors: list[Valuation]
    options: ProblemOptions = field(default_factory=ProblemOptions)
    path: str | None = None

    @property
    def system(self) -> VariableSystem:
        return self.algebra.system

    @property
    def variables(self) -> Domain:
        return Domain.join_all(f.label for f in self.factors)


# =============================================================================
# 解析
# =============================================================================

def _kinds(kind: type | tuple[type, ...]) -> tuple[type, ...]:
    return kind if isinstance(kind, tuple) else (kind,)


class _Parser:
    """单个文件的解析上下文"""

    def __init__(self, path: str | None):
        self.path = path

    def error(self, message: str, mark: yaml.Mark | None = None) -> ProblemParseError:
        if mark is None:
            return ProblemParseError(message, path=self.path)
        return ProblemParseError(message, path=self.path, line=mark.line + 1, column=mark.column + 1)

    def require(self, data: _MarkedDict, key: str, kind: type | tuple[type, ...]) -> Any:
        if key not in data:
            raise self.error(f"missing required key {key!r}", data.mark)
        value = data[key]
        if not isinstance(value, kind) or isinstance(value, bool) and bool not in _kinds(kind):
            names = " or ".join(k.__name__ for k in _kinds(kind))
            raise self.error(f"{key!r} must be a {names}", data.marks.get(key))
        return value

    # -------------------------------------------------------------------------

    def parse(self, text: str) -> Problem:
        try:
            data = yaml.load(text, Loader=_MarkedLoader)
        except yaml.MarkedYAMLError as e:
            raise self.error(f"malformed problem file: {e.problem}", e.problem_mark) from None
        except yaml.YAMLError as e:
            raise self.error(f"malformed problem file: {e}") from None
        if not isinstance(data, _MarkedDict):
            raise self.error("problem file must be a mapping")

        name = self.require(data, "semiring", str)
        if name not in {s.value for s in SemiringName}:
            raise self.error(
                f"unknown semiring {name!r}. Supported: {', '.join(s.value for s in SemiringName)}",
                data.marks["semiring"],
            )
        system = self.variables(self.require(data, "variables", list))
        algebra = create_algebra(name, system)

        factors_node = self.require(data, "factors", list)
        factors = [self.factor(algebra, node, mark) for node, mark in zip(factors_node, factors_node.marks)]
        options = self.options(data.get("options"), data.marks.get("options"), system)
        logger.debug("loaded %s problem with %d variable(s), %d factor(s)", name, len(system.frames), len(factors))
        return Problem(algebra=algebra, factors=factors, options=options, path=self.path)

    def variables(self, node: _MarkedList) -> VariableSystem:
        frames: dict[str, list[Any]] = {}
        for item, mark in zip(node, node.marks):
            if not isinstance(item, _MarkedDict):
                raise self.error("variable entries must be mappings with name and frame", mark)
            name = str(self.require(item, "name", (str, int)))
            frame = self.require(item, "frame", list)
            if name in frames:
                raise self.error(f"duplicate variable {name!r}", item.marks["name"])
            if not frame:
                raise self.error(f"frame of variable {name!r} is empty", item.marks["frame"])
            if len(set(map(str, frame))) != len(frame):
                raise self.error(f"frame of variable {name!r} has duplicate values", item.marks["frame"])
            frames[name] = list(frame)
        return VariableSystem(frames)

    def scope(self, item: _MarkedDict, system: VariableSystem) -> list[str]:
        scope = [str(v) for v in self.require(item, "scope", list)]
        mark = item.marks["scope"]
        unknown = [v for v in scope if v not in system.frames]
        if unknown:
            raise self.error(f"unknown variable(s) in scope: {', '.join(unknown)}", mark)
        if len(set(scope)) != len(scope):
            raise self.error("scope lists a variable twice", mark)
        return scope

    def factor(self, algebra: ValuationAlgebra, item: Any, mark: yaml.Mark) -> Valuation:
        if not isinstance(item, _MarkedDict):
            raise self.error("factor entries must be mappings", mark)
        system = algebra.system
        scope = self.scope(item, system)
        canonical = Domain(scope)
        try:
            if "table" in item:
                table = self.require(item, "table", list)
                sizes = [system.size(v) for v in scope]
                expected = int(np.prod(sizes, dtype=np.int64))
                if len(table) != expected:
                    raise self.error(
                        f"table over {scope} needs {expected} values, got {len(table)}", item.marks["table"],
                    )
                # 文件中的行主序 -> 规范轴顺序
                perm = [scope.index(v) for v in canonical.ordered]
                values = np.asarray(table, dtype=object).reshape(sizes).transpose(perm).ravel().tolist()
                return algebra.tabulate(canonical, values)
            if "entries" in item:
                return self.entries(algebra, scope, self.require(item, "entries", list))
        except LocalCompError as e:
            if isinstance(e, ProblemParseError):
                raise
            key = "table" if "table" in item else "entries"
            raise self.error(str(e), item.marks.get(key)) from None
        raise self.error("factor needs either 'table' or 'entries'", mark)

    def entries(self, algebra: ValuationAlgebra, scope: list[str], node: _MarkedList) -> Valuation:
        system = algebra.system
        values: dict[Configuration, Any] = {}
        for entry, mark in zip(node, node.marks):
            if not isinstance(entry, _MarkedDict):
                raise self.error("entries must be mappings with assignment and value", mark)
            assignment = self.require(entry, "assignment", list)
            if len(assignment) != len(scope):
                raise self.error(f"assignment needs {len(scope)} values", entry.marks["assignment"])
            z = Configuration(tuple(
                (v, system.index_of(v, label)) for v, label in zip(scope, assignment)
            ))
            if z in values:
                raise self.error(f"duplicate entry for {system.labelled(z)}", mark)
            values[z] = self.require(entry, "value", (int, float))

        if isinstance(algebra, SparsePotentialAlgebra):
            return algebra.from_entries(scope, values)
        # 稠密实例：未列出的配置取零元
        canonical = Domain(scope)
        table = [values.get(z, algebra.null) for z in system.gamma(canonical)]
        return algebra.tabulate(canonical, table)

    def options(self, node: Any, mark: yaml.Mark | None, system: VariableSystem) -> ProblemOptions:
        if node is None:
            return ProblemOptions()
        if not isinstance(node, _MarkedDict):
            raise self.error("options must be a mapping", mark)
        known = {"order", "heuristic", "picker", "cap"}
        for key in node:
            if key not in known:
                raise self.error(f"unknown option {key!r}", node.marks[key])
        options = ProblemOptions()
        if "order" in node:
            order = self.require(node, "order", list)
            unknown = [str(v) for v in order if str(v) not in system.frames]
            if unknown:
                raise self.error(f"unknown variable(s) in order: {', '.join(unknown)}", node.marks["order"])
            options.order = [str(v) for v in order]
        if "heuristic" in node:
            value = self.require(node, "heuristic", str)
            if value not in {h.value for h in Heuristic}:
                raise self.error(f"unknown heuristic {value!r}", node.marks["heuristic"])
            options.heuristic = value
        if "picker" in node:
            value = self.require(node, "picker", str)
            if value not in {p.value for p in Picker}:
                raise self.error(f"unknown picker {value!r}", node.marks["picker"])
            options.picker = value
        if "cap" in node:
            cap = self.require(node, "cap", int)
            if cap < 1:
                raise self.error("cap must be positive", node.marks["cap"])
            options.cap = cap
        return options


def parse_problem(text: str, path: str | None = None) -> Problem:
    """解析问题文本

    Raises:
        ProblemParseError: 语法或语义错误（带行号与列号）
    """
    return _Parser(path).parse(text)


def load_problem(path: PathLike) -> Problem:
    """加载问题文件

    Raises:
        ProblemParseError: 文件不存在或内容有误
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ProblemParseError(f"cannot read problem file: {e.strerror}", path=str(path)) from None
    return parse_problem(text, str(path))


# =============================================================================
# 输出
# =============================================================================

def render(data: dict[str, Any]) -> str:
    """结构化输出（键顺序固定）"""
    return yaml.safe_dump(data, sort_keys=False, allow_unicode=True, default_flow_style=False)


def marginal_output(problem: Problem, marginal: Valuation) -> dict[str, Any]:
    """边缘输出：规范变量顺序下的行主序取值表"""
    scope = marginal.label
    return {
        "scope": scope.to_list(),
        "table": problem.algebra.values(marginal),
        "entries": [
            {"assignment": problem.system.labelled(z), "value": describe(problem.algebra.evaluate(marginal, z))}
            for z in problem.system.gamma(scope)
        ],
    }


__all__ = [
    "ProblemOptions",
    "Problem",
    "parse_problem",
    "load_problem",
    "render",
    "marginal_output",
]
