"""
localcomp 异常类层次结构

定义项目中所有自定义异常，提供清晰的错误分类和处理
"""

from typing import Any, Iterable


# =============================================================================
# 基础异常
# =============================================================================

class LocalCompError(Exception):
    """localcomp 基础异常类

    所有自定义异常的基类，提供统一的错误处理接口
    """

    def __init__(self, message: str, *, code: str | None = None, details: dict[str, Any] | None = None):
        """初始化异常

        Args:
            message: 错误信息
            code: 错误代码，用于程序化处理
            details: 额外的错误详情
        """
        super().__init__(message)
        self.message = message
        self.code = code or self.__class__.__name__
        self.details = details or {}

    def __str__(self) -> str:
        if self.details:
            return f"{self.message} (details: {self.details})"
        return self.message

    def to_dict(self) -> dict[str, Any]:
        """转换为字典格式，便于序列化"""
        return {
            "error_type": self.__class__.__name__,
            "code": self.code,
            "message": self.message,
            "details": self.details,
        }


# =============================================================================
# 配置相关异常
# =============================================================================

class ConfigError(LocalCompError):
    """配置错误基类"""

    pass


class ConfigValidationError(ConfigError):
    """配置验证失败

    当配置值不符合预期格式或范围时抛出
    """

    def __init__(self, message: str, field: str, value: Any):
        super().__init__(message, details={"field": field, "value": str(value)})
        self.field = field
        self.value = value


class ConfigNotFoundError(ConfigError):
    """配置文件未找到"""

    def __init__(self, path: str):
        super().__init__(f"config file not found: {path}", details={"path": path})
        self.path = path


class EliminationOrderError(ConfigError):
    """消元顺序不完整或含重复变量"""

    def __init__(self, message: str, *, missing: Iterable[str] = (), duplicated: Iterable[str] = ()):
        missing = sorted(missing)
        duplicated = sorted(duplicated)
        super().__init__(message, details={"missing": missing, "duplicated": duplicated})
        self.missing = missing
        self.duplicated = duplicated


class TreeMismatchError(ConfigError):
    """连接树与因子列表不匹配（因子未分配、重复分配或未被覆盖）"""

    def __init__(self, message: str, *, factor: int | None = None, node: int | None = None):
        super().__init__(message, details={"factor": factor, "node": node})
        self.factor = factor
        self.node = node


# =============================================================================
# 输入相关异常
# =============================================================================

class InputError(LocalCompError):
    """输入错误基类"""

    pass


class InvalidInputError(InputError):
    """无效输入错误"""

    def __init__(self, message: str, *, field: str | None = None, value: Any = None):
        super().__init__(message, details={"field": field, "value": None if value is None else str(value)})
        self.field = field
        self.value = value


class ProblemParseError(InputError):
    """问题文件解析错误

    携带出错位置（从1开始的行号与列号）
    """

    def __init__(self, message: str, *, path: str | None = None, line: int | None = None, column: int | None = None):
        super().__init__(message, details={"path": path, "line": line, "column": column})
        self.path = path
        self.line = line
        self.column = column

    def __str__(self) -> str:
        where = ""
        if self.line is not None:
            where = f" (line {self.line}, column {self.column})"
        return f"{self.message}{where}"


class UnknownVariableError(InputError):
    """查询或因子中出现未声明的变量"""

    def __init__(self, message: str, *, variables: Iterable[str]):
        variables = sorted(variables)
        super().__init__(message, details={"variables": variables})
        self.variables = variables


# =============================================================================
# 代数运算相关异常
# =============================================================================

class AlgebraError(LocalCompError):
    """赋值代数运算错误基类"""

    pass


class DomainError(AlgebraError):
    """域错误

    投影/限制的目标域不是当前标签（或范围）的子集时抛出，
    details 中列出越界的变量
    """

    def __init__(self, message: str, *, offending: Iterable[str] = ()):
        offending = sorted(offending)
        super().__init__(message, details={"offending": offending})
        self.offending = offending


class InstanceMismatchError(AlgebraError):
    """不同代数实例的赋值混合运算"""

    def __init__(self, message: str, *, expected: str, actual: str):
        super().__init__(message, details={"expected": expected, "actual": actual})
        self.expected = expected
        self.actual = actual


class IncompatibleConfigurationError(AlgebraError):
    """配置不相容，无法合并"""

    def __init__(self, message: str, *, variable: str | None = None):
        super().__init__(message, details={"variable": variable})
        self.variable = variable


# =============================================================================
# 结构相关异常
# =============================================================================

class StructureError(LocalCompError):
    """树结构错误（不连通或含环）"""

    pass


class QueryDomainError(LocalCompError):
    """查询域不被任何树节点覆盖"""

    def __init__(self, message: str, *, query: Iterable[str]):
        query = sorted(query)
        super().__init__(message, details={"query": query})
        self.query = query


# =============================================================================
# 求解相关异常
# =============================================================================

class SolutionError(LocalCompError):
    """求解过程错误基类"""

    pass


class NoSolutionError(SolutionError):
    """某节点的扩展集为空"""

    def __init__(self, message: str, *, node: int):
        super().__init__(message, details={"node": node})
        self.node = node


# =============================================================================
# 资源相关异常
# =============================================================================

class ResourceError(LocalCompError):
    """资源错误基类"""

    pass


class StateSpaceTooLargeError(ResourceError):
    """穷举状态空间超过上限"""

    def __init__(self, message: str, *, states: int, limit: int):
        super().__init__(message, details={"states": states, "limit": limit})
        self.states = states
        self.limit = limit


# =============================================================================
# 导出列表
# =============================================================================

__all__ = [
    # 基础
    "LocalCompError",
    # 配置
    "ConfigError",
    "ConfigValidationError",
    "ConfigNotFoundError",
    "EliminationOrderError",
    "TreeMismatchError",
    # 输入
    "InputError",
    "InvalidInputError",
    "ProblemParseError",
    "UnknownVariableError",
    # 代数
    "AlgebraError",
    "DomainError",
    "InstanceMismatchError",
    "IncompatibleConfigurationError",
    # 结构
    "StructureError",
    "QueryDomainError",
    # 求解
    "SolutionError",
    "NoSolutionError",
    # 资源
    "ResourceError",
    "StateSpaceTooLargeError",
]
