"""
性质检查报告模型

公理检查、合并友好性、扩展集族条件、分段可扩展性等检查器的统一输出。
失败是数据而不是异常：报告记录通过/失败计数以及第一个反例。
"""

from dataclasses import dataclass, field
from typing import Any


# =============================================================================
# 单项性质报告
# =============================================================================

@dataclass
class PropertyReport:
    """单个性质的检查结果

    Attributes:
        name: 性质名称
        trials: 试验次数
        checked: 实际检查的实例数（一次试验可检查多个实例）
        failures: 违反次数
        first_violation: 第一个反例（可序列化字典），无违反时为 None
    """
    name: str
    trials: int = 0
    checked: int = 0
    failures: int = 0
    first_violation: dict[str, Any] | None = None

    @property
    def passed(self) -> int:
        return self.checked - self.failures

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def record(self, holds: bool, witness: dict[str, Any] | None = None) -> bool:
        """记录一次检查，返回是否通过"""
        self.checked += 1
        if not holds:
            self.failures += 1
            if self.first_violation is None:
                self.first_violation = witness or {}
        return holds

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "trials": self.trials,
            "checked": self.checked,
            "passed": self.passed,
            "failures": self.failures,
            "ok": self.ok,
            "first_violation": self.first_violation,
        }


# =============================================================================
# 报告集合
# =============================================================================

@dataclass
class SuiteReport:
    """多项性质的检查结果集合

    Attributes:
        name: 检查套件名称
        instance: 被检查的代数实例
        reports: 性质名 -> 单项报告（按插入顺序）
    """
    name: str
    instance: str = ""
    reports: dict[str, PropertyReport] = field(default_factory=dict)

    def add(self, name: str, trials: int = 0) -> PropertyReport:
        report = PropertyReport(name=name, trials=trials)
        self.reports[name] = report
        return report

    def __getitem__(self, name: str) -> PropertyReport:
        return self.reports[name]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.reports.values())

    def failed(self) -> list[str]:
        return [name for name, r in self.reports.items() if not r.ok]

    def to_dict(self) -> dict[str, Any]:
        return {
            "suite": self.name,
            "instance": self.instance,
            "ok": self.ok,
            "properties": [r.to_dict() for r in self.reports.values()],
        }


class AxiomReport(SuiteReport):
    """公理 A1–A6（以及单位元）的检查结果"""

    AXIOMS = ("A1", "A2", "A3", "A4", "A5", "A6", "identity")


__all__ = [
    "PropertyReport",
    "SuiteReport",
    "AxiomReport",
]
