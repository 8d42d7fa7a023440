"""
localcomp 配置

支持：
- 环境变量覆盖（LOCALCOMP_*）
- 配置文件保存/加载
- validate() 返回错误列表
"""

import json
import logging
import os
from pathlib import Path
from typing import Any

from app.exceptions import ConfigNotFoundError, ConfigValidationError
from app.models import Heuristic, Picker

logger = logging.getLogger(__name__)


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigValidationError(f"{name} must be an integer", field=name, value=raw) from None


# =============================================================================
# 求解配置
# =============================================================================

class SolverConfig:
    """求解配置

    Attributes:
        heuristic: 消元顺序启发式
        picker: 扩展集选取策略
        cap: solve-all 的解数量上限
        max_workers: 消息传递的并发线程数（1 为顺序）
    """

    def __init__(
        self,
        heuristic: str = Heuristic.MIN_FILL.value,
        picker: str = Picker.LEXICOGRAPHIC.value,
        cap: int = 1_000_000,
        max_workers: int = 1,
    ):
        # 优先从环境变量读取
        self.heuristic = os.getenv("LOCALCOMP_HEURISTIC", heuristic)
        self.picker = os.getenv("LOCALCOMP_PICKER", picker)
        self.cap = _env_int("LOCALCOMP_CAP", cap)
        self.max_workers = _env_int("LOCALCOMP_MAX_WORKERS", max_workers)

    def to_dict(self) -> dict[str, Any]:
        return {
            "heuristic": self.heuristic,
            "picker": self.picker,
            "cap": self.cap,
            "max_workers": self.max_workers,
        }

    def validate(self) -> list[str]:
        errors = []
        if self.heuristic not in {h.value for h in Heuristic}:
            errors.append(f"无效的启发式: {self.heuristic}. 可用: {', '.join(h.value for h in Heuristic)}")
        if self.picker not in {p.value for p in Picker}:
            errors.append(f"无效的选取策略: {self.picker}. 可用: {', '.join(p.value for p in Picker)}")
        if self.cap < 1:
            errors.append(f"无效的解数量上限: {self.cap}")
        if self.max_workers < 1:
            errors.append(f"无效的线程数: {self.max_workers}")
        return errors


# =============================================================================
# 性质检查配置
# =============================================================================

class CheckConfig:
    """随机性质检查配置

    Attributes:
        trials: 试验次数
        seed: 随机种子
        max_vars: 随机变量系统的变量数
        max_frame: 随机框架的最大大小
    """

    def __init__(self, trials: int = 500, seed: int = 0, max_vars: int = 5, max_frame: int = 3):
        self.trials = trials
        self.seed = _env_int("LOCALCOMP_SEED", seed)
        self.max_vars = max_vars
        self.max_frame = max_frame

    def to_dict(self) -> dict[str, Any]:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "max_vars": self.max_vars,
            "max_frame": self.max_frame,
        }

    def validate(self) -> list[str]:
        errors = []
        if self.trials < 1:
            errors.append(f"无效的试验次数: {self.trials}")
        if not 1 <= self.max_vars <= 8:
            errors.append(f"变量数超出范围 [1, 8]: {self.max_vars}")
        if self.max_frame < 1:
            errors.append(f"无效的框架大小: {self.max_frame}")
        return errors


class OracleConfig:
    """穷举参照配置

    Attributes:
        max_states: 允许枚举的最大配置数
    """

    def __init__(self, max_states: int = 10 ** 7):
        self.max_states = _env_int("LOCALCOMP_MAX_STATES", max_states)

    def to_dict(self) -> dict[str, Any]:
        return {"max_states": self.max_states}


# =============================================================================
# 总配置
# =============================================================================

class Config:
    """总配置

    Attributes:
        solver: 求解配置
        checks: 性质检查配置
        oracle: 穷举参照配置
        log_level: 日志级别
        debug: 调试模式
    """

    def __init__(
        self,
        solver: SolverConfig | None = None,
        checks: CheckConfig | None = None,
        oracle: OracleConfig | None = None,
        log_level: str = "WARNING",
        debug: bool = False,
    ):
        self.solver = solver or SolverConfig()
        self.checks = checks or CheckConfig()
        self.oracle = oracle or OracleConfig()
        self.log_level = os.getenv("LOCALCOMP_LOG_LEVEL", log_level).upper()
        self.debug = debug

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Config":
        try:
            return cls(
                solver=SolverConfig(**data.get("solver", {})),
                checks=CheckConfig(**data.get("checks", {})),
                oracle=OracleConfig(**data.get("oracle", {})),
                log_level=data.get("log_level", "WARNING"),
                debug=data.get("debug", False),
            )
        except TypeError as e:
            raise ConfigValidationError(f"unknown configuration key: {e}", field="config", value=data) from None

    @classmethod
    def load(cls, path: str | Path | None = None) -> "Config":
        """从配置文件加载

        优先级：显式路径 > 项目目录 config.json > 用户目录 ~/.localcomp/config.json > 默认配置

        Raises:
            ConfigNotFoundError: 显式给出的路径不存在
        """
        if path is not None:
            path = Path(path)
            if not path.exists():
                raise ConfigNotFoundError(str(path))
            config_files = [path]
        else:
            config_files = [
                Path(__file__).parent.parent.parent / "config.json",
                Path.home() / ".localcomp" / "config.json",
            ]

        for config_file in config_files:
            if config_file.exists():
                try:
                    with open(config_file, "r", encoding="utf-8") as f:
                        data = json.load(f)
                    logger.debug("从配置文件加载: %s", config_file)
                    return cls.from_dict(data)
                except (json.JSONDecodeError, ConfigValidationError) as e:
                    if path is not None:
                        raise
                    logger.warning("配置文件解析失败 (%s): %s，使用默认配置", config_file, e)
                    continue

        return cls()

    def to_dict(self) -> dict[str, Any]:
        return {
            "solver": self.solver.to_dict(),
            "checks": self.checks.to_dict(),
            "oracle": self.oracle.to_dict(),
            "log_level": self.log_level,
            "debug": self.debug,
        }

    def save(self, path: str | Path | None = None) -> Path:
        """保存到配置文件（默认 ~/.localcomp/config.json）"""
        config_file = Path(path) if path else Path.home() / ".localcomp" / "config.json"
        config_file.parent.mkdir(parents=True, exist_ok=True)
        with open(config_file, "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, ensure_ascii=False, indent=2)
        return config_file

    def validate(self) -> list[str]:
        """验证配置

        Returns:
            错误信息列表，空列表表示验证通过
        """
        errors = []
        errors.extend(self.solver.validate())
        errors.extend(self.checks.validate())
        if self.oracle.max_states < 1:
            errors.append(f"无效的枚举上限: {self.oracle.max_states}")
        if self.log_level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            errors.append(f"无效的日志级别: {self.log_level}")
        return errors


# =============================================================================
# 全局配置实例
# =============================================================================

config = Config.load()


__all__ = [
    "SolverConfig",
    "CheckConfig",
    "OracleConfig",
    "Config",
    "config",
]
