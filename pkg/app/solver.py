"""
localcomp - 求解器

负责：
1. 合并求解选项（命令行 > 问题文件 > 配置）
2. 构造覆盖连接树
3. Collect 消息传递
4. Extend / ExtendAll 求解
"""

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

from app.algebra import Valuation
from app.config import Config, config
from app.exceptions import InvalidInputError, LocalCompError, UnknownVariableError
from app.jointree import CoveringJoinTree, build_covering_join_tree
from app.models import Domain, Heuristic, Picker
from app.models.results import SolveAllResult, SolveResult
from app.problem import Problem
from app.propagation import query_marginal
from app.solution import solve, solve_all
from app.utils import timer
from app.utils.types import ErrorCallback, ProgressCallback

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolverSettings:
    """一次求解实际使用的选项"""
    heuristic: Heuristic
    order: list[str] | None
    picker: Picker
    cap: int
    max_workers: int


class Solver:
    """问题求解器

    编排连接树构造、Collect 与 Extend 三个阶段。

    Attributes:
        problem: 已加载的问题
        cfg: 配置
        settings: 合并后的求解选项
    """

    def __init__(
        self,
        problem: Problem,
        cfg: Config | None = None,
        progress_callback: ProgressCallback | None = None,
        error_callback: ErrorCallback | None = None,
        *,
        heuristic: str | None = None,
        order: Sequence[str] | None = None,
        picker: str | None = None,
        cap: int | None = None,
        max_workers: int | None = None,
    ) -> None:
        """初始化求解器

        Args:
            problem: 已加载的问题
            cfg: 配置对象，默认使用全局配置
            progress_callback: 进度回调函数，接收(stage_name, progress)参数
            error_callback: 错误回调函数，接收异常对象
            heuristic / order / picker / cap / max_workers: 覆盖问题文件与配置中的选项

        Raises:
            InvalidInputError: cap 或 max_workers 小于 1
        """
        self.problem = problem
        self.cfg = cfg or config
        self._progress_callback = progress_callback
        self._error_callback = error_callback
        self.settings = self._resolve(heuristic, order, picker, cap, max_workers)

    def _resolve(
        self,
        heuristic: str | None,
        order: Sequence[str] | None,
        picker: str | None,
        cap: int | None,
        max_workers: int | None,
    ) -> SolverSettings:
        options = self.problem.options
        # 显式顺序优先于任何启发式
        if order is not None:
            name, order = Heuristic.GIVEN.value, list(order)
        elif heuristic:
            name = heuristic
        elif options.order is not None:
            name, order = Heuristic.GIVEN.value, list(options.order)
        else:
            name = options.heuristic or self.cfg.solver.heuristic
            if name == Heuristic.GIVEN.value:
                name = Heuristic.MIN_FILL.value
        if cap is None:
            cap = options.cap if options.cap is not None else self.cfg.solver.cap
        if max_workers is None:
            max_workers = self.cfg.solver.max_workers
        for field, value in (("cap", cap), ("max_workers", max_workers)):
            if value < 1:
                raise InvalidInputError(f"{field} must be at least 1, got {value}", field=field, value=value)
        return SolverSettings(
            heuristic=Heuristic(name),
            order=order,
            picker=Picker(picker or options.picker or self.cfg.solver.picker),
            cap=cap,
            max_workers=max_workers,
        )

    def _report_progress(self, stage_name: str, progress: float) -> None:
        if self._progress_callback:
            self._progress_callback(stage_name, progress)

    def _report_error(self, error: Exception) -> None:
        if self._error_callback:
            self._error_callback(error)

    # -------------------------------------------------------------------------

    @property
    def factors(self) -> list[Valuation]:
        return self.problem.factors

    def tree(self, forced: Iterable[str] = ()) -> CoveringJoinTree:
        """按当前选项构造覆盖连接树"""
        return build_covering_join_tree(
            self.factors,
            order=self.settings.order,
            heuristic=self.settings.heuristic,
            forced=forced,
        )

    def marginal(self, scope: Iterable[str]) -> Valuation:
        """边缘查询

        Raises:
            UnknownVariableError: 查询中有问题未声明的变量
            DomainError: 查询变量不出现在任何因子中
        """
        scope = Domain(scope)
        unknown = scope - self.problem.system.variables
        if unknown:
            raise UnknownVariableError(f"unknown variable(s) in query: {unknown!r}", variables=unknown)
        try:
            self._report_progress("marginal", 0.0)
            with timer("marginal", logger):
                result = query_marginal(
                    self.factors, scope, self.problem.algebra,
                    heuristic=self.settings.heuristic,
                    order=self.settings.order,
                    max_workers=self.settings.max_workers,
                )
            self._report_progress("marginal", 1.0)
            return result
        except LocalCompError as e:
            self._report_error(e)
            raise

    def solve(self) -> SolveResult:
        """Collect + Extend"""
        try:
            self._report_progress("solve", 0.0)
            with timer("solve", logger):
                result = solve(
                    self.factors, self.problem.algebra,
                    heuristic=self.settings.heuristic,
                    order=self.settings.order,
                    picker=self.settings.picker,
                    max_workers=self.settings.max_workers,
                )
            self._report_progress("solve", 1.0)
            logger.info("solution %r with objective %s", result.assignment, result.objective)
            return result
        except LocalCompError as e:
            self._report_error(e)
            raise

    def solve_all(self) -> SolveAllResult:
        """Collect + ExtendAll"""
        try:
            self._report_progress("solve-all", 0.0)
            with timer("solve-all", logger):
                result = solve_all(
                    self.factors, self.problem.algebra,
                    heuristic=self.settings.heuristic,
                    order=self.settings.order,
                    cap=self.settings.cap,
                    max_workers=self.settings.max_workers,
                )
            self._report_progress("solve-all", 1.0)
            logger.info("%d solution(s), complete=%s", result.count, result.complete)
            return result
        except LocalCompError as e:
            self._report_error(e)
            raise


__all__ = ["SolverSettings", "Solver"]
