"""
命令行接口

子命令：
    marginal PROBLEM --scope u,v     边缘查询
    solve PROBLEM                    求一个解
    solve-all PROBLEM [--cap N]      求全部解
    check-axioms                     随机检查代数公理
    check-extensibility [--full]     随机检查扩展集族与（完全）分段可扩展性
    demo-counterexample              解集投影恒等式的反例

退出码：0 成功；1 不可满足、无解或性质检查失败；2 输入、配置或域错误。
"""

import argparse
import logging
import sys
from typing import Any, Callable, Sequence

import numpy as np

from app import __version__
from app.algebra.axioms import check_axioms
from app.config import Config
from app.configuration import VariableSystem
from app.exceptions import (
    AlgebraError,
    ConfigError,
    InputError,
    LocalCompError,
    QueryDomainError,
    ResourceError,
    SolutionError,
    StructureError,
)
from app.instances import create_algebra, default_sampler, extension_family
from app.instances.extension import check_family
from app.models import Heuristic, Picker, SemiringName, describe
from app.oracle import reproduce_counterexample
from app.problem import load_problem, marginal_output, render
from app.solution import check_fully_piecewise_extensible, check_nary_lemmas, check_piecewise_extensible
from app.solver import Solver
from app.utils import setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2

EXTENSIBILITY_SEMIRINGS = (SemiringName.BOOLEAN, SemiringName.MAX_PLUS, SemiringName.MAX_TIMES)


def _split(value: str) -> list[str]:
    return [v.strip() for v in value.split(",") if v.strip()]


def _semirings(value: str | None, default: Sequence[SemiringName]) -> list[SemiringName]:
    if value is None or value == "all":
        return list(default)
    return [SemiringName(v) for v in _split(value)]


# =============================================================================
# 子命令
# =============================================================================

def _solver(args: argparse.Namespace, cfg: Config) -> Solver:
    problem = load_problem(args.problem)
    return Solver(
        problem, cfg,
        heuristic=args.heuristic,
        order=_split(args.order) if args.order else None,
        picker=getattr(args, "picker", None),
        cap=getattr(args, "cap", None),
        max_workers=args.max_workers,
    )


def cmd_marginal(args: argparse.Namespace, cfg: Config) -> int:
    solver = _solver(args, cfg)
    marginal = solver.marginal(_split(args.scope))
    sys.stdout.write(render(marginal_output(solver.problem, marginal)))
    return EXIT_OK


def cmd_solve(args: argparse.Namespace, cfg: Config) -> int:
    solver = _solver(args, cfg)
    result = solver.solve()
    sys.stdout.write(render({
        "assignment": solver.problem.system.labelled(result.assignment),
        "objective": describe(result.objective),
        "satisfiable": result.satisfiable,
    }))
    return EXIT_OK if result.satisfiable else EXIT_FAILED


def cmd_solve_all(args: argparse.Namespace, cfg: Config) -> int:
    solver = _solver(args, cfg)
    result = solver.solve_all()
    system = solver.problem.system
    sys.stdout.write(render({
        "solutions": [system.labelled(z) for z in result.solutions],
        "count": result.count,
        "objective": describe(result.objective),
        "satisfiable": result.satisfiable,
        "complete": result.complete,
    }))
    return EXIT_OK if result.satisfiable else EXIT_FAILED


def _random_system(args: argparse.Namespace, cfg: Config) -> VariableSystem:
    rng = np.random.default_rng(args.seed)
    return VariableSystem.random(rng, cfg.checks.max_vars, cfg.checks.max_frame)


def _emit_reports(reports: list[dict[str, Any]]) -> int:
    sys.stdout.write(render({"reports": reports}))
    return EXIT_OK if all(r["ok"] for r in reports) else EXIT_FAILED


def cmd_check_axioms(args: argparse.Namespace, cfg: Config) -> int:
    system = _random_system(args, cfg)
    reports = []
    for name in _semirings(args.semiring, list(SemiringName)):
        algebra = create_algebra(name, system)
        report = check_axioms(algebra, default_sampler(algebra), trials=args.trials, seed=args.seed, progress=args.progress)
        reports.append(report.to_dict())
    return _emit_reports(reports)


def cmd_check_extensibility(args: argparse.Namespace, cfg: Config) -> int:
    system = _random_system(args, cfg)
    check = check_fully_piecewise_extensible if args.full else check_piecewise_extensible
    reports = []
    for name in _semirings(args.semiring, EXTENSIBILITY_SEMIRINGS):
        algebra = create_algebra(name, system)
        sampler = default_sampler(algebra, positive=args.positive)
        family = extension_family(algebra)
        reports.append(check_family(family, sampler, trials=args.trials, seed=args.seed, progress=args.progress).to_dict())
        pairs = check(family, sampler, trials=args.trials, seed=args.seed, progress=args.progress)
        reports.append({"suite": pairs.name, "instance": algebra.name, "ok": pairs.ok, "properties": [pairs.to_dict()]})
        if args.nary:
            reports.append(check_nary_lemmas(family, sampler, trials=args.trials, seed=args.seed, progress=args.progress).to_dict())
    return _emit_reports(reports)


def cmd_demo_counterexample(args: argparse.Namespace, cfg: Config) -> int:
    report = reproduce_counterexample()
    sys.stdout.write(report.render())
    return EXIT_OK if report.refuted else EXIT_FAILED


# =============================================================================
# 参数解析
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="localcomp",
        description="赋值代数上的局部计算：边缘查询、Collect+Extend 求解与性质检查",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
示例:
  %(prog)s solve problems/max_plus.yaml
  %(prog)s marginal problems/max_plus.yaml --scope u
  %(prog)s solve-all problems/counterexample.yaml --cap 100
  %(prog)s check-axioms --semiring max-plus --trials 200 --seed 1
  %(prog)s check-extensibility --full --semiring max-times
  %(prog)s demo-counterexample
        """,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-c", "--config", help="配置文件路径 (JSON)")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="日志级别")
    parser.add_argument("--log-file", help="日志文件路径")

    sub = parser.add_subparsers(dest="command", required=True)

    def problem_command(name: str, handler: Callable[..., int], help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("problem", help="问题文件路径 (YAML)")
        p.add_argument("--heuristic", choices=[h.value for h in Heuristic if h != Heuristic.GIVEN], help="消元顺序启发式")
        p.add_argument("--order", help="逗号分隔的消元顺序（覆盖启发式）")
        p.add_argument("--max-workers", type=int, help="同层节点的并发线程数")
        p.set_defaults(handler=handler)
        return p

    marginal = problem_command("marginal", cmd_marginal, "边缘查询")
    marginal.add_argument("--scope", required=True, help="逗号分隔的查询变量（空串表示 ⊥）")

    solve = problem_command("solve", cmd_solve, "求一个解")
    solve.add_argument("--picker", choices=[p.value for p in Picker], help="扩展集选取策略")

    solve_all = problem_command("solve-all", cmd_solve_all, "求全部解")
    solve_all.add_argument("--cap", type=int, help="解数量上限")

    def check_command(name: str, handler: Callable[..., int], help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--semiring", help="逗号分隔的实例名，或 all")
        p.add_argument("--trials", type=int, help="试验次数")
        p.add_argument("--seed", type=int, help="随机种子")
        p.add_argument("--progress", action="store_true", help="显示进度条")
        p.set_defaults(handler=handler)
        return p

    check_command("check-axioms", cmd_check_axioms, "随机检查代数公理 A1–A6")
    ext = check_command("check-extensibility", cmd_check_extensibility, "检查扩展集族与分段可扩展性")
    ext.add_argument("--full", action="store_true", help="检查双向（完全分段可扩展性）")
    ext.add_argument("--positive", action="store_true", help="只采样严格为正的取值")
    ext.add_argument("--nary", action="store_true", help="同时检查多元引理")

    demo = sub.add_parser("demo-counterexample", help="在布尔反例上计算解集投影恒等式两侧")
    demo.set_defaults(handler=cmd_demo_counterexample)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """命令行入口，返回退出码"""
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        cfg = Config.load(args.config)
    except (ConfigError, ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INPUT
    setup_logging(args.log_level or cfg.log_level, args.log_file)

    errors = cfg.validate()
    if errors:
        for error in errors:
            logger.error(error)
        return EXIT_INPUT

    if getattr(args, "trials", None) is None:
        args.trials = cfg.checks.trials
    if getattr(args, "seed", None) is None:
        args.seed = cfg.checks.seed

    try:
        return args.handler(args, cfg)
    except (InputError, ConfigError, AlgebraError, QueryDomainError, StructureError, ResourceError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INPUT
    except SolutionError as e:
        sys.stderr.write(f"no solution: {e}\n")
        return EXIT_FAILED
    except ValueError as e:
        # 未知的实例名、启发式或选取策略
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INPUT
    except LocalCompError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_FAILED


__all__ = ["build_parser", "main"]
