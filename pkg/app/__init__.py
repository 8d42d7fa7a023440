"""
localcomp - 赋值代数上的局部计算

快速开始:
    from app import Solver, load_problem

    problem = load_problem("problems/max_plus.yaml")
    result = Solver(problem).solve()
    print(result.assignment, result.objective)
"""

__version__ = "0.1.0"

from app.config import config, Config
from app.configuration import VariableSystem
from app.instances import create_algebra
from app.models import Configuration, Domain
from app.problem import Problem, load_problem
from app.propagation import collect, query_marginal
from app.solution import solve, solve_all
from app.solver import Solver

__all__ = [
    "config",
    "Config",
    "VariableSystem",
    "create_algebra",
    "Configuration",
    "Domain",
    "Problem",
    "load_problem",
    "collect",
    "query_marginal",
    "solve",
    "solve_all",
    "Solver",
    "__version__",
]
