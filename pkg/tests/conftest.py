"""
共享测试夹具
"""

from pathlib import Path

import numpy as np
import pytest

from app.algebra import Valuation, ValuationAlgebra
from app.configuration import VariableSystem
from app.instances import create_algebra
from app.oracle import counterexample_fixture

PROBLEMS_DIR = Path(__file__).parent.parent / "problems"


@pytest.fixture
def problems_dir() -> Path:
    return PROBLEMS_DIR


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(0)


@pytest.fixture
def uv_system() -> VariableSystem:
    """u、v 的框架都是 {0, 1}"""
    return VariableSystem({"u": [0, 1], "v": [0, 1]})


@pytest.fixture
def max_plus(uv_system: VariableSystem) -> ValuationAlgebra:
    return create_algebra("max-plus", uv_system)


@pytest.fixture
def max_plus_factors(max_plus: ValuationAlgebra) -> list[Valuation]:
    """φ1 over {u} = (2, 5)，φ2 over {u, v} = (1, 4, 0, 3)"""
    return [
        max_plus.tabulate(["u"], [2, 5]),
        max_plus.tabulate(["u", "v"], [1, 4, 0, 3]),
    ]


@pytest.fixture
def counterexample() -> tuple[ValuationAlgebra, Valuation]:
    """布尔 φ(x, y) = [x = y]"""
    return counterexample_fixture()


@pytest.fixture
def xyz_system() -> VariableSystem:
    return VariableSystem.from_sizes({"x": 2, "y": 2, "z": 2})
