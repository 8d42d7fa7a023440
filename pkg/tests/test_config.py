"""
配置加载与验证测试
"""

import json

import pytest

from app.config import CheckConfig, Config, SolverConfig
from app.exceptions import ConfigNotFoundError, ConfigValidationError


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in (
        "LOCALCOMP_HEURISTIC", "LOCALCOMP_PICKER", "LOCALCOMP_CAP", "LOCALCOMP_MAX_WORKERS",
        "LOCALCOMP_SEED", "LOCALCOMP_MAX_STATES", "LOCALCOMP_LOG_LEVEL",
    ):
        monkeypatch.delenv(name, raising=False)


def test_defaults_are_valid():
    cfg = Config()
    assert cfg.validate() == []
    assert cfg.solver.heuristic == "min-fill"
    assert cfg.solver.picker == "lexicographic"
    assert cfg.checks.trials == 500
    assert cfg.log_level == "WARNING"


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("LOCALCOMP_HEURISTIC", "min-degree")
    monkeypatch.setenv("LOCALCOMP_CAP", "10")
    monkeypatch.setenv("LOCALCOMP_SEED", "42")
    monkeypatch.setenv("LOCALCOMP_LOG_LEVEL", "debug")
    cfg = Config()
    assert cfg.solver.heuristic == "min-degree"
    assert cfg.solver.cap == 10
    assert cfg.checks.seed == 42
    assert cfg.log_level == "DEBUG"


def test_non_integer_environment(monkeypatch):
    monkeypatch.setenv("LOCALCOMP_MAX_WORKERS", "many")
    with pytest.raises(ConfigValidationError) as exc:
        SolverConfig()
    assert exc.value.field == "LOCALCOMP_MAX_WORKERS"


def test_validate_collects_errors():
    cfg = Config(
        solver=SolverConfig(heuristic="random", cap=0),
        checks=CheckConfig(trials=0, max_vars=12),
        log_level="loud",
    )
    errors = cfg.validate()
    assert len(errors) == 5


def test_save_and_load(tmp_path):
    cfg = Config(solver=SolverConfig(picker="first-found", max_workers=3))
    path = cfg.save(tmp_path / "nested" / "config.json")
    loaded = Config.load(path)
    assert loaded.to_dict() == cfg.to_dict()
    assert json.loads(path.read_text(encoding="utf-8"))["solver"]["picker"] == "first-found"


def test_load_missing_explicit_path(tmp_path):
    with pytest.raises(ConfigNotFoundError):
        Config.load(tmp_path / "nope.json")


def test_unknown_key(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"solver": {"speed": 3}}), encoding="utf-8")
    with pytest.raises(ConfigValidationError):
        Config.load(path)


def test_default_search_falls_back(monkeypatch, tmp_path):
    monkeypatch.setattr("pathlib.Path.home", lambda: tmp_path)
    cfg = Config.load()
    assert isinstance(cfg, Config)
