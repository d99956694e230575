"""
Shared fixtures for the phasebound test suite
"""

import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from core.config import GRID_ENV, CONFIG_ENV, Config  # noqa: E402
from core.logger import Logger  # noqa: E402


@pytest.fixture(autouse=True)
def isolated_environment(monkeypatch, tmp_path):
    """Keep every test away from ~/.phasebound and any grid override in the caller's shell"""
    monkeypatch.setenv("HOME", str(tmp_path / "home"))
    monkeypatch.delenv(GRID_ENV, raising=False)
    monkeypatch.delenv(CONFIG_ENV, raising=False)


@pytest.fixture
def config_file(tmp_path) -> Path:
    return tmp_path / "phasebound" / "config.yaml"


@pytest.fixture
def config(config_file) -> Config:
    return Config(config_file)


@pytest.fixture
def logger(config, tmp_path):
    log = Logger(config, log_dir=tmp_path / "logs")
    yield log
    log.close()
