"""
Tests for the YAML configuration layer and PHASEBOUND_GRID parsing
"""

import pytest
import yaml

from core.config import CONFIG_ENV, GRID_ENV, Config, parse_grid_spec
from phasebound.errors import ConfigError


def test_defaults_written_on_first_use(config, config_file):
    assert config_file.exists()
    assert config.get("verify.grid_count") == 512
    assert config.get("output.format") == "csv"
    assert config.get("oracle.strict") is False
    with open(config_file) as f:
        assert yaml.safe_load(f)["verify"]["tail_x"] == 1000.0


def test_user_values_merge_over_defaults(config_file):
    config_file.parent.mkdir(parents=True, exist_ok=True)
    config_file.write_text("verify:\n  grid_count: 64\noutput:\n  digits: 10\n")
    config = Config(config_file)
    assert config.get("verify.grid_count") == 64
    assert config.get("verify.grid_spacing") == "log"
    assert config.get("output.digits") == 10
    assert config.get("output.format") == "csv"


def test_malformed_file_falls_back_to_defaults(config_file, capsys):
    config_file.parent.mkdir(parents=True, exist_ok=True)
    config_file.write_text("- just\n- a list\n")
    config = Config(config_file)
    assert config.get("verify.grid_count") == 512
    captured = capsys.readouterr()
    assert "Could not load config file" in captured.err
    assert captured.out == ""


def test_dot_access(config_file):
    config_file.parent.mkdir(parents=True, exist_ok=True)
    config_file.write_text("bench:\n  fail_on_containment: false\nextra:\n  section:\n    value: 3\n")
    config = Config(config_file)
    assert config.get("missing.key", "fallback") == "fallback"
    assert config.get("verify.grid_count.deeper") is None
    assert config.get("bench.fail_on_containment") is False
    assert config.get_section("extra") == {"section": {"value": 3}}


def test_sections_are_copies(config):
    section = config.get_section("verify")
    section["grid_count"] = 8
    assert config.get("verify.grid_count") == 512


def test_config_file_from_environment(monkeypatch, tmp_path):
    target = tmp_path / "elsewhere" / "phasebound.yaml"
    monkeypatch.setenv(CONFIG_ENV, str(target))
    assert Config().config_file == target
    assert target.exists()


def test_log_dir_is_created(config):
    log_dir = config.get_log_dir()
    assert log_dir.is_dir()


class TestGridOverride:

    def test_absent(self, config):
        assert config.grid_override() is None

    def test_count_only(self, config, monkeypatch):
        monkeypatch.setenv(GRID_ENV, "64")
        assert config.grid_override() == {"count": 64, "spacing": "log", "x_max": None}

    def test_full(self):
        assert parse_grid_spec("100, linear, 250") == {"count": 100, "spacing": "linear", "x_max": 250.0}

    @pytest.mark.parametrize("raw", ["", "abc", "1", "10,cubic", "10,log,-1", "10,log,x", "1,2,3,4"])
    def test_rejected(self, raw):
        with pytest.raises(ConfigError):
            parse_grid_spec(raw)
