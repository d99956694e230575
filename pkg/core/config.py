"""
Configuration management for phasebound
"""

import copy
import os
import sys
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from phasebound.errors import ConfigError

GRID_ENV = "PHASEBOUND_GRID"
CONFIG_ENV = "PHASEBOUND_CONFIG"
GRID_SPACINGS = ("log", "linear")


class Config:
    """Configuration manager for phasebound runs"""

    def __init__(self, config_file: Optional[Path] = None):
        env_file = os.environ.get(CONFIG_ENV)
        if config_file is not None:
            self.config_file = Path(config_file)
        elif env_file:
            self.config_file = Path(env_file)
        else:
            self.config_file = Path.home() / ".phasebound" / "config.yaml"
        self.config_dir = self.config_file.parent
        self.log_dir = self.config_dir / "logs"

        # Default configuration
        self.default_config = {
            "app": {
                "name": "phasebound",
                "version": "1.0.0",
            },
            "logging": {
                "level": "INFO",
                "max_bytes": 10 * 1024 * 1024,
                "backup_count": 5,
                "log_dir": str(self.log_dir),
            },
            "oracle": {
                "strict": False,
            },
            "verify": {
                "grid_count": 512,
                "grid_spacing": "log",
                "edge_margin": 1e-3,
                "min_right": 100.0,
                "tail_x": 1000.0,
                "tail_tolerance": 0.2,
                "nu_values": [0.0, 0.5, 1.0, 2.7, 10.0],
            },
            "output": {
                "format": "csv",
                "digits": 16,
            },
            "run": {
                "workers": 1,
            },
            "bench": {
                "fail_on_containment": True,
            },
        }

        self._config: Dict[str, Any] = {}
        self._ensure_directories()
        self._load_config()

    def _ensure_directories(self):
        """Create the configuration directory if we can"""
        try:
            self.config_dir.mkdir(parents=True, exist_ok=True)
        except OSError:
            pass

    def _load_config(self):
        """Load configuration from file or create default"""
        if self.config_file.exists():
            try:
                with open(self.config_file, "r") as f:
                    user = yaml.safe_load(f) or {}
                if not isinstance(user, dict):
                    raise ConfigError(f"{self.config_file} does not hold a mapping")
                self._config = self._merge_configs(self.default_config, user)
            except (OSError, yaml.YAMLError, ConfigError) as e:
                print(f"Warning: Could not load config file: {e}", file=sys.stderr)
                self._config = copy.deepcopy(self.default_config)
        else:
            self._config = copy.deepcopy(self.default_config)
            self._save_config()

    def _merge_configs(self, default: Dict, user: Dict) -> Dict:
        """Recursively merge user config with defaults"""
        result = copy.deepcopy(default)
        for key, value in user.items():
            if key in result and isinstance(result[key], dict) and isinstance(value, dict):
                result[key] = self._merge_configs(result[key], value)
            else:
                result[key] = value
        return result

    def _save_config(self):
        """Save current configuration to file"""
        try:
            with open(self.config_file, "w") as f:
                yaml.dump(self._config, f, default_flow_style=False, indent=2)
        except OSError as e:
            print(f"Warning: Could not save config file: {e}", file=sys.stderr)

    def get(self, key_path: str, default: Any = None) -> Any:
        """Get configuration value using dot notation (e.g., 'verify.tail_x')"""
        value = self._config
        try:
            for key in key_path.split("."):
                value = value[key]
            return value
        except (KeyError, TypeError):
            return default

    def get_section(self, name: str) -> Dict[str, Any]:
        return copy.deepcopy(self.get(name, {}))

    def get_log_dir(self) -> Path:
        """Configured log directory, falling back to ~/.phasebound/logs when unwritable"""
        configured = Path(os.path.expanduser(str(self.get("logging.log_dir", self.log_dir))))
        try:
            configured.mkdir(parents=True, exist_ok=True)
            if os.access(configured, os.W_OK):
                return configured
        except OSError:
            pass
        fallback = Path.home() / ".phasebound" / "logs"
        fallback.mkdir(parents=True, exist_ok=True)
        return fallback

    def grid_override(self) -> Optional[Dict[str, Any]]:
        """Parse PHASEBOUND_GRID as count[,spacing[,x_max]]"""
        raw = os.environ.get(GRID_ENV)
        if raw is None or not raw.strip():
            return None
        return parse_grid_spec(raw)


def parse_grid_spec(raw: str) -> Dict[str, Any]:
    """'count[,spacing[,x_max]]' -> {'count', 'spacing', 'x_max'}"""
    parts = [p.strip() for p in raw.split(",")]
    if not 1 <= len(parts) <= 3:
        raise ConfigError(f"{GRID_ENV} must be count[,spacing[,x_max]], got {raw!r}")
    try:
        count = int(parts[0])
    except ValueError:
        raise ConfigError(f"{GRID_ENV} count must be an integer, got {parts[0]!r}") from None
    if count < 2:
        raise ConfigError(f"{GRID_ENV} count must be at least 2, got {count}")

    spacing = parts[1] if len(parts) > 1 and parts[1] else "log"
    if spacing not in GRID_SPACINGS:
        raise ConfigError(f"{GRID_ENV} spacing must be one of {GRID_SPACINGS}, got {spacing!r}")

    x_max = None
    if len(parts) > 2 and parts[2]:
        try:
            x_max = float(parts[2])
        except ValueError:
            raise ConfigError(f"{GRID_ENV} x_max must be a number, got {parts[2]!r}") from None
        if not x_max > 0.0:
            raise ConfigError(f"{GRID_ENV} x_max must be positive, got {x_max}")
    return {"count": count, "spacing": spacing, "x_max": x_max}
