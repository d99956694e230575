"""
Logging system for phasebound runs
"""

import json
import logging
import logging.handlers
import threading
from dataclasses import asdict, dataclass
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

MAX_JSON_ENTRIES = 1000


@dataclass
class LogEntry:
    """Structured log entry"""
    timestamp: str
    level: str
    action: str
    module: str
    details: Dict[str, Any]
    success: bool
    duration_ms: Optional[int] = None
    error_message: Optional[str] = None


class Logger:
    """Rotating text log plus JSON run records"""

    def __init__(self, config=None, log_dir: Optional[Path] = None):
        self.config = config
        if log_dir is not None:
            self.log_dir = Path(log_dir)
        elif config is not None:
            self.log_dir = Path(config.get_log_dir())
        else:
            self.log_dir = Path.home() / ".phasebound" / "logs"

        self._ensure_directories()
        self._setup_logging()

        # Performance tracking
        self._action_start_times: Dict[str, datetime] = {}
        self._json_lock = threading.Lock()

    def _ensure_directories(self):
        """Create the log directory, falling back to the user directory"""
        try:
            self.log_dir.mkdir(parents=True, exist_ok=True)
        except PermissionError:
            self.log_dir = Path.home() / ".phasebound" / "logs"
            self.log_dir.mkdir(parents=True, exist_ok=True)

    def _setting(self, key: str, default: Any) -> Any:
        return self.config.get(key, default) if self.config is not None else default

    def _setup_logging(self):
        """Configure the 'phasebound' logger namespace; library modules log beneath it"""
        self.logger = logging.getLogger("phasebound")
        level = str(self._setting("logging.level", "INFO")).upper()
        self.logger.setLevel(getattr(logging, level, logging.INFO))

        # Remove existing handlers
        for handler in self.logger.handlers[:]:
            self.logger.removeHandler(handler)
            handler.close()

        formatter = logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")

        # File handler with rotation
        file_handler = logging.handlers.RotatingFileHandler(
            self.log_dir / "phasebound.log",
            maxBytes=int(self._setting("logging.max_bytes", 10 * 1024 * 1024)),
            backupCount=int(self._setting("logging.backup_count", 5)),
        )
        file_handler.setFormatter(formatter)
        self.logger.addHandler(file_handler)

        # stderr handler, errors only
        console_handler = logging.StreamHandler()
        console_handler.setLevel(logging.ERROR)
        console_handler.setFormatter(formatter)
        self.logger.addHandler(console_handler)

    def start_action(self, action_id: str):
        """Start timing an action"""
        self._action_start_times[action_id] = datetime.now()

    def _get_duration(self, action_id: str) -> Optional[int]:
        """Get action duration in milliseconds"""
        start_time = self._action_start_times.pop(action_id, None)
        if start_time is None:
            return None
        return int((datetime.now() - start_time).total_seconds() * 1000)

    def _create_log_entry(
        self,
        level: str,
        action: str,
        module: str = "core",
        details: Dict[str, Any] = None,
        success: bool = True,
        error_message: str = None,
        action_id: str = None,
    ) -> LogEntry:
        return LogEntry(
            timestamp=datetime.now().isoformat(),
            level=level,
            action=action,
            module=module,
            details=details or {},
            success=success,
            duration_ms=self._get_duration(action_id) if action_id else None,
            error_message=error_message,
        )

    def _write_json_log(self, entry: LogEntry, log_file: str = "activity.json"):
        """Append an entry to a JSON log, keeping the last MAX_JSON_ENTRIES"""
        json_log_file = self.log_dir / log_file
        with self._json_lock:
            try:
                logs = []
                if json_log_file.exists():
                    with open(json_log_file, "r") as f:
                        try:
                            logs = json.load(f)
                        except json.JSONDecodeError:
                            logs = []

                logs.append(asdict(entry))
                logs = logs[-MAX_JSON_ENTRIES:]

                with open(json_log_file, "w") as f:
                    json.dump(logs, f, indent=2, default=str)
            except OSError as e:
                self.logger.error(f"Failed to write JSON log: {e}")

    def log_action(
        self,
        action: str,
        module: str = "core",
        details: Dict[str, Any] = None,
        action_id: str = None,
    ):
        """Log a successful action"""
        entry = self._create_log_entry("INFO", action, module, details, True, action_id=action_id)
        self.logger.info(f"{action} - {details or {}}")
        self._write_json_log(entry)

    def log_error(
        self,
        error_message: str,
        action: str = "unknown",
        module: str = "core",
        details: Dict[str, Any] = None,
        action_id: str = None,
    ):
        """Log an error"""
        entry = self._create_log_entry("ERROR", action, module, details, False, error_message, action_id)
        self.logger.error(f"{action} failed: {error_message} - {details or {}}")
        self._write_json_log(entry, "errors.json")

    def log_warning(
        self,
        warning_message: str,
        action: str = "unknown",
        module: str = "core",
        details: Dict[str, Any] = None,
    ):
        """Log a warning"""
        entry = self._create_log_entry("WARNING", action, module, details, True, warning_message)
        self.logger.warning(f"{action}: {warning_message} - {details or {}}")
        self._write_json_log(entry, "warnings.json")

    def get_recent_logs(self, log_type: str = "activity", limit: int = 50) -> List[Dict[str, Any]]:
        """Get recent log entries"""
        log_file = self.log_dir / f"{log_type}.json"
        if not log_file.exists():
            return []
        try:
            with open(log_file, "r") as f:
                logs = json.load(f)
            return logs[-limit:] if logs else []
        except (OSError, json.JSONDecodeError) as e:
            self.logger.error(f"Failed to read logs: {e}")
            return []

    def close(self):
        """Detach and close handlers (tests open many loggers on temp dirs)"""
        for handler in self.logger.handlers[:]:
            self.logger.removeHandler(handler)
            handler.close()
