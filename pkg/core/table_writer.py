"""
Deterministic CSV / JSON rendering of result tables
"""

import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence

from rich.console import Console
from rich.progress import BarColumn, Progress, SpinnerColumn, TextColumn

from core.run_config import OutputFormat


class TableWriter:
    """Renders rows in order; identical rows give byte-identical output"""

    def __init__(self, columns: Sequence[str], fmt: OutputFormat = OutputFormat.CSV, digits: int = 16):
        self.columns = list(columns)
        self.fmt = fmt
        self.digits = digits

    def _csv_cell(self, value: Any) -> str:
        if value is None:
            return ""
        if isinstance(value, Enum):
            return value.name
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, float):
            if math.isnan(value):
                return ""
            return f"{value:.{self.digits}g}"
        return str(value)

    @staticmethod
    def _json_value(value: Any) -> Any:
        if isinstance(value, Enum):
            return value.name
        if isinstance(value, float) and not math.isfinite(value):
            return None
        return value

    def render(self, rows: Iterable[Dict[str, Any]]) -> str:
        rows = list(rows)
        if self.fmt is OutputFormat.JSON:
            records = [{c: self._json_value(row.get(c)) for c in self.columns} for row in rows]
            return json.dumps(records, sort_keys=True, indent=2, allow_nan=False) + "\n"

        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.columns)
        for row in rows:
            writer.writerow([self._csv_cell(row.get(c)) for c in self.columns])
        return buffer.getvalue()

    def write(self, rows: Iterable[Dict[str, Any]], path: Optional[Path] = None) -> int:
        """Write rows to path, or stdout when path is None; returns the row count"""
        rows: List[Dict[str, Any]] = list(rows)
        text = self.render(rows)
        if path is None:
            sys.stdout.write(text)
            sys.stdout.flush()
        else:
            path = Path(path)
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, "w", newline="") as f:
                f.write(text)
        return len(rows)


@dataclass
class TableResult:
    """What a table command reports back to the front end"""
    command: str
    rows_written: int = 0
    failures: int = 0
    exit_code: int = 0
    notes: List[str] = field(default_factory=list)


def map_rows(func: Callable[[Any], Any], items: Sequence[Any], workers: int = 1) -> List[Any]:
    """Apply func to items, optionally on a thread pool; results keep item order"""
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def compute_rows(
    console: Optional[Console],
    description: str,
    func: Callable[[Any], Any],
    items: Sequence[Any],
    workers: int = 1,
) -> List[Any]:
    """map_rows with a transient progress bar on console"""
    if console is None:
        return map_rows(func, items, workers)

    with Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        TextColumn("[progress.percentage]{task.percentage:>3.0f}%"),
        console=console,
        transient=True,
    ) as progress:
        task = progress.add_task(description, total=len(items))

        def tracked(item):
            result = func(item)
            progress.advance(task)
            return result

        return map_rows(tracked, items, workers)
