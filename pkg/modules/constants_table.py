"""
Critical constants per order: tau*, x* and z*
"""

from typing import Any, Dict

from rich.console import Console

from core.run_config import RunConfig
from core.table_writer import TableResult, TableWriter, compute_rows
from phasebound.envelopes import critical_points
from phasebound.phase_oracle import tau_star

COLUMNS = ["nu", "tau_star", "x_star", "z_star"]


class ConstantsTable:

    def __init__(self):
        self.name = "Critical Constants"
        self.version = "1.0.0"
        self.description = "tau*, x* and z* per order"

    def run(self, console: Console, logger, config, run_config: RunConfig) -> TableResult:
        logger.start_action("constants")
        logger.log_action(f"Started {self.name}", module="constants", details={"nu": run_config.nu_values})

        def row(nu: float) -> Dict[str, Any]:
            points = critical_points(nu)
            return {"nu": nu, "tau_star": tau_star(nu), "x_star": points.x_star, "z_star": points.z_star}

        rows = compute_rows(console, "Critical constants", row, run_config.nu_values, run_config.workers)

        writer = TableWriter(COLUMNS, run_config.output_format, config.get("output.digits", 16))
        written = writer.write(rows, run_config.output_path)
        logger.log_action(f"Exited {self.name}", module="constants",
                          details={"rows": written}, action_id="constants")
        return TableResult("constants", rows_written=written)
