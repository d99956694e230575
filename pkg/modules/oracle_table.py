"""
Oracle table: reference zeros and the exact phase read back at each of them
"""

import math
from typing import Any, Dict, Tuple

from rich.console import Console

from core.run_config import RunConfig
from core.table_writer import TableResult, TableWriter, compute_rows
from phasebound.families import phase_target
from phasebound.phase_oracle import phase_value, reference_zeros, zero_status

COLUMNS = ["nu", "k", "zero", "zero_status", "target", "phase"]


class OracleTable:
    """One row per (nu, k); phase at a zero equals its target up to oracle accuracy"""

    def __init__(self):
        self.name = "Phase Oracle"
        self.version = "1.0.0"
        self.description = "Reference zeros and continuous phase values"

    def run(self, console: Console, logger, config, run_config: RunConfig) -> TableResult:
        family = run_config.family
        strict = run_config.strict
        logger.start_action("oracle")
        logger.log_action(f"Started {self.name}", module="oracle",
                          details={"family": family.label(), "nu": run_config.nu_values})

        def row(item: Tuple[float, int]) -> Dict[str, Any]:
            nu, k = item
            zero = reference_zeros(family, nu, run_config.k_values, strict)[k]
            phase = math.nan
            if zero > 0.0:
                phase = phase_value(family.phase_kind, nu, zero, family.eta, strict)
            return {
                "nu": nu,
                "k": k,
                "zero": zero,
                "zero_status": zero_status(family, nu, k),
                "target": phase_target(family, k),
                "phase": phase,
            }

        items = [(nu, k) for nu in run_config.nu_values for k in run_config.k_values]
        rows = compute_rows(console, f"Locating {family.label()} zeros", row, items, run_config.workers)

        writer = TableWriter(COLUMNS, run_config.output_format, config.get("output.digits", 16))
        written = writer.write(rows, run_config.output_path)
        logger.log_action(f"Exited {self.name}", module="oracle",
                          details={"rows": written}, action_id="oracle")
        return TableResult("oracle", rows_written=written)
