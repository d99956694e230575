"""
Enclosure table: certified bounds for the k-th zero of one family
"""

from typing import Any, Dict, Tuple

from rich.console import Console

from core.run_config import RunConfig
from core.table_writer import TableResult, TableWriter, compute_rows
from phasebound.enclosures import enclose, relative_width
from phasebound.phase_oracle import reference_zeros

COLUMNS = ["nu", "k", "lower", "lower_status", "upper", "upper_status", "truth", "rel_width"]


class EncloseTable:
    """One row per (nu, k): both bounds with their statuses and the oracle zero"""

    def __init__(self):
        self.name = "Zero Enclosures"
        self.version = "1.0.0"
        self.description = "Certified lower/upper bounds for the k-th zero of a family"

    def run(self, console: Console, logger, config, run_config: RunConfig) -> TableResult:
        """Main module entry point"""
        family = run_config.family
        logger.start_action("enclose")
        logger.log_action(f"Started {self.name}", module="enclose",
                          details={"family": family.label(), "nu": run_config.nu_values,
                                   "k": [min(run_config.k_values), max(run_config.k_values)]})

        def row(item: Tuple[float, int]) -> Dict[str, Any]:
            nu, k = item
            enclosure = enclose(family, nu, k)
            truth = reference_zeros(family, nu, run_config.k_values, run_config.strict)[k]
            return {
                "nu": nu,
                "k": k,
                "lower": enclosure.lower,
                "lower_status": enclosure.lower_status,
                "upper": enclosure.upper,
                "upper_status": enclosure.upper_status,
                "truth": truth,
                "rel_width": relative_width(enclosure),
            }

        items = [(nu, k) for nu in run_config.nu_values for k in run_config.k_values]
        rows = compute_rows(console, f"Enclosing {family.label()} zeros", row, items, run_config.workers)

        writer = TableWriter(COLUMNS, run_config.output_format, config.get("output.digits", 16))
        written = writer.write(rows, run_config.output_path)
        logger.log_action(f"Exited {self.name}", module="enclose",
                          details={"rows": written}, action_id="enclose")
        return TableResult("enclose", rows_written=written)
