"""
Error grid: log10 of the relative enclosure width over (nu, k)
"""

import math
from typing import Any, Dict, Tuple

from rich.console import Console

from core.run_config import RunConfig
from core.table_writer import TableResult, TableWriter, compute_rows
from phasebound.enclosures import enclose, relative_width
from phasebound.errors import ConfigError
from phasebound.families import FamilyTag

COLUMNS = ["nu", "k", "rel_width", "log10_rel_width"]

GRID_FAMILIES = (FamilyTag.J, FamilyTag.JPRIME, FamilyTag.Y, FamilyTag.YPRIME)


class ErrgridTable:
    """Contour data; cells without a two-sided enclosure stay blank"""

    def __init__(self):
        self.name = "Relative Width Grid"
        self.version = "1.0.0"
        self.description = "log10 relative enclosure width over (nu, k)"

    def run(self, console: Console, logger, config, run_config: RunConfig) -> TableResult:
        family = run_config.family
        if family.tag not in GRID_FAMILIES:
            raise ConfigError(f"errgrid supports --family j, jprime, y or yprime, got {family.label()}")

        logger.start_action("errgrid")
        logger.log_action(f"Started {self.name}", module="errgrid",
                          details={"family": family.label(), "cells": len(run_config.nu_values) * len(run_config.k_values)})

        def row(item: Tuple[float, int]) -> Dict[str, Any]:
            nu, k = item
            width = relative_width(enclose(family, nu, k))
            log_width = math.log10(width) if width > 0.0 else math.nan
            return {"nu": nu, "k": k, "rel_width": width, "log10_rel_width": log_width}

        items = [(nu, k) for nu in run_config.nu_values for k in run_config.k_values]
        rows = compute_rows(console, f"Error grid for {family.label()}", row, items, run_config.workers)

        writer = TableWriter(COLUMNS, run_config.output_format, config.get("output.digits", 16))
        written = writer.write(rows, run_config.output_path)
        logger.log_action(f"Exited {self.name}", module="errgrid",
                          details={"rows": written}, action_id="errgrid")
        return TableResult("errgrid", rows_written=written)
