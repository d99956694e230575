"""
Sturm verification table: potential-difference signs (C2) and tail limits (C3')
"""

from typing import Any, Dict, List, Optional, Tuple

from rich.console import Console

from core.run_config import RunConfig
from core.table_writer import TableResult, TableWriter, compute_rows
from phasebound.errors import SturmConditionError
from phasebound.liouville import ComparisonPair, default_grid, tail_constant, verify_c2, verify_c3

COLUMNS = [
    "check", "pair", "nu", "eta", "min_diff", "argmin", "closed_min", "x_min", "x_max", "count",
    "tail_estimate", "tail_expected", "passed",
]

EXIT_VERIFY_FAILED = 3


def _eta_for(pair: ComparisonPair, nu: float) -> Optional[float]:
    return 0.5 * nu if pair is ComparisonPair.PSI_LOWER_VS_EXACT else None


def verify_cases(nu_values: List[float]) -> List[Tuple[ComparisonPair, float, Optional[float]]]:
    """Every (pair, nu, eta) to check; the psi pair needs nu > 0 and runs at eta = nu/2"""
    cases = []
    for nu in nu_values:
        for pair in ComparisonPair:
            if pair is ComparisonPair.PSI_LOWER_VS_EXACT and nu == 0.0:
                continue
            cases.append((pair, nu, _eta_for(pair, nu)))
    return cases


class VerifyTable:
    """Runs both checks for every pair over a nu grid; any failure sets exit code 3"""

    def __init__(self):
        self.name = "Sturm Verification"
        self.version = "1.0.0"
        self.description = "Potential-difference sign checks and tail ordering checks"

    def _grid_settings(self, config, run_config: RunConfig) -> Dict[str, Any]:
        section = config.get_section("verify")
        settings = {
            "count": section.get("grid_count"),
            "spacing": section.get("grid_spacing"),
            "edge_margin": section.get("edge_margin"),
            "min_right": section.get("min_right"),
        }
        if not run_config.grid_default:
            override = config.grid_override()
            if override:
                settings.update({k: v for k, v in override.items() if v is not None})
        return settings

    def run(self, console: Console, logger, config, run_config: RunConfig) -> TableResult:
        section = config.get_section("verify")
        settings = self._grid_settings(config, run_config)
        tail_x = float(section.get("tail_x", 1000.0))
        tolerance = float(section.get("tail_tolerance", 0.2))
        cases = verify_cases(run_config.nu_values)

        logger.start_action("verify")
        logger.log_action(f"Started {self.name}", module="verify",
                          details={"nu": run_config.nu_values, "grid": settings, "cases": len(cases)})

        def c2_row(case) -> Dict[str, Any]:
            pair, nu, eta = case
            grid = default_grid(pair, nu, eta, settings)
            report = verify_c2(pair, nu, eta, grid)
            return {
                "check": "C2", "pair": pair, "nu": nu, "eta": eta,
                "min_diff": report.min_diff, "argmin": report.argmin, "closed_min": report.closed_min,
                "x_min": grid.x_min, "x_max": grid.x_max, "count": grid.count,
                "passed": report.passed,
            }

        def c3_row(case) -> Dict[str, Any]:
            pair, nu, eta = case
            _, expected = tail_constant(pair)
            row = {"check": "C3", "pair": pair, "nu": nu, "eta": eta, "x_max": tail_x, "tail_expected": expected}
            try:
                row["tail_estimate"] = verify_c3(pair, nu, eta, tail_x, tolerance, run_config.strict)
                row["passed"] = True
            except SturmConditionError as e:
                logger.log_error(str(e), action="verify_c3", module="verify",
                                 details={"pair": pair.value, "nu": nu, "eta": eta})
                row["passed"] = False
            return row

        rows = compute_rows(console, "C2 potential checks", c2_row, cases, run_config.workers)
        rows += compute_rows(console, "C3 tail checks", c3_row, cases, run_config.workers)

        failures = sum(1 for r in rows if not r["passed"])
        for r in rows:
            if r["check"] == "C2" and not r["passed"]:
                logger.log_error(f"min difference {r['min_diff']:.3e} at x={r['argmin']:.6g}",
                                 action="verify_c2", module="verify",
                                 details={"pair": r["pair"].value, "nu": r["nu"], "eta": r["eta"]})

        writer = TableWriter(COLUMNS, run_config.output_format, config.get("output.digits", 16))
        written = writer.write(rows, run_config.output_path)
        logger.log_action(f"Exited {self.name}", module="verify",
                          details={"rows": written, "failures": failures}, action_id="verify")
        return TableResult("verify", rows_written=written, failures=failures,
                           exit_code=EXIT_VERIFY_FAILED if failures else 0)
