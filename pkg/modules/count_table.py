"""
Counting table: bounds on the number of zeros of J_nu or J'_nu up to lambda
"""

from typing import Any, Dict, Tuple

from rich.console import Console

from core.run_config import RunConfig
from core.table_writer import TableResult, TableWriter, compute_rows
from phasebound.enclosures import count_bessel_zeros, count_deriv_zeros
from phasebound.errors import ConfigError
from phasebound.families import FamilyTag
from phasebound.phase_oracle import true_count
from phasebound.special_oracle import check_envelope

COLUMNS = ["nu", "lambda", "lower", "upper", "truth"]

_COUNTERS = {
    FamilyTag.J: count_bessel_zeros,
    FamilyTag.JPRIME: count_deriv_zeros,
}


class CountTable:
    """One row per (nu, lambda)"""

    def __init__(self):
        self.name = "Zero Counts"
        self.version = "1.0.0"
        self.description = "Bounds on the number of zeros of J or J' below a level"

    def _validate(self, run_config: RunConfig):
        if run_config.family.tag not in _COUNTERS:
            raise ConfigError(f"count supports --family j or jprime, got {run_config.family.label()}")
        if not run_config.lambdas:
            raise ConfigError("count needs --lambda")
        for nu in run_config.nu_values:
            for lam in run_config.lambdas:
                if not lam > nu:
                    raise ConfigError(f"lambda must exceed nu, got nu={nu}, lambda={lam}")

    def run(self, console: Console, logger, config, run_config: RunConfig) -> TableResult:
        self._validate(run_config)
        family = run_config.family
        counter = _COUNTERS[family.tag]
        logger.start_action("count")
        logger.log_action(f"Started {self.name}", module="count",
                          details={"family": family.label(), "nu": run_config.nu_values,
                                   "lambda": run_config.lambdas})

        def row(item: Tuple[float, float]) -> Dict[str, Any]:
            nu, lam = item
            bound = counter(nu, lam)
            if check_envelope(nu, lam, run_config.strict):
                logger.log_warning("count reference outside the oracle envelope", action="count",
                                   module="count", details={"nu": nu, "lambda": lam})
                truth = None
            else:
                truth = true_count(family, nu, lam)
            return {"nu": nu, "lambda": lam, "lower": bound.lower, "upper": bound.upper, "truth": truth}

        items = [(nu, lam) for nu in run_config.nu_values for lam in run_config.lambdas]
        rows = compute_rows(console, f"Counting {family.label()} zeros", row, items, run_config.workers)

        failures = sum(1 for r in rows if r["truth"] is not None
                       and not r["lower"] <= r["truth"] <= r["upper"])
        if failures:
            logger.log_error(f"{failures} count bounds miss the reference count", action="count",
                             module="count")

        writer = TableWriter(COLUMNS, run_config.output_format, config.get("output.digits", 16))
        written = writer.write(rows, run_config.output_path)
        logger.log_action(f"Exited {self.name}", module="count",
                          details={"rows": written, "failures": failures}, action_id="count")
        return TableResult("count", rows_written=written, failures=failures)
