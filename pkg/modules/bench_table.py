"""
Benchmark table: our enclosures next to the classical bounds and the oracle zero

Supported families are J (Hethcote, Elbert-Laforgia, Qu-Wong, McMahon),
C(tau) (McMahon with the shifted beta) and J' (Airy-type upper bound).
Every VALID inequality is checked against the reference zero; a miss raises
ContainmentError after the table has been written.
"""

import math
from typing import Any, Callable, Dict, List, Tuple

from rich.console import Console

from core.run_config import RunConfig
from core.table_writer import TableResult, TableWriter, compute_rows
from phasebound.classic_bounds import (
    ClassicBound,
    airy_upper_jprime,
    elbert_laforgia,
    hethcote,
    mcmahon,
    qu_wong,
)
from phasebound.enclosures import enclose
from phasebound.errors import ConfigError, ContainmentError, DomainError
from phasebound.families import BoundStatus, FamilyTag, ZeroFamily
from phasebound.phase_oracle import reference_zeros

# Classical inequalities may be attained (ν = 1/2 turns several into equalities)
CLASSIC_SLACK = 1e-13

_BASE_COLUMNS = ["nu", "k", "lower", "upper", "truth"]

# name -> (is_upper or None for an estimate, classic-bound function)
BoundColumns = Dict[str, Tuple[object, Callable[[float, int, ZeroFamily], float]]]


def _valid(bound: ClassicBound) -> float:
    return bound.value if bound.status is BoundStatus.VALID else math.nan


def _qu_wong(index: int) -> Callable[[float, int, ZeroFamily], float]:
    def value(nu: float, k: int, family: ZeroFamily) -> float:
        if nu == 0.0:
            return math.nan
        return _valid(qu_wong(nu, k)[index])
    return value


def _mcmahon(terms: int) -> Callable[[float, int, ZeroFamily], float]:
    def value(nu: float, k: int, family: ZeroFamily) -> float:
        try:
            return mcmahon(nu, k, terms, family.tau)
        except DomainError:
            return math.nan
    return value


_J_COLUMNS: BoundColumns = {
    "hethcote_up": (True, lambda nu, k, f: _valid(hethcote(nu, k)[0])),
    "hethcote_lo": (False, lambda nu, k, f: _valid(hethcote(nu, k)[1])),
    "el_up": (True, lambda nu, k, f: _valid(elbert_laforgia(nu, k)[0])),
    "el_lo": (False, lambda nu, k, f: _valid(elbert_laforgia(nu, k)[1])),
    "qw_lo": (False, _qu_wong(0)),
    "qw_up": (True, _qu_wong(1)),
    "mcmahon_3": (None, _mcmahon(3)),
}

_C_COLUMNS: BoundColumns = {
    "mcmahon_1": (None, _mcmahon(1)),
    "mcmahon_2": (None, _mcmahon(2)),
    "mcmahon_3": (None, _mcmahon(3)),
}

_JPRIME_COLUMNS: BoundColumns = {
    "airy_up": (True, lambda nu, k, f: airy_upper_jprime(nu, k)),
}

_FAMILY_COLUMNS = {
    FamilyTag.J: _J_COLUMNS,
    FamilyTag.C: _C_COLUMNS,
    FamilyTag.JPRIME: _JPRIME_COLUMNS,
}


def _rel_diff(value: float, truth: float) -> float:
    if math.isnan(value) or math.isnan(truth) or truth == 0.0:
        return math.nan
    return (value - truth) / truth


def bench_columns(family: ZeroFamily) -> List[str]:
    """Header for a bench table of this family"""
    names = ["lower", "upper", *_FAMILY_COLUMNS[family.tag]]
    return _BASE_COLUMNS + list(_FAMILY_COLUMNS[family.tag]) + [f"d_{n}" for n in names]


class BenchTable:
    """Side-by-side comparison with signed relative differences (bound - truth) / truth"""

    def __init__(self):
        self.name = "Classic Bounds Benchmark"
        self.version = "1.0.0"
        self.description = "Compare enclosures against McMahon, Hethcote, Elbert-Laforgia, Qu-Wong"

    def _violations(self, row: Dict[str, Any], enclosure, bounds: BoundColumns) -> List[str]:
        truth = row["truth"]
        if math.isnan(truth):
            return []
        missed = []
        if not enclosure.brackets(truth):
            missed.append("enclosure")
        for name, (is_upper, _) in bounds.items():
            value = row[name]
            if is_upper is None or math.isnan(value):
                continue
            slack = CLASSIC_SLACK * truth
            if (is_upper and value < truth - slack) or (not is_upper and value > truth + slack):
                missed.append(name)
        return missed

    def run(self, console: Console, logger, config, run_config: RunConfig) -> TableResult:
        family = run_config.family
        bounds = _FAMILY_COLUMNS.get(family.tag)
        if bounds is None:
            raise ConfigError(f"bench supports --family j, c or jprime, got {family.label()}")

        logger.start_action("bench")
        logger.log_action(f"Started {self.name}", module="bench",
                          details={"family": family.label(), "nu": run_config.nu_values})

        def row(item: Tuple[float, int]) -> Tuple[Dict[str, Any], List[str]]:
            nu, k = item
            enclosure = enclose(family, nu, k)
            truth = reference_zeros(family, nu, run_config.k_values, run_config.strict)[k]
            values: Dict[str, Any] = {
                "nu": nu,
                "k": k,
                "lower": enclosure.lower,
                "upper": enclosure.upper,
                "truth": truth,
            }
            for name, (_, bound) in bounds.items():
                values[name] = bound(nu, k, family)
            for name in ["lower", "upper", *bounds]:
                values[f"d_{name}"] = _rel_diff(values[name], truth)
            return values, self._violations(values, enclosure, bounds)

        items = [(nu, k) for nu in run_config.nu_values for k in run_config.k_values]
        results = compute_rows(console, f"Benchmarking {family.label()}", row, items, run_config.workers)
        rows = [values for values, _ in results]

        writer = TableWriter(bench_columns(family), run_config.output_format, config.get("output.digits", 16))
        written = writer.write(rows, run_config.output_path)

        failures = [(values["nu"], values["k"], missed) for values, missed in results if missed]
        for nu, k, missed in failures:
            logger.log_error(f"bounds {missed} do not bracket the reference zero", action="bench",
                             module="bench", details={"nu": nu, "k": k})
        logger.log_action(f"Exited {self.name}", module="bench",
                          details={"rows": written, "failures": len(failures)}, action_id="bench")

        if failures and config.get("bench.fail_on_containment", True):
            nu, k, missed = failures[0]
            raise ContainmentError(
                f"{len(failures)} bench rows fail containment; first at nu={nu}, k={k}: {', '.join(missed)}")
        return TableResult("bench", rows_written=written, failures=len(failures))
