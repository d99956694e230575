"""
Run configuration and range parsing for the table commands
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import List, Optional

from phasebound.errors import ConfigError, DomainError
from phasebound.families import FamilyTag, ZeroFamily


class Command(Enum):
    ENCLOSE = "enclose"
    COUNT = "count"
    ORACLE = "oracle"
    BENCH = "bench"
    ERRGRID = "errgrid"
    VERIFY = "verify"
    CONSTANTS = "constants"


class OutputFormat(Enum):
    CSV = "csv"
    JSON = "json"


@dataclass
class RunConfig:
    command: Command
    family: Optional[ZeroFamily] = None
    nu_values: List[float] = field(default_factory=lambda: [0.0])
    k_values: List[int] = field(default_factory=lambda: [1])
    lambdas: List[float] = field(default_factory=list)
    tau: Optional[float] = None
    eta: Optional[float] = None
    output_format: OutputFormat = OutputFormat.CSV
    output_path: Optional[Path] = None
    strict: bool = False
    grid_default: bool = False
    workers: int = 1

    def __post_init__(self):
        if not self.nu_values:
            raise ConfigError("nu range is empty")
        if not self.k_values:
            raise ConfigError("k range is empty")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")


def _parse_float(text: str, what: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ConfigError(f"{what}: {text!r} is not a number") from None
    if not math.isfinite(value):
        raise ConfigError(f"{what}: {text!r} is not finite")
    return value


def parse_real_range(text: str, what: str = "range") -> List[float]:
    """'0,0.5,1' or 'a:b:step' (inclusive end, values a + i·step)"""
    text = (text or "").strip()
    if not text:
        raise ConfigError(f"{what} is empty")

    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigError(f"{what} must be a:b:step, got {text!r}")
        start, stop, step = (_parse_float(p, what) for p in parts)
        if not step > 0.0:
            raise ConfigError(f"{what} step must be positive, got {step}")
        if stop < start:
            raise ConfigError(f"{what} end {stop} lies below start {start}")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [start + i * step for i in range(count)]

    values = [_parse_float(p, what) for p in text.split(",") if p.strip()]
    if not values:
        raise ConfigError(f"{what} is empty")
    return values


def parse_nu_range(text: str) -> List[float]:
    values = parse_real_range(text, "nu range")
    if any(v < 0.0 for v in values):
        raise ConfigError(f"nu values must be >= 0, got {text!r}")
    return values


def parse_k_range(text: str) -> List[int]:
    """'a..b', a single index, or a comma list"""
    text = (text or "").strip()
    if not text:
        raise ConfigError("k range is empty")
    try:
        if ".." in text:
            first, last = text.split("..", 1)
            values = list(range(int(first), int(last) + 1))
        else:
            values = [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise ConfigError(f"k range must be a..b or a list of integers, got {text!r}") from None
    if not values:
        raise ConfigError(f"k range {text!r} is empty")
    if min(values) < 1:
        raise ConfigError(f"k values must be >= 1, got {text!r}")
    return values


FAMILY_NAMES = tuple(tag.value.lower() for tag in FamilyTag)


def parse_family(name: str, tau: Optional[float] = None, eta: Optional[float] = None) -> ZeroFamily:
    """Family from its CLI name; tau and eta are checked against what the family takes"""
    key = (name or "").strip().upper()
    if key not in FamilyTag.__members__:
        raise ConfigError(f"unknown family {name!r}; expected one of {', '.join(FAMILY_NAMES)}")
    try:
        return ZeroFamily(FamilyTag[key], tau=tau, eta=eta)
    except DomainError as e:
        raise ConfigError(str(e)) from None
