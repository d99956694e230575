#!/usr/bin/env python3
"""
phasebound command line
Certified enclosures for Bessel-type zeros, written as CSV / JSON tables
"""

import argparse
import sys
import time
from pathlib import Path
from typing import List, Optional

from rich import box
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from core.config import Config
from core.logger import Logger
from core.module_loader import ModuleLoader
from core.run_config import (
    FAMILY_NAMES,
    Command,
    OutputFormat,
    RunConfig,
    parse_family,
    parse_k_range,
    parse_nu_range,
    parse_real_range,
)
from core.table_writer import TableResult
from phasebound import __version__
from phasebound.errors import (
    AccuracyDegraded,
    ConfigError,
    ContainmentError,
    DomainError,
    SturmConditionError,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CONFIG = 2
EXIT_VERIFY = 3
EXIT_DEGRADED = 4
EXIT_INTERRUPTED = 130

FAMILY_COMMANDS = (Command.ENCLOSE, Command.COUNT, Command.ORACLE, Command.BENCH, Command.ERRGRID)

RECENT_RUNS = 8


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=FAMILY_NAMES, default="j", help="zero family (default j)")
    common.add_argument("--nu", help="orders: comma list or a:b:step")
    common.add_argument("--k", default="1", help="zero indices: a..b or comma list (default 1)")
    common.add_argument("--lambda", dest="lam", help="count levels: comma list or a:b:step")
    common.add_argument("--tau", type=float, help="cylinder-function shift for c / cprime")
    common.add_argument("--eta", type=float, help="ultraspherical exponent for uprime / wprime")
    common.add_argument("--format", choices=[f.value for f in OutputFormat], help="table format")
    common.add_argument("--out", type=Path, help="write the table here instead of stdout")
    common.add_argument("--strict", action="store_true", help="fail (exit 4) outside the oracle envelope")
    common.add_argument("--workers", type=int, help="threads used to compute rows")
    common.add_argument("--grid-default", action="store_true", help="ignore PHASEBOUND_GRID")
    common.add_argument("--log-dir", type=Path, help="directory for phasebound.log and JSON records")
    common.add_argument("--config", type=Path, help="YAML configuration file")

    parser = argparse.ArgumentParser(
        prog="phasebound",
        description="Certified enclosures for zeros of Bessel, cylinder and ultraspherical Bessel functions",
    )
    parser.add_argument("--version", action="version", version=f"phasebound {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    helps = {
        Command.ENCLOSE: "lower/upper bounds for the k-th zero",
        Command.COUNT: "bounds on the number of zeros of J or J' up to lambda",
        Command.ORACLE: "reference zeros and the phase at each of them",
        Command.BENCH: "compare against the classical bounds",
        Command.ERRGRID: "log10 relative width over (nu, k)",
        Command.VERIFY: "Sturm comparison checks for every envelope",
        Command.CONSTANTS: "tau*, x* and z* per order",
    }
    for command, text in helps.items():
        sub.add_parser(command.value, parents=[common], help=text)
    sub.add_parser("status", parents=[common], help="command registry and dependency status")
    return parser


class PhaseboundCLI:
    """Front end: builds a RunConfig, dispatches to a table command, maps errors to exit codes"""

    def __init__(self, config_file: Optional[Path] = None, log_dir: Optional[Path] = None,
                 console: Optional[Console] = None):
        # the table goes to stdout, everything else to stderr
        self.console = console or Console(stderr=True)
        self.config = Config(config_file)
        self.logger = Logger(self.config, log_dir)
        self.module_loader = ModuleLoader()

    def build_run_config(self, args: argparse.Namespace) -> RunConfig:
        command = Command(args.command)

        if args.nu is not None:
            nu_values = parse_nu_range(args.nu)
        elif command is Command.VERIFY:
            nu_values = [float(v) for v in self.config.get("verify.nu_values", [0.0])]
        else:
            raise ConfigError(f"{command.value} needs --nu")

        family = None
        if command in FAMILY_COMMANDS:
            family = parse_family(args.family, args.tau, args.eta)

        workers = args.workers if args.workers is not None else int(self.config.get("run.workers", 1))
        fmt = args.format or self.config.get("output.format", "csv")
        try:
            output_format = OutputFormat(fmt)
        except ValueError:
            raise ConfigError(f"unknown output format {fmt!r}") from None

        return RunConfig(
            command=command,
            family=family,
            nu_values=nu_values,
            k_values=parse_k_range(args.k),
            lambdas=parse_real_range(args.lam, "lambda range") if args.lam else [],
            tau=args.tau,
            eta=args.eta,
            output_format=output_format,
            output_path=args.out,
            strict=bool(args.strict or self.config.get("oracle.strict", False)),
            grid_default=args.grid_default,
            workers=workers,
        )

    def display_summary(self, result: TableResult, run_config: RunConfig, elapsed: float):
        failed = result.failures > 0 or result.exit_code != EXIT_OK
        color = "red" if failed else "green"
        target = str(run_config.output_path) if run_config.output_path else "stdout"
        lines = [
            f"[bold]Command:[/bold] {result.command}",
            f"[bold]Rows written:[/bold] {result.rows_written} -> {target}",
            f"[bold]Failures:[/bold] [{color}]{result.failures}[/{color}]",
            f"[bold]Elapsed:[/bold] {elapsed:.2f}s",
        ]
        lines.extend(result.notes)
        self.console.print(Panel("\n".join(lines), title="phasebound", border_style=color, box=box.ROUNDED))

    def display_status(self):
        """Registry and dependency status"""
        table = Table(title=f"phasebound {__version__} commands", box=box.ROUNDED)
        table.add_column("Command", style="bold cyan")
        table.add_column("Name", style="bold")
        table.add_column("Status", style="bold")
        table.add_column("Dependencies")
        table.add_column("Description")

        for name, info in self.module_loader.get_module_status().items():
            ok = info["available"] and info["dependencies_ok"]
            status = "[green]●[/green] ready" if ok else "[red]●[/red] unavailable"
            deps = ", ".join(f"{d} {'✓' if present else '✗'}" for d, present in info["dependencies"].items())
            table.add_row(name, info["name"], status, deps, info["description"])

        self.console.print(table)

        recent = self.logger.get_recent_logs(limit=RECENT_RUNS)
        if recent:
            runs = Table(title="Recent activity", box=box.SIMPLE)
            runs.add_column("Time", style="dim")
            runs.add_column("Action")
            runs.add_column("Duration", justify="right")
            for entry in recent:
                duration = entry.get("duration_ms")
                action = entry["action"] if entry.get("success", True) else f"[red]{entry['action']}[/red]"
                runs.add_row(entry["timestamp"][:19], action, "" if duration is None else f"{duration} ms")
            self.console.print(runs)
        self.console.print(f"[dim]config: {self.config.config_file}  logs: {self.logger.log_dir}[/dim]")

    def run_command(self, run_config: RunConfig) -> int:
        name = run_config.command.value
        module = self.module_loader.load_module(name)
        if module is None:
            missing = [d for d, ok in self.module_loader.check_module_dependencies(name).items() if not ok]
            self.console.print(f"[red]Command '{name}' could not be loaded[/red]"
                               + (f" (missing: {', '.join(missing)})" if missing else ""))
            return EXIT_ERROR

        started = time.monotonic()
        result = module.run(self.console, self.logger, self.config, run_config)
        self.display_summary(result, run_config, time.monotonic() - started)
        return result.exit_code

    def run(self, args: argparse.Namespace) -> int:
        """Execute parsed arguments and return the process exit code"""
        self.logger.log_action("phasebound started", details={"command": args.command})
        try:
            if args.command == "status":
                self.display_status()
                return EXIT_OK
            return self.run_command(self.build_run_config(args))

        except (ConfigError, DomainError) as e:
            self.logger.log_error(str(e), action=args.command, module="cli")
            self.console.print(f"[red]Configuration error:[/red] {e}")
            return EXIT_CONFIG
        except (SturmConditionError, ContainmentError) as e:
            self.logger.log_error(str(e), action=args.command, module="cli")
            self.console.print(f"[red]Verification failed:[/red] {e}")
            return EXIT_VERIFY
        except AccuracyDegraded as e:
            self.logger.log_error(str(e), action=args.command, module="cli",
                                  details={"nu": e.nu, "x": e.x})
            self.console.print(f"[yellow]Accuracy degraded (strict):[/yellow] {e}")
            return EXIT_DEGRADED
        except KeyboardInterrupt:
            self.console.print("\n[yellow]Interrupted by user.[/yellow]")
            self.logger.log_action("phasebound interrupted by Ctrl+C")
            return EXIT_INTERRUPTED
        except Exception as e:
            self.logger.log_error(f"{type(e).__name__}: {e}", action=args.command, module="cli")
            self.console.print(f"[red]Error:[/red] {e}")
            return EXIT_ERROR
        finally:
            self.logger.log_action("phasebound finished", details={"command": args.command})


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point for the phasebound executable"""
    args = build_parser().parse_args(argv)
    try:
        cli = PhaseboundCLI(args.config, args.log_dir)
    except ConfigError as e:
        Console(stderr=True).print(f"[red]Configuration error:[/red] {e}")
        return EXIT_CONFIG
    try:
        return cli.run(args)
    finally:
        cli.logger.close()


if __name__ == "__main__":
    sys.exit(main())
