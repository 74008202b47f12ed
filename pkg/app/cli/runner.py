"""
Dispatch of one command run: options from the run config, exit codes, and
the JSON report.
"""

import hashlib
import json
import logging
import sys
import time
from pathlib import Path
from typing import Any, TextIO

from pydantic import BaseModel, Field

from app.config import FeasibilitySettings, SearchSettings, SolverSettings, settings
from app.constants import EXIT_CHECK_FAILED, EXIT_NOT_CONVERGED, EXIT_OK, EXIT_VALIDATION
from app.io import write_json
from app.maxent import ProjectionOptions
from app.maximizers import SearchOptions

from .commands import get_command
from .types import CommandName, CommandResult, LogUnit

logger = logging.getLogger(__name__)


class RunConfig(BaseModel):
    command: CommandName
    # command arguments, input paths included
    arguments: dict[str, Any] = Field(default_factory=dict)
    tol: float = Field(default_factory=lambda: settings.solver.tol)
    seed: int = Field(default_factory=lambda: settings.seed)
    units: LogUnit = LogUnit.NATS
    out: Path | None = None


class Report(BaseModel):
    command: CommandName
    config: RunConfig
    units: LogUnit
    tolerance: float
    # settings that differ from the shipped defaults
    non_standard: list[str]
    results: dict[str, Any]
    diagnostics: list[str]
    # sha256 of the canonical results JSON
    digest: str
    exit_code: int
    wall_time: float

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)


def non_standard_settings(config: RunConfig) -> list[str]:
    changed = []
    if config.tol != SolverSettings().tol:
        changed.append(f"tol={config.tol:g}")
    for group, default in (
        ("solver", SolverSettings()),
        ("search", SearchSettings()),
        ("feasibility", FeasibilitySettings()),
    ):
        current = getattr(settings, group)
        for key, value in default.model_dump().items():
            if getattr(current, key) != value:
                changed.append(f"{group}.{key}={getattr(current, key)}")
    return changed


def _digest(results: dict) -> str:
    canonical = json.dumps(results, sort_keys=True, default=str).encode()
    return hashlib.sha256(canonical).hexdigest()


def run(config: RunConfig) -> Report:
    started = time.perf_counter()
    command = get_command(config.command)
    context = {
        "config": config,
        "seed": config.seed,
        "units": config.units,
        "out": config.out,
        "projection": ProjectionOptions(tol=config.tol),
        "search": SearchOptions(),
    }
    logger.info(f"Running {config.command.value} with seed {config.seed}")

    try:
        outcome = command.model_validate(config.arguments).run(context)
    except ValueError as exc:
        logger.error(f"{config.command.value}: {exc}")
        outcome = CommandResult(diagnostics=[str(exc)])
        exit_code = EXIT_VALIDATION
    else:
        if not outcome.passed:
            exit_code = EXIT_CHECK_FAILED
        elif not outcome.converged:
            exit_code = EXIT_NOT_CONVERGED
        else:
            exit_code = EXIT_OK

    non_standard = non_standard_settings(config)
    if non_standard:
        logger.warning(f"Non-standard configuration: {', '.join(non_standard)}")
    results = json.loads(json.dumps(outcome.results, default=str))
    return Report(
        command=config.command,
        config=config,
        units=config.units,
        tolerance=config.tol,
        non_standard=non_standard,
        results=results,
        diagnostics=outcome.diagnostics,
        digest=_digest(results),
        exit_code=exit_code,
        wall_time=time.perf_counter() - started,
    )


def write_report(report: Report, stream: TextIO | None = None):
    """To --out unless the command uses --out for a CSV export; stdout otherwise."""
    command = get_command(report.command)
    if report.config.out is not None and not command.exports_csv:
        write_json(report.config.out, report.model_dump(mode="json"))
    else:
        (stream or sys.stdout).write(report.to_json() + "\n")


def demo_suite(config: RunConfig | None = None) -> Report:
    """Every reproduction check; a failing criterion is named in the diagnostics."""
    return run(config or RunConfig(command=CommandName.DEMO))
