from .runner import Report, RunConfig, demo_suite, run, write_report
from .types import CommandName, CommandResult, LogUnit

__all__ = ["CommandName", "CommandResult", "LogUnit", "Report", "RunConfig", "demo_suite", "run", "write_report"]
