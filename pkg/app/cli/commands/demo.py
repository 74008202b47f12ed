from typing import ClassVar

from pydantic import Field

from app.maxent import ProjectionOptions
from app.maximizers import SearchOptions

from ..demo import run_criteria
from ..types import CommandName, CommandResult
from .base import BaseCommand, IntList


class DemoCommand(BaseCommand):
    name: ClassVar[CommandName] = CommandName.DEMO
    help: ClassVar[str] = "run the reproduction checks end to end and print a pass/fail table"

    only: IntList | None = Field(None, description="run only these criteria, e.g. 1,9")

    def __call__(self, seed: int, projection: ProjectionOptions, search: SearchOptions) -> CommandResult:
        criteria = run_criteria(seed, projection, search, self.only)
        failed = [f"criterion {c.index} failed: {c.name}" for c in criteria if not c.passed]
        return CommandResult(
            results={
                "criteria": [c.model_dump(mode="json") for c in criteria],
                "passed": sum(c.passed for c in criteria),
                "total": len(criteria),
            },
            diagnostics=failed,
            passed=not failed,
        )
