from enum import Enum
from typing import Any

from pydantic import BaseModel, Field

from app.constants import LOG2


class CommandName(str, Enum):
    PROJECT = "project"
    CK = "ck"
    DECOMPOSE = "decompose"
    MULTIINFO = "multiinfo"
    DIMS = "dims"
    BASIS = "basis"
    FEASIBILITY = "feasibility"
    TORIC = "toric"
    MAXIMIZE = "maximize"
    BELL = "bell"
    THEOREM1 = "theorem1"
    FIG1 = "fig1"
    DEMO = "demo"


class LogUnit(str, Enum):
    """Display unit of entropies and divergences; values are computed in nats."""

    NATS = "nats"
    BITS = "bits"

    def convert(self, value: float | None) -> float | None:
        if value is None or self is LogUnit.NATS:
            return value
        return value / LOG2


class CommandResult(BaseModel):
    results: dict[str, Any] = Field(default_factory=dict)
    diagnostics: list[str] = Field(default_factory=list)
    converged: bool = True
    # verification commands only
    passed: bool = True
