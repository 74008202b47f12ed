from pathlib import Path
from typing import ClassVar

from pydantic import Field

from app.hierarchy import build_model
from app.io import dump_state, read_hypergraph
from app.maximizers import SearchOptions, search_maximizers

from ..types import CommandName, CommandResult, LogUnit
from .base import BaseCommand, load_shape


class MaximizeCommand(BaseCommand):
    name: ClassVar[CommandName] = CommandName.MAXIMIZE
    help: ClassVar[str] = "local maximizers of the divergence from a hierarchical model"

    hypergraph: Path = Field(description="hypergraph file")
    shape: str = Field(description="shape file or inline sizes such as 2,2,2 or q2,q2")
    quantum: bool = Field(False, description="inline sizes without a prefix are quantum units")
    restarts: int | None = Field(None, description="number of random restarts")
    max_steps: int | None = Field(None, description="ascent steps per restart")

    def __call__(self, search: SearchOptions, seed: int, units: LogUnit) -> CommandResult:
        shape = load_shape(self.shape, self.quantum)
        model = build_model(shape, read_hypergraph(self.hypergraph))
        overrides = {key: value for key in ("restarts", "max_steps") if (value := getattr(self, key)) is not None}
        found = search_maximizers(model, search.model_copy(update=overrides), seed)

        reports = [
            report.model_dump(mode="json", exclude={"state"})
            | {"divergence": units.convert(report.divergence), "state": dump_state(report.state)}
            for report in found.reports
        ]
        diagnostics = []
        if found.failed:
            diagnostics.append(f"{found.failed} restarts failed")
        if found.unconverged:
            diagnostics.append(f"{found.unconverged} restarts hit the step limit")
        if found.rejected:
            diagnostics.append(f"{found.rejected} restarts failed the exponential-form check")
        return CommandResult(
            results={
                "reports": reports,
                "restarts": found.restarts,
                "seed": found.seed,
                "failed": found.failed,
                "unconverged": found.unconverged,
                "rejected": found.rejected,
                "global_bound": units.convert(found.global_bound),
                "exp_form_tol": search.exp_form_tol,
            },
            diagnostics=diagnostics,
            converged=bool(found.reports),
        )
