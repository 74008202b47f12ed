from pathlib import Path
from typing import ClassVar

from pydantic import Field

from app.algebra import SystemShape
from app.factorization import (
    Configuration,
    build_interaction_matrix,
    check_toric_membership,
    enumerate_feasibility,
    inclusion_chain_report,
    is_k_feasible,
    toric_kernel,
    weight_one_support,
)
from app.io import read_state, write_csv
from app.errors import ShapeMismatchError

from ..types import CommandName, CommandResult
from .base import BaseCommand, load_shape


def parse_support(text: str, shape: SystemShape) -> list[Configuration]:
    """'100,010,001', or '1:0:0,...' when a unit has more than ten symbols."""
    support = []
    for item in text.split(","):
        item = item.strip()
        symbols = item.split(":") if ":" in item else list(item)
        if len(symbols) != shape.N or not all(s.isdigit() for s in symbols):
            raise ValueError(f"Cannot read configuration '{item}' for {shape.N} units")
        support.append(tuple(int(s) for s in symbols))
    return support


def _label(x: Configuration) -> str:
    return "".join(map(str, x)) if all(s < 10 for s in x) else ":".join(map(str, x))


class FeasibilityCommand(BaseCommand):
    name: ClassVar[CommandName] = CommandName.FEASIBILITY
    help: ClassVar[str] = "k-feasibility of supports, single or exhaustive"

    shape: str = Field(description="shape file or inline classical sizes such as 2,2,2")
    k: int = Field(description="locality")
    support: str | None = Field(None, description="one support to test, e.g. 100,010,001")
    exhaustive: bool = Field(False, description="classify every support")
    max_size: int | None = Field(None, description="largest support size for --exhaustive")
    chain: bool = Field(False, description="spot-check the Gibbs / closure / toric inclusion chain")

    def __call__(self, seed: int) -> CommandResult:
        shape = load_shape(self.shape)
        weight_one = weight_one_support(shape)
        results = {
            "weight_one": {
                "support": [_label(x) for x in weight_one],
                "feasible": is_k_feasible(weight_one, shape, self.k),
            }
        }
        if self.support is not None:
            F = parse_support(self.support, shape)
            results["support"] = {"support": [_label(x) for x in F], "feasible": is_k_feasible(F, shape, self.k)}
        if self.exhaustive:
            results["exhaustive"] = enumerate_feasibility(shape, self.k, self.max_size).model_dump(mode="json")
        if self.chain:
            report = inclusion_chain_report(shape, self.k, seed)
            results["chain"] = report.model_dump(mode="json") | {"exhibits_gap": report.exhibits_gap}
        return CommandResult(results=results)


class ToricCommand(BaseCommand):
    name: ClassVar[CommandName] = CommandName.TORIC
    help: ClassVar[str] = "interaction matrix, integer kernel and toric membership"
    exports_csv: ClassVar[bool] = True

    shape: str = Field(description="shape file or inline classical sizes such as 2,2,2")
    k: int = Field(description="locality")
    state: Path | None = Field(None, description="classical state file to test for membership")
    matrix_out: Path | None = Field(None, description="CSV file for the interaction matrix")

    def __call__(self, out: Path | None) -> CommandResult:
        shape = load_shape(self.shape)
        A = build_interaction_matrix(shape, self.k)
        kernel = toric_kernel(A)
        columns = [_label(x) for x in A.columns]
        results = {
            "rows": A.entries.shape[0],
            "columns": columns,
            "kernel_rank": len(kernel),
            "kernel": kernel.tolist(),
        }
        if out is not None:
            write_csv(out, columns, kernel.tolist())
            results["kernel_csv"] = str(out)
        if self.matrix_out is not None:
            write_csv(
                self.matrix_out,
                ["row"] + columns,
                ([label] + row for label, row in zip(A.row_labels(), A.entries.tolist())),
            )
            results["matrix_csv"] = str(self.matrix_out)
        if self.state is not None:
            rho = read_state(self.state)
            if rho.shape != shape:
                raise ShapeMismatchError(f"State shape {rho.shape.sizes} does not match {shape.sizes}")
            results["membership"] = check_toric_membership(rho.probabilities, A).model_dump(mode="json")
        return CommandResult(results=results)
