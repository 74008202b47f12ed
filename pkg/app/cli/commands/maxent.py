from pathlib import Path
from typing import ClassVar

from pydantic import Field

from app.hierarchy import build_model
from app.io import dump_state, read_hypergraph, read_state
from app.maxent import (
    ProjectionOptions,
    ProjectionResult,
    SolverMethod,
    correlation_ck,
    decompose,
    maxent_project,
    multi_information,
    project_k,
)
from app.two_qubit import TWO_QUBITS, product_state_distance

from ..types import CommandName, CommandResult, LogUnit
from .base import BaseCommand


def projection_payload(result: ProjectionResult, units: LogUnit) -> dict:
    payload = result.model_dump(mode="json", exclude={"pi"})
    for key in ("divergence", "entropy_pi", "entropy_rho"):
        payload[key] = units.convert(getattr(result, key))
    payload["pi"] = dump_state(result.pi)
    return payload


class ProjectCommand(BaseCommand):
    name: ClassVar[CommandName] = CommandName.PROJECT
    help: ClassVar[str] = "maximum-entropy projection of a state onto a hierarchical model"

    state: Path = Field(description="state file")
    hypergraph: Path = Field(description="hypergraph file")
    method: SolverMethod = Field(SolverMethod.AUTO, description="auto, dual, primal or ipf")

    def __call__(self, projection: ProjectionOptions, units: LogUnit) -> CommandResult:
        rho = read_state(self.state)
        model = build_model(rho.shape, read_hypergraph(self.hypergraph))
        result = maxent_project(rho, model, projection.model_copy(update={"method": self.method}))
        return CommandResult(
            results=projection_payload(result, units),
            diagnostics=result.diagnostics,
            converged=result.converged,
        )


class CkCommand(BaseCommand):
    name: ClassVar[CommandName] = CommandName.CK
    help: ClassVar[str] = "divergence c_k from the k-local Gibbs family"

    state: Path = Field(description="state file")
    k: int = Field(description="locality, 1..N")

    def __call__(self, projection: ProjectionOptions, units: LogUnit) -> CommandResult:
        rho = read_state(self.state)
        if self.k == rho.shape.N:
            value = correlation_ck(rho, self.k, projection)
            return CommandResult(
                results={"k": self.k, "c": units.convert(value), "constraint_residual": 0.0, "method": "exact"}
            )
        result = project_k(rho, self.k, projection)
        return CommandResult(
            results={
                "k": self.k,
                "c": units.convert(result.divergence),
                "constraint_residual": result.constraint_residual,
                "tolerance": result.tolerance,
                "method": result.method.value,
                "iterations": result.iterations,
            },
            diagnostics=result.diagnostics,
            converged=result.converged,
        )


class DecomposeCommand(BaseCommand):
    name: ClassVar[CommandName] = CommandName.DECOMPOSE
    help: ClassVar[str] = "table of c_k and irreducible correlations C_k"

    state: Path = Field(description="state file")

    def __call__(self, projection: ProjectionOptions, units: LogUnit) -> CommandResult:
        table = decompose(read_state(self.state), projection)
        rows = [row.model_dump() | {"c": units.convert(row.c)} for row in table.rows]
        irreducible = [
            item.model_dump()
            | {"difference": units.convert(item.difference), "divergence": units.convert(item.divergence)}
            for item in table.irreducible
        ]
        diagnostics = [f"C_{item.k}: the two formulas disagree" for item in table.irreducible if not item.agree]
        return CommandResult(
            results={
                "rows": rows,
                "irreducible": irreducible,
                "sum_residual": units.convert(table.sum_residual),
            },
            diagnostics=diagnostics,
            converged=all(row.converged for row in table.rows),
        )


class MultiInfoCommand(BaseCommand):
    name: ClassVar[CommandName] = CommandName.MULTIINFO
    help: ClassVar[str] = "multi-information, cross-checked against the divergence from the independence model"

    state: Path = Field(description="state file")
    product_check: bool = Field(False, description="two qubits: also search the closest product state")

    def __call__(self, projection: ProjectionOptions, units: LogUnit, seed: int) -> CommandResult:
        rho = read_state(self.state)
        value = multi_information(rho)
        result = project_k(rho, 1, projection)
        results = {
            "multi_information": units.convert(value),
            "divergence": units.convert(result.divergence),
            "residual": units.convert(abs(value - result.divergence)),
            "tolerance": result.tolerance,
        }
        diagnostics = list(result.diagnostics)
        if self.product_check:
            if rho.shape == TWO_QUBITS:
                results["product_state_distance"] = units.convert(product_state_distance(rho, seed))
            else:
                diagnostics.append("product-state search needs two qubits; skipped")
        return CommandResult(results=results, diagnostics=diagnostics, converged=result.converged)
