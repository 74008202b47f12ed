from pathlib import Path
from typing import ClassVar

import numpy as np
from pydantic import Field

from app.algebra import (
    UnitKind,
    adjoint_relation_deviation,
    basis_E,
    gram_deviation,
    unit_basis,
)
from app.hierarchy import Hypergraph, build_model, hypergraph_k, model_dim
from app.io import read_hypergraph

from ..types import CommandName, CommandResult
from .base import BaseCommand, load_shape


def _serialize(matrix: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in matrix]


class DimsCommand(BaseCommand):
    name: ClassVar[CommandName] = CommandName.DIMS
    help: ClassVar[str] = "dimensions of hierarchical models, optionally checked against the basis rank"

    shape: str = Field(description="shape file or inline sizes such as 2,2,2 or q2,c3")
    quantum: bool = Field(False, description="inline sizes without a prefix are quantum units")
    hypergraph: Path | None = Field(None, description="hypergraph file; default is every k-local model")
    k: int | None = Field(None, description="a single k-local model")
    verify: bool = Field(False, description="build the basis and compare its numerical rank")

    def __call__(self) -> CommandResult:
        shape = load_shape(self.shape, self.quantum)
        if self.hypergraph is not None:
            models: list[tuple[str, Hypergraph]] = [("file", read_hypergraph(self.hypergraph))]
        elif self.k is not None:
            models = [(f"k={self.k}", hypergraph_k(shape.N, self.k))]
        else:
            models = [(f"k={k}", hypergraph_k(shape.N, k)) for k in range(1, shape.N + 1)]

        rows, diagnostics = [], []
        for label, U in models:
            dim_total, dim_model = model_dim(shape, U)
            row = {"model": label, "sets": U.as_lists(), "dim_total": dim_total, "dim_model": dim_model}
            if self.verify:
                basis = build_model(shape, U).basis
                rank = int(np.linalg.matrix_rank(basis.reshape(len(basis), -1)))
                row["rank"] = rank
                if rank != dim_total:
                    diagnostics.append(f"{label}: basis rank {rank} differs from {dim_total}")
            rows.append(row)
        return CommandResult(
            results={"shape": shape.model_dump(mode="json"), "models": rows},
            diagnostics=diagnostics,
            passed=not diagnostics,
        )


class BasisCommand(BaseCommand):
    name: ClassVar[CommandName] = CommandName.BASIS
    help: ClassVar[str] = "orthonormal basis of one unit algebra with its self-checks"

    n: int = Field(description="unit size")
    kind: UnitKind = Field(UnitKind.QUANTUM, description="classical or quantum")

    def __call__(self) -> CommandResult:
        if self.n < 1:
            raise ValueError(f"Unit size must be positive, got {self.n}")
        stack = unit_basis(self.n, self.kind)
        results = {
            "n": self.n,
            "kind": self.kind.value,
            "elements": [_serialize(element) for element in stack],
            "gram_deviation": gram_deviation(stack),
        }
        if self.kind == UnitKind.QUANTUM:
            results["raw_gram_deviation"] = gram_deviation(np.array(basis_E(self.n)))
            results["adjoint_deviation"] = adjoint_relation_deviation(self.n)
        return CommandResult(results=results)
