from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_serializer

from app.algebra import DensityMatrix, HermitianObservable, gibbs_matrix
from app.config import settings
from app.hierarchy import HierarchicalModelSpec


class SolverMethod(str, Enum):
    AUTO = "auto"
    DUAL = "dual"
    PRIMAL = "primal"
    IPF = "ipf"


class ProjectionOptions(BaseModel):
    method: SolverMethod = SolverMethod.AUTO
    tol: float = Field(default_factory=lambda: settings.solver.tol)
    boundary_tol: float = Field(default_factory=lambda: settings.solver.boundary_tol)
    max_iter: int = Field(default_factory=lambda: settings.solver.max_iter)
    theta_threshold: float = Field(default_factory=lambda: settings.solver.theta_threshold)
    boundary_eigenvalue: float = Field(default_factory=lambda: settings.solver.boundary_eigenvalue)


class GibbsParameters(BaseModel):
    """Coordinates theta of a Gibbs state e^H / Z with H = sum theta_i b_i."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    model: HierarchicalModelSpec = Field(exclude=True)
    theta: np.ndarray
    logZ: float

    @field_serializer("theta")
    def _dump_theta(self, theta: np.ndarray) -> list[float]:
        return [float(v) for v in theta]

    def hamiltonian(self) -> HermitianObservable:
        matrix = np.tensordot(self.theta, self.model.hamiltonian_basis, axes=1)
        return HermitianObservable(shape=self.model.shape, matrix=(matrix + matrix.conj().T) / 2)

    def state(self) -> DensityMatrix:
        matrix, _ = gibbs_matrix(self.hamiltonian().matrix)
        return DensityMatrix.from_hermitian(self.model.shape, matrix)

    @classmethod
    def from_theta(cls, model: HierarchicalModelSpec, theta) -> "GibbsParameters":
        theta = np.asarray(theta, dtype=float)
        if theta.shape != (model.dim_model,):
            raise ValueError(f"Expected {model.dim_model} coordinates, got shape {theta.shape}")
        _, log_z = gibbs_matrix(np.tensordot(theta, model.hamiltonian_basis, axes=1))
        return cls(model=model, theta=theta, logZ=log_z)


class SolverOutcome(BaseModel):
    """Raw output of a solver before the projection layer scores it."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    matrix: np.ndarray
    iterations: int
    converged: bool
    theta: np.ndarray | None = None
    logZ: float | None = None
    reason: str | None = None


class ProjectionResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    pi: DensityMatrix
    divergence: float
    constraint_residual: float
    method: SolverMethod
    iterations: int
    converged: bool
    theta: GibbsParameters | None = None
    entropy_pi: float
    entropy_rho: float
    tolerance: float
    diagnostics: list[str] = Field(default_factory=list)
