from pydantic import BaseModel, ConfigDict, Field

from app.algebra import DensityMatrix
from app.config import settings


class SearchOptions(BaseModel):
    restarts: int = Field(default_factory=lambda: settings.search.restarts)
    max_steps: int = Field(default_factory=lambda: settings.search.max_steps)
    cluster_tol: float = Field(default_factory=lambda: settings.search.cluster_tol)
    snap: float = Field(default_factory=lambda: settings.search.snap)
    exp_form_tol: float = Field(default_factory=lambda: settings.search.exp_form_tol)
    rank_eigenvalue: float = Field(default_factory=lambda: settings.search.rank_eigenvalue)
    threads: int = Field(default_factory=lambda: settings.threads)


class MaximizerReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    state: DensityMatrix
    divergence: float
    rank: int
    # classical shapes only
    support_size: int | None = None
    bound: float
    bound_satisfied: bool
    extended_bound: bool = False
    exp_form_residual: float
    restarts: int
    seed: int
    restart_index: int
    steps: int
    converged: bool
    # objective after each accepted step of the restart
    ascent: list[float] = Field(default_factory=list, exclude=True)


class MaximizerSearch(BaseModel):
    """All distinct local maximizers found, best first."""

    reports: list[MaximizerReport]
    restarts: int
    seed: int
    failed: int
    unconverged: int
    # restarts that ended without passing the exponential-form check
    rejected: int
    # log of the product of all unit sizes but the largest, all-classical shapes only
    global_bound: float | None = None

    @property
    def best(self) -> MaximizerReport | None:
        return self.reports[0] if self.reports else None
