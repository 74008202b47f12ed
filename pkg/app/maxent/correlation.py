import logging
from functools import lru_cache

from pydantic import BaseModel

from app.algebra import DensityMatrix, SystemShape, marginal, relative_entropy, von_neumann_entropy
from app.errors import InvalidSubsystemError
from app.hierarchy import HierarchicalModelSpec, build_model, hypergraph_k

from .projection import maxent_project
from .types import ProjectionOptions, ProjectionResult

logger = logging.getLogger(__name__)

# |(c_(k-1) - c_k) - D(pi_k, pi_(k-1))| above this is reported
IRREDUCIBLE_AGREEMENT = 1e-6


@lru_cache(maxsize=32)
def k_local_model(shape: SystemShape, k: int) -> HierarchicalModelSpec:
    return build_model(shape, hypergraph_k(shape.N, k))


def _check_k(rho: DensityMatrix, k: int, lowest: int = 1):
    if not lowest <= k <= rho.shape.N:
        raise InvalidSubsystemError(f"k must lie in {lowest}..{rho.shape.N}, got {k}")


def project_k(rho: DensityMatrix, k: int, opts: ProjectionOptions | None = None) -> ProjectionResult:
    """Projection onto the Gibbs family of k-local Hamiltonians."""
    _check_k(rho, k)
    return maxent_project(rho, k_local_model(rho.shape, k), opts)


def correlation_ck(rho: DensityMatrix, k: int, opts: ProjectionOptions | None = None) -> float:
    """c_k = H(pi_k) - H(rho); c_N is zero."""
    _check_k(rho, k)
    if k == rho.shape.N:
        return 0.0
    return project_k(rho, k, opts).divergence


def multi_information(rho: DensityMatrix) -> float:
    """Sum of one-unit marginal entropies minus the joint entropy."""
    if rho.shape.N < 2:
        raise InvalidSubsystemError("Multi-information needs at least two units")
    total = sum(von_neumann_entropy(marginal(rho, [i])) for i in range(rho.shape.N))
    return max(total - von_neumann_entropy(rho), 0.0)


class IrreducibleCorrelation(BaseModel):
    k: int
    difference: float
    divergence: float
    agree: bool


def _compare_irreducible(
    rho: DensityMatrix, k: int, upper: ProjectionResult, lower: ProjectionResult | None
) -> IrreducibleCorrelation:
    """C_k from the projections onto k-1 and k; lower is None for k = N, where pi_N is rho."""
    lower_pi, lower_c = (rho, 0.0) if lower is None else (lower.pi, lower.divergence)
    difference = upper.divergence - lower_c
    divergence = relative_entropy(lower_pi, upper.pi)
    agree = abs(difference - divergence) <= IRREDUCIBLE_AGREEMENT
    if not agree:
        logger.warning(f"C_{k}: c_(k-1) - c_k = {difference:.9f} but D(pi_k, pi_(k-1)) = {divergence:.9f}")
    return IrreducibleCorrelation(k=k, difference=difference, divergence=divergence, agree=agree)


def irreducible_correlation(
    rho: DensityMatrix, k: int, opts: ProjectionOptions | None = None
) -> IrreducibleCorrelation:
    """C_k both as c_(k-1) - c_k and as D(pi_k, pi_(k-1))."""
    _check_k(rho, k, lowest=2)
    upper = project_k(rho, k - 1, opts)
    lower = None if k == rho.shape.N else project_k(rho, k, opts)
    return _compare_irreducible(rho, k, upper, lower)


def irreducible_ck(rho: DensityMatrix, k: int, opts: ProjectionOptions | None = None) -> float:
    return max(irreducible_correlation(rho, k, opts).difference, 0.0)


class DecompositionRow(BaseModel):
    k: int
    c: float
    constraint_residual: float
    method: str
    converged: bool


class Decomposition(BaseModel):
    rows: list[DecompositionRow]
    irreducible: list[IrreducibleCorrelation]
    # |sum C_k - c_1|
    sum_residual: float

    @property
    def c(self) -> list[float]:
        return [row.c for row in self.rows]

    @property
    def C(self) -> list[float]:
        return [item.difference for item in self.irreducible]


def decompose(rho: DensityMatrix, opts: ProjectionOptions | None = None) -> Decomposition:
    """c_1 .. c_N and C_2 .. C_N, reusing one projection per k."""
    N = rho.shape.N
    results: dict[int, ProjectionResult] = {k: project_k(rho, k, opts) for k in range(1, N)}
    rows = [
        DecompositionRow(
            k=k, c=r.divergence, constraint_residual=r.constraint_residual,
            method=r.method.value, converged=r.converged,
        )
        for k, r in results.items()
    ]
    rows.append(DecompositionRow(k=N, c=0.0, constraint_residual=0.0, method="exact", converged=True))

    irreducible = [_compare_irreducible(rho, k, results[k - 1], results.get(k)) for k in range(2, N + 1)]

    c_1 = rows[0].c if N > 1 else 0.0
    return Decomposition(
        rows=rows,
        irreducible=irreducible,
        sum_residual=abs(sum(item.difference for item in irreducible) - c_1),
    )
