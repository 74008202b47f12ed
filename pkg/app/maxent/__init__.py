from .types import (
    GibbsParameters,
    ProjectionOptions,
    ProjectionResult,
    SolverMethod,
    SolverOutcome,
)
from .projection import (
    divergence_from_model,
    maxent_project,
    product_of_marginals,
    pythagorean_residual,
)
from .correlation import (
    Decomposition,
    DecompositionRow,
    IrreducibleCorrelation,
    correlation_ck,
    decompose,
    irreducible_ck,
    irreducible_correlation,
    k_local_model,
    multi_information,
    project_k,
)

__all__ = [
    "Decomposition",
    "DecompositionRow",
    "GibbsParameters",
    "IrreducibleCorrelation",
    "ProjectionOptions",
    "ProjectionResult",
    "SolverMethod",
    "SolverOutcome",
    "correlation_ck",
    "decompose",
    "divergence_from_model",
    "irreducible_ck",
    "irreducible_correlation",
    "k_local_model",
    "maxent_project",
    "multi_information",
    "product_of_marginals",
    "project_k",
    "pythagorean_residual",
]
