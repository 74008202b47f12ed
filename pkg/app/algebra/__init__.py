from .types import DensityMatrix, HermitianObservable, SystemShape, UnitKind
from .linalg import (
    dephase,
    expectations,
    gibbs_map,
    gibbs_matrix,
    hermitian_eigh,
    log_state,
    marginal,
    partial_trace,
    product_state,
    relative_entropy,
    shannon_entropy,
    spectrum,
    support_projection,
    tensor,
    von_neumann_entropy,
)
from .basis import (
    adjoint_relation_deviation,
    basis_E,
    classical_unit_basis,
    gram_deviation,
    hermitize_basis,
    unit_basis,
)
from .random import random_density_matrix, random_distribution, random_pure_state, random_rank_mixed

__all__ = [
    "DensityMatrix",
    "HermitianObservable",
    "SystemShape",
    "UnitKind",
    "adjoint_relation_deviation",
    "basis_E",
    "classical_unit_basis",
    "dephase",
    "expectations",
    "gibbs_map",
    "gibbs_matrix",
    "gram_deviation",
    "hermitian_eigh",
    "hermitize_basis",
    "log_state",
    "marginal",
    "partial_trace",
    "product_state",
    "random_density_matrix",
    "random_distribution",
    "random_pure_state",
    "random_rank_mixed",
    "relative_entropy",
    "shannon_entropy",
    "spectrum",
    "support_projection",
    "tensor",
    "unit_basis",
    "von_neumann_entropy",
]
