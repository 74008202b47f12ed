from .interaction import (
    Configuration,
    InteractionMatrix,
    build_interaction_matrix,
    configuration_index,
    configurations,
    monomial_map,
)
from .toric import ToricMembership, check_toric_membership, split_binomial, toric_kernel
from .feasibility import (
    FeasibilityReport,
    InclusionChainReport,
    enumerate_feasibility,
    inclusion_chain_report,
    ipf_uniform_divergence,
    is_k_feasible,
    uniform_on,
    weight_one_support,
)

__all__ = [
    "Configuration",
    "FeasibilityReport",
    "InclusionChainReport",
    "InteractionMatrix",
    "ToricMembership",
    "build_interaction_matrix",
    "check_toric_membership",
    "configuration_index",
    "configurations",
    "enumerate_feasibility",
    "inclusion_chain_report",
    "ipf_uniform_divergence",
    "is_k_feasible",
    "monomial_map",
    "split_binomial",
    "toric_kernel",
    "uniform_on",
    "weight_one_support",
]
