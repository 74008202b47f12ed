from .bell import (
    TWO_QUBITS,
    BellDiagonal,
    bell_basis_consistency,
    bell_from_lambda,
    bell_from_t,
    bell_sign_matrix,
    correlation_matrix,
)
from .classical import (
    ClassicalCorrelation,
    is_classically_correlated_bd,
    is_separable,
    mutual_information_bd,
    product_witness,
    separable_extreme_points,
)
from .theorem import Theorem1Report, VertexCheck, sample_octahedron, verify_theorem1
from .geometry import GeometryPoint, fig1_geometry_export, product_state_distance

__all__ = [
    "TWO_QUBITS",
    "BellDiagonal",
    "ClassicalCorrelation",
    "GeometryPoint",
    "Theorem1Report",
    "VertexCheck",
    "bell_basis_consistency",
    "bell_from_lambda",
    "bell_from_t",
    "bell_sign_matrix",
    "correlation_matrix",
    "fig1_geometry_export",
    "is_classically_correlated_bd",
    "is_separable",
    "mutual_information_bd",
    "product_state_distance",
    "product_witness",
    "sample_octahedron",
    "separable_extreme_points",
    "verify_theorem1",
]
