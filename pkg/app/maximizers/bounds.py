from math import log, prod, sqrt

from app.algebra import SystemShape
from app.hierarchy import HierarchicalModelSpec


def bound_is_extension(shape: SystemShape) -> bool:
    """Mixed classical/quantum shapes get a bound that is not covered by the face-dimension results."""
    return not (shape.is_classical or shape.is_quantum)


def support_bound(model: HierarchicalModelSpec) -> float:
    """
    Upper bound on the support size (classical) or rank (quantum) of a local
    maximizer of the divergence from the model.

    classical: dim_model + 1
    quantum:   sqrt(dim_model + 1)
    mixed:     min(dim_model + 1, sqrt(m (dim_model + 1)), d), m the product of classical unit sizes
    """
    shape = model.shape
    faces = model.dim_model + 1
    if shape.is_classical:
        return float(faces)
    if shape.is_quantum:
        return sqrt(faces)
    classical = prod(n for n, kind in zip(shape.sizes, shape.kinds) if kind.value == "classical")
    return float(min(faces, sqrt(classical * faces), shape.dim))


def classical_multi_information_bound(shape: SystemShape) -> float | None:
    """sum of log n_i over all units but the largest; None unless every unit is classical."""
    if not shape.is_classical:
        return None
    return sum(log(n) for n in sorted(shape.sizes)[:-1])
