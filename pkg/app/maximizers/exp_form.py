import numpy as np

from app.algebra import DensityMatrix, support_projection
from app.errors import ShapeMismatchError
from app.hierarchy import HierarchicalModelSpec


def check_exponential_form(rho: DensityMatrix, model: HierarchicalModelSpec) -> float:
    """
    Distance of log rho, restricted to the support of rho, from the compressed
    model space p (H + span 1) p. Zero for states of the form
    p e^(p a p) / tr(p e^(p a p)) with a in the model space.
    """
    if rho.shape != model.shape:
        raise ShapeMismatchError(f"State of shape {rho.shape} does not fit model on {model.shape}")
    values, vectors = support_projection(rho.matrix)
    target = np.diag(np.log(values)).astype(complex)
    compressed = np.einsum("ab,ibc,cd->iad", vectors.conj().T, model.basis, vectors, optimize=True)

    flat = compressed.reshape(len(compressed), -1).T
    system = np.vstack([flat.real, flat.imag])
    rhs = np.concatenate([target.reshape(-1).real, target.reshape(-1).imag])
    coefficients, *_ = np.linalg.lstsq(system, rhs, rcond=None)
    return float(np.linalg.norm(system @ coefficients - rhs))
