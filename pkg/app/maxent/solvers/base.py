from abc import ABC, abstractmethod

import numpy as np

from app.algebra import DensityMatrix
from app.hierarchy import HierarchicalModelSpec

from ..types import ProjectionOptions, SolverOutcome


class BaseSolver(ABC):
    name: str

    @abstractmethod
    def solve(
        self, rho: DensityMatrix, model: HierarchicalModelSpec, opts: ProjectionOptions
    ) -> SolverOutcome:
        pass


def exp_divided_differences(values: np.ndarray) -> np.ndarray:
    """(e^a - e^b) / (a - b) as e^max(a, b) (1 - e^-|a - b|) / |a - b|."""
    a = values[:, None]
    b = values[None, :]
    gap = np.abs(a - b)
    small = gap < 1e-12
    safe_gap = np.where(small, 1.0, gap)
    return np.where(small, np.exp((a + b) / 2), np.exp(np.maximum(a, b)) * -np.expm1(-gap) / safe_gap)


def spectral_hessian(rotated: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """
    sum_ab Re(X_i[a, b] conj(X_j[a, b])) W[a, b] for a stack of matrices
    already rotated into the eigenbasis.
    """
    flat = rotated.reshape(rotated.shape[0], -1)
    weighted = flat * weights.reshape(-1)
    return (weighted @ flat.conj().T).real


def solve_newton(hessian: np.ndarray, gradient: np.ndarray) -> np.ndarray:
    """Solve hessian @ step = -gradient, falling back to least squares."""
    try:
        return np.linalg.solve(hessian, -gradient)
    except np.linalg.LinAlgError:
        return np.linalg.lstsq(hessian, -gradient, rcond=None)[0]
