import logging
from functools import lru_cache

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from app.algebra import DensityMatrix, SystemShape
from app.constants import BELL_VECTORS, PAULIS, TRACE_TOL
from app.errors import NonPhysicalError

logger = logging.getLogger(__name__)

# lambda entries may undershoot zero by this much
PHYSICAL_TOL = 1e-12

TWO_QUBITS = SystemShape.quantum([2, 2])


@lru_cache(maxsize=1)
def bell_sign_matrix() -> np.ndarray:
    """S[j, i] = <psi_j| sigma_i (x) sigma_i |psi_j>, so that lambda = (1 + S t) / 4."""
    signs = np.empty((4, 3))
    for j, psi in enumerate(BELL_VECTORS):
        for i, sigma in enumerate(PAULIS):
            signs[j, i] = np.real(psi.conj() @ np.kron(sigma, sigma) @ psi)
    signs = np.rint(signs)
    signs.setflags(write=False)
    return signs


def correlation_matrix(t) -> np.ndarray:
    """(1 + sum_i t_i sigma_i (x) sigma_i) / 4."""
    matrix = np.eye(4, dtype=complex)
    for value, sigma in zip(t, PAULIS):
        matrix = matrix + value * np.kron(sigma, sigma)
    return matrix / 4


class BellDiagonal(BaseModel):
    """Two-qubit state diagonal in the Bell basis psi_1 .. psi_4."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    t: tuple[float, float, float]
    lam: tuple[float, float, float, float] = Field(alias="lambda")

    def matrix(self) -> np.ndarray:
        return correlation_matrix(self.t)

    def state(self) -> DensityMatrix:
        return DensityMatrix.from_hermitian(TWO_QUBITS, self.matrix())


def bell_from_t(t) -> BellDiagonal:
    t = np.asarray(t, dtype=float)
    if t.shape != (3,):
        raise ValueError(f"Expected three correlation coefficients, got shape {t.shape}")
    lam = (1 + bell_sign_matrix() @ t) / 4
    if lam.min() < -PHYSICAL_TOL:
        raise NonPhysicalError(f"t = {t.tolist()} gives negative Bell weights {lam.tolist()}")
    lam = np.clip(lam, 0.0, None)
    return BellDiagonal(t=tuple(t.tolist()), lam=tuple(lam.tolist()))


def bell_from_lambda(lam) -> BellDiagonal:
    lam = np.asarray(lam, dtype=float)
    if lam.shape != (4,):
        raise ValueError(f"Expected four Bell weights, got shape {lam.shape}")
    if lam.min() < -PHYSICAL_TOL:
        raise NonPhysicalError(f"Bell weights {lam.tolist()} are not nonnegative")
    if abs(lam.sum() - 1) > TRACE_TOL:
        raise NonPhysicalError(f"Bell weights sum to {lam.sum()}, expected 1")
    t = bell_sign_matrix().T @ lam
    return BellDiagonal(t=tuple(t.tolist()), lam=tuple(np.clip(lam, 0.0, None).tolist()))


def bell_basis_consistency(samples: int = 16, seed: int = 0) -> float:
    """
    Largest deviation between the linear t -> lambda map and a numerical
    eigendecomposition, including the check that each psi_j is an eigenvector
    with eigenvalue lambda_j.
    """
    rng = np.random.default_rng(seed)
    signs = bell_sign_matrix()
    worst = 0.0
    for t in rng.uniform(-1, 1, size=(samples, 3)):
        matrix = correlation_matrix(t)
        lam = (1 + signs @ t) / 4
        worst = max(worst, float(np.max(np.abs(np.sort(np.linalg.eigvalsh(matrix)) - np.sort(lam)))))
        for j, psi in enumerate(BELL_VECTORS):
            worst = max(worst, float(np.linalg.norm(matrix @ psi - lam[j] * psi)))
    if worst > 1e-12:
        logger.warning(f"Bell basis map deviates from the eigendecomposition by {worst:.3e}")
    return worst
