import logging

import numpy as np
from pydantic import BaseModel

from app.algebra import hermitian_eigh, shannon_entropy
from app.constants import CLASSICAL_T_TOL, LOG2, SEPARABLE_TOL

from .bell import BellDiagonal, bell_from_lambda

logger = logging.getLogger(__name__)

# relative size of the second Schmidt coefficient below which a vector counts as a product
PRODUCT_TOL = 1e-6


def is_separable(b: BellDiagonal) -> bool:
    """max lambda <= 1/2, cross-checked against |t|_1 <= 1."""
    by_lambda = max(b.lam) <= 0.5 + SEPARABLE_TOL
    by_t = float(np.sum(np.abs(b.t))) <= 1 + 4 * SEPARABLE_TOL
    if by_lambda != by_t:
        logger.warning(f"Separability criteria disagree at t = {b.t}: lambda says {by_lambda}, t says {by_t}")
    return by_lambda


def mutual_information_bd(b: BellDiagonal) -> float:
    """Both marginals are maximally mixed, so I = 2 log 2 - H(lambda)."""
    return 2 * LOG2 - shannon_entropy(np.asarray(b.lam))


def separable_extreme_points() -> list[BellDiagonal]:
    """(|psi_i><psi_i| + |psi_j><psi_j|) / 2 for the six pairs i < j."""
    points = []
    for i in range(4):
        for j in range(i + 1, 4):
            lam = np.zeros(4)
            lam[[i, j]] = 0.5
            points.append(bell_from_lambda(lam))
    return points


def _local_frame(vector: np.ndarray) -> np.ndarray:
    """Unit vector a completed to the orthonormal basis (a, a_perp) of C^2."""
    a = vector / np.linalg.norm(vector)
    return np.column_stack([a, [-np.conj(a[1]), np.conj(a[0])]])


def _product_factors(vector: np.ndarray, tol: float = PRODUCT_TOL) -> tuple[np.ndarray, np.ndarray] | None:
    """(a, b) with vector = a (x) b up to phase and scale; None for entangled vectors."""
    U, s, Vh = np.linalg.svd(vector.reshape(2, 2))
    if s[0] <= 0 or s[1] > tol * s[0]:
        return None
    return U[:, 0], Vh[0, :]


def _product_vectors(space: np.ndarray, tol: float) -> list[np.ndarray]:
    """
    Product vectors of an eigenspace. A line is kept when it is a product; a
    plane spanned by u, v contributes the roots of det(alpha U + beta V) = 0.
    """
    if space.shape[1] == 1:
        return [space[:, 0]]
    if space.shape[1] != 2:
        return []
    U, V = (space[:, j].reshape(2, 2) for j in range(2))
    mixed = U[0, 0] * V[1, 1] + U[1, 1] * V[0, 0] - U[0, 1] * V[1, 0] - U[1, 0] * V[0, 1]
    coefficients = np.array([np.linalg.det(U), mixed, np.linalg.det(V)])
    if np.max(np.abs(coefficients)) <= tol:
        # every vector of the plane is a product
        return [space[:, 0], space[:, 1]]
    candidates = []
    if abs(coefficients[0]) <= tol:
        candidates.append(space[:, 0])
    candidates.extend(root * space[:, 0] + space[:, 1] for root in np.roots(coefficients))
    return candidates


def product_witness(matrix: np.ndarray, tol: float = CLASSICAL_T_TOL) -> tuple[np.ndarray, np.ndarray] | None:
    """
    A product basis that diagonalizes a two-qubit matrix; None when there is
    none. Eigenvalues within tol are grouped, and every product vector found
    inside an eigenspace seeds a candidate local frame.
    """
    values, vectors = hermitian_eigh(matrix)
    groups = np.split(np.arange(4), np.flatnonzero(np.diff(values) > tol) + 1)
    if len(groups) == 1:
        return np.eye(2, dtype=complex), np.eye(2, dtype=complex)

    for group in groups:
        for candidate in _product_vectors(vectors[:, group], tol):
            factors = _product_factors(candidate)
            if factors is None:
                continue
            first, second = (_local_frame(f) for f in factors)
            frame = np.kron(first, second)
            rotated = frame.conj().T @ matrix @ frame
            if np.max(np.abs(rotated - np.diag(np.diag(rotated)))) <= tol:
                return first, second
    return None


class ClassicalCorrelation(BaseModel):
    classical: bool
    # columns of the two local bases, each entry as [re, im]
    witness: list[list[list[list[float]]]] | None = None


def _serialize_basis(basis: np.ndarray) -> list[list[list[float]]]:
    return [[[float(z.real), float(z.imag)] for z in column] for column in basis.T]


def is_classically_correlated_bd(b: BellDiagonal) -> ClassicalCorrelation:
    """
    At most one nonzero t_i. The witness is a local product basis that
    diagonalizes the state, found by product_witness.
    """
    nonzero = sum(1 for value in b.t if abs(value) > CLASSICAL_T_TOL)
    classical = nonzero <= 1
    witness = product_witness(b.matrix())
    if classical != (witness is not None):
        logger.warning(f"Classical correlation criterion and witness search disagree at t = {b.t}")
    if not classical or witness is None:
        return ClassicalCorrelation(classical=classical)
    return ClassicalCorrelation(classical=True, witness=[_serialize_basis(basis) for basis in witness])
