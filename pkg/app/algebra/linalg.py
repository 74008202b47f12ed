"""
Matrix functions on the tensor-product algebra. Everything goes through the
Hermitian eigendecomposition; all-classical shapes take a diagonal fast path.
"""

import logging
from math import prod

import numpy as np
from scipy.special import rel_entr, xlogy

from app.constants import KERNEL_MASS_TOL, KERNEL_REL_TOL
from app.errors import ShapeMismatchError

from .types import DensityMatrix, HermitianObservable, SystemShape

logger = logging.getLogger(__name__)


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(a, b)


def hermitian_eigh(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return np.linalg.eigh((matrix + matrix.conj().T) / 2)


def dephase(matrix: np.ndarray, shape: SystemShape) -> np.ndarray:
    """
    Project a matrix onto the unit algebras: coherences between different
    symbols of a classical unit are set to zero.
    """
    if shape.is_quantum:
        return matrix
    n = shape.N
    tensor_form = matrix.reshape(shape.sizes + shape.sizes)
    mask = np.ones(shape.sizes + shape.sizes, dtype=bool)
    for i, kind in enumerate(shape.kinds):
        if kind.value != "classical":
            continue
        size = shape.sizes[i]
        index_shape = [1] * (2 * n)
        index_shape[i] = size
        index_shape[n + i] = size
        mask &= np.eye(size, dtype=bool).reshape(index_shape)
    return np.where(mask, tensor_form, 0.0).reshape(matrix.shape)


def partial_trace(matrix: np.ndarray, sizes: tuple[int, ...], keep: tuple[int, ...]) -> np.ndarray:
    n = len(sizes)
    rows = list(range(n))
    cols = [i if i not in keep else n + i for i in range(n)]
    out = list(keep) + [n + i for i in keep]
    reduced = np.einsum(matrix.reshape(sizes + sizes), rows + cols, out)
    d_keep = prod(sizes[i] for i in keep)
    return reduced.reshape(d_keep, d_keep)


def marginal(rho: DensityMatrix, nu) -> DensityMatrix:
    """
    The nu-marginal of rho, i.e. the state on the units in nu. The empty
    marginal is the 1x1 state [1].
    """
    units = rho.shape.check_units(nu)
    sub = rho.shape.subshape(units)
    if not units:
        return DensityMatrix(shape=sub, matrix=np.ones((1, 1)))
    if rho.shape.is_classical:
        p = rho.probabilities.reshape(rho.shape.sizes)
        drop = tuple(i for i in range(rho.shape.N) if i not in units)
        q = p.sum(axis=drop).reshape(-1) if drop else p.reshape(-1)
        return DensityMatrix(shape=sub, matrix=np.diag(q))
    reduced = partial_trace(rho.matrix, rho.shape.sizes, units)
    return DensityMatrix(shape=sub, matrix=(reduced + reduced.conj().T) / 2)


def spectrum(rho: DensityMatrix) -> np.ndarray:
    if rho.shape.is_classical:
        return np.sort(rho.probabilities)
    return np.linalg.eigvalsh(rho.matrix)


def shannon_entropy(values: np.ndarray) -> float:
    values = np.clip(np.asarray(values, dtype=float), 0.0, 1.0)
    return float(-np.sum(xlogy(values, values)))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """H = -tr rho log rho in nats, with 0 log 0 = 0."""
    values = spectrum(rho)
    values = values[values > KERNEL_REL_TOL * max(values.max(), 0.0)]
    return shannon_entropy(values)


def support_projection(matrix: np.ndarray, threshold: float = KERNEL_REL_TOL) -> tuple[np.ndarray, np.ndarray]:
    """
    Eigenvalues and eigenvectors of the support; eigenvalues at or below
    threshold times the largest one span the kernel.
    """
    values, vectors = hermitian_eigh(matrix)
    keep = values > threshold * max(values.max(), 0.0)
    return values[keep], vectors[:, keep]


def log_state(rho: DensityMatrix, threshold: float = KERNEL_REL_TOL) -> np.ndarray:
    """Logarithm of rho restricted to its support (zero on the kernel)."""
    values, vectors = support_projection(rho.matrix, threshold)
    return (vectors * np.log(values)) @ vectors.conj().T


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """
    Umegaki relative entropy D(rho, sigma); +inf when rho has weight on the
    kernel of sigma.
    """
    if rho.shape != sigma.shape:
        raise ShapeMismatchError(f"Cannot compare states of shapes {rho.shape} and {sigma.shape}")
    if rho.shape.is_classical:
        p, q = rho.probabilities, sigma.probabilities
        kernel = q <= KERNEL_REL_TOL * q.max()
        if p[kernel].sum() > KERNEL_MASS_TOL:
            return float("inf")
        # weight below the kernel tolerance is dropped, as on the quantum path
        value = float(np.sum(rel_entr(p[~kernel], q[~kernel])))
        return max(value, 0.0)

    values, vectors = hermitian_eigh(sigma.matrix)
    kernel = values <= KERNEL_REL_TOL * values.max()
    if np.any(kernel):
        k = vectors[:, kernel]
        mass = np.trace(k.conj().T @ rho.matrix @ k).real
        if mass > KERNEL_MASS_TOL:
            return float("inf")
    support = vectors[:, ~kernel]
    log_sigma = (support * np.log(values[~kernel])) @ support.conj().T
    value = -von_neumann_entropy(rho) - float(np.trace(rho.matrix @ log_sigma).real)
    return max(value, 0.0)


def gibbs_matrix(a: np.ndarray) -> tuple[np.ndarray, float]:
    """
    e^a / tr e^a for a Hermitian matrix, with log tr e^a. The spectrum is
    shifted by its maximum before exponentiation.
    """
    values, vectors = hermitian_eigh(a)
    top = values.max()
    weights = np.exp(values - top)
    total = weights.sum()
    state = (vectors * (weights / total)) @ vectors.conj().T
    return (state + state.conj().T) / 2, float(top + np.log(total))


def gibbs_map(a: HermitianObservable) -> DensityMatrix:
    if a.shape.is_classical:
        diagonal = np.diag(a.matrix).real
        weights = np.exp(diagonal - diagonal.max())
        return DensityMatrix(shape=a.shape, matrix=np.diag(weights / weights.sum()))
    state, _ = gibbs_matrix(a.matrix)
    return DensityMatrix(shape=a.shape, matrix=state)


def expectations(basis: np.ndarray, matrix: np.ndarray) -> np.ndarray:
    """<b_i, rho> = tr(b_i rho) for a stack of Hermitian b_i."""
    flat = basis.reshape(basis.shape[0], -1)
    return (flat @ matrix.T.reshape(-1)).real


def product_state(states: list[DensityMatrix]) -> np.ndarray:
    matrix = np.ones((1, 1), dtype=complex)
    for state in states:
        matrix = tensor(matrix, state.matrix)
    return matrix
