import logging
from functools import lru_cache

import numpy as np
from scipy.fft import dct

from app.constants import DEGENERATE_NORM, HERMITIAN_TOL
from app.errors import DegeneratePairError

from .types import UnitKind

logger = logging.getLogger(__name__)


def basis_E(n: int) -> list[np.ndarray]:
    """
    Orthonormal basis {E_kl : k, l = 0..n-1} of the n x n matrices, listed
    k-major so that E_00 = 1/sqrt(n) comes first.

    (E_kl)_rs = 1/sqrt(n) * (exp(i pi (r+s) k/n) [s = r+l]
                             + exp(i pi (r+s-n) k/n) [s = r+l-n]),  r, s = 1..n
    """
    if n < 1:
        raise ValueError(f"Basis size must be positive, got {n}")
    r = np.arange(1, n + 1).reshape(-1, 1)
    s = np.arange(1, n + 1).reshape(1, -1)
    basis = []
    for k in range(n):
        for l in range(n):
            upper = np.exp(1j * np.pi * (r + s) * k / n) * (s == r + l)
            lower = np.exp(1j * np.pi * (r + s - n) * k / n) * (s == r + l - n)
            basis.append((upper + lower) / np.sqrt(n))
    return basis


def _adjoint_partners(stack: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    flat = stack.reshape(stack.shape[0], -1)
    adjoints = np.conj(np.transpose(stack, (0, 2, 1))).reshape(stack.shape[0], -1)
    # overlap[i, j] = <E_i*, E_j>
    overlap = adjoints @ flat.conj().T
    partners = np.argmax(np.abs(overlap), axis=1)
    phases = overlap[np.arange(len(partners)), partners]
    return partners, phases


def hermitize_basis(basis: list[np.ndarray]) -> list[np.ndarray]:
    """
    Turn a basis closed under adjoints (up to a phase) into a self-adjoint
    orthonormal one. Fixed points E* = cE become sqrt(c) E, pairs (E, E*)
    become E + E* and i(E - E*).

    :raises DegeneratePairError: if an output vanishes or the input is not closed under adjoints
    """
    stack = np.array([b / np.linalg.norm(b) for b in basis], dtype=complex)
    partners, phases = _adjoint_partners(stack)
    if np.any(np.abs(np.abs(phases) - 1.0) > 1e-8):
        raise DegeneratePairError("Basis is not closed under taking adjoints")

    result: list[np.ndarray] = []
    used: set[int] = set()
    for i, element in enumerate(stack):
        if i in used:
            continue
        j = int(partners[i])
        used.update((i, j))
        adjoint = element.conj().T
        if j == i:
            candidates = [np.sqrt(phases[i]) * element]
        else:
            candidates = [element + adjoint, 1j * (element - adjoint)]
        for candidate in candidates:
            candidate = (candidate + candidate.conj().T) / 2
            norm = np.linalg.norm(candidate)
            if norm < DEGENERATE_NORM:
                raise DegeneratePairError(f"Hermitized element {i} has vanishing norm {norm:.3e}")
            result.append(candidate / norm)
    if len(result) != len(basis):
        raise DegeneratePairError(
            f"Hermitization produced {len(result)} elements from {len(basis)}"
        )
    return result


def classical_unit_basis(n: int) -> list[np.ndarray]:
    """Diagonal orthonormal basis: normalized identity followed by cosine contrasts."""
    rows = dct(np.eye(n), norm="ortho", axis=0)
    return [np.diag(row).astype(complex) for row in rows]


@lru_cache(maxsize=64)
def unit_basis(n: int, kind: UnitKind) -> np.ndarray:
    """
    Self-adjoint orthonormal basis of one unit algebra as an (m, n, n) array
    with 1/sqrt(n) first.
    """
    if kind == UnitKind.CLASSICAL:
        elements = classical_unit_basis(n)
    else:
        elements = hermitize_basis(basis_E(n))
    stack = np.array(elements, dtype=complex)
    if gram_deviation(stack) > HERMITIAN_TOL * n:
        logger.warning(f"Unit basis of size {n} ({kind.value}) is not orthonormal to tolerance")
    stack.setflags(write=False)
    return stack


def gram_deviation(stack: np.ndarray) -> float:
    """max |<b_i, b_j> - delta_ij| under <a, b> = tr(a b*)."""
    stack = np.asarray(stack)
    gram = np.einsum("iab,jab->ij", stack, stack.conj())
    return float(np.max(np.abs(gram - np.eye(len(stack)))))


def adjoint_relation_deviation(n: int) -> float:
    """
    Largest entrywise violation of E_kl* = s E_(n-k)(n-l), indices mod n,
    with s = (-1)^(n+k+l) when k, l >= 1 and s = 1 otherwise.
    """
    E = np.array(basis_E(n)).reshape(n, n, n, n)
    worst = 0.0
    for k in range(n):
        for l in range(n):
            sign = (-1) ** (n + k + l) if k and l else 1
            partner = E[(n - k) % n, (n - l) % n]
            worst = max(worst, float(np.max(np.abs(E[k, l].conj().T - sign * partner))))
    return worst
