"""
Integer kernel of an interaction matrix and the binomial equations it defines.
"""

import logging
from functools import lru_cache

import numpy as np
import sympy
from pydantic import BaseModel

from app.constants import TORIC_REL_TOL
from app.errors import NegativeEntriesError

from .interaction import InteractionMatrix

logger = logging.getLogger(__name__)


def _column_hermite(rows: list[list[int]], n: int) -> tuple[list[list[int]], int]:
    """
    Column-reduce an integer matrix with unimodular operations tracked in U.
    Returns U and the number of pivot columns; columns of U from that index
    on span the integer kernel.
    """
    h = [row[:] for row in rows]
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap(a: int, b: int):
        for m in (h, u):
            for row in m:
                row[a], row[b] = row[b], row[a]

    def subtract(target: int, source: int, q: int):
        for m in (h, u):
            for row in m:
                row[target] -= q * row[source]

    pivot = 0
    for row in h:
        if pivot == n:
            break
        while True:
            nonzero = [j for j in range(pivot, n) if row[j] != 0]
            if not nonzero:
                break
            best = min(nonzero, key=lambda j: abs(row[j]))
            swap(pivot, best)
            others = [j for j in range(pivot + 1, n) if row[j] != 0]
            if not others:
                pivot += 1
                break
            for j in others:
                subtract(j, pivot, row[j] // row[pivot])
    return u, pivot


@lru_cache(maxsize=32)
def _kernel_of(entries: tuple[tuple[int, ...], ...], n: int) -> tuple[tuple[int, ...], ...]:
    u, rank = _column_hermite([list(r) for r in entries], n)
    kernel = []
    for j in range(rank, n):
        vector = [u[i][j] for i in range(n)]
        first = next(v for v in vector if v != 0)
        if first < 0:
            vector = [-v for v in vector]
        kernel.append(tuple(vector))

    a = sympy.Matrix(entries)
    if kernel:
        k = sympy.Matrix(kernel).T
        if not (a * k).is_zero_matrix:
            raise ArithmeticError("Integer kernel does not annihilate the interaction matrix")
    if a.rank() + len(kernel) != n:
        raise ArithmeticError(f"Kernel rank {len(kernel)} does not complement rank {a.rank()}")
    return tuple(kernel)


def toric_kernel(A: InteractionMatrix) -> np.ndarray:
    """
    Basis of the integer kernel of A, one vector per row, columns ordered as
    A's columns. Computed in exact integer arithmetic.
    """
    entries = tuple(tuple(int(v) for v in row) for row in A.entries)
    kernel = _kernel_of(entries, A.entries.shape[1])
    logger.debug(f"Toric kernel of rank {len(kernel)} for k={A.k} on {A.shape.sizes}")
    return np.array(kernel, dtype=np.int64).reshape(len(kernel), A.entries.shape[1])


def split_binomial(w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """w = u - v with u, v nonnegative and disjointly supported."""
    return np.maximum(w, 0), np.maximum(-w, 0)


class ToricMembership(BaseModel):
    member: bool
    residuals: list[float]
    kernel_rank: int
    # some binomial had a vanishing side; basis-level checks are only a surrogate there
    zero_support: bool


def _log_monomial(s: np.ndarray, exponent: np.ndarray) -> float:
    used = exponent > 0
    if np.any(s[used] == 0):
        return -np.inf
    return float(np.sum(exponent[used] * np.log(s[used])))


def check_toric_membership(s, A: InteractionMatrix, tol: float = TORIC_REL_TOL) -> ToricMembership:
    """
    Evaluate prod s^u = prod s^v for every kernel basis vector u - v. The
    residual is |L - R| / max(L, R), zero when both sides vanish.
    """
    s = np.asarray(s, dtype=float)
    if s.shape != (A.entries.shape[1],):
        raise ValueError(f"Expected {A.entries.shape[1]} entries, got shape {s.shape}")
    if np.any(s < 0):
        raise NegativeEntriesError("Toric membership needs a nonnegative vector")

    kernel = toric_kernel(A)
    residuals = []
    zero_support = False
    for w in kernel:
        u, v = split_binomial(w)
        left, right = _log_monomial(s, u), _log_monomial(s, v)
        if np.isinf(left) or np.isinf(right):
            zero_support = True
        if np.isinf(left) and np.isinf(right):
            residuals.append(0.0)
        else:
            residuals.append(float(-np.expm1(-abs(left - right))))
    return ToricMembership(
        member=all(r <= tol for r in residuals),
        residuals=residuals,
        kernel_rank=len(kernel),
        zero_support=zero_support,
    )
