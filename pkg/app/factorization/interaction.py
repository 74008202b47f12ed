import logging
from itertools import combinations, product

import numpy as np
from pydantic import BaseModel, ConfigDict

from app.algebra import SystemShape
from app.errors import HypergraphError, NegativeEntriesError, QuantumUnitError

logger = logging.getLogger(__name__)

Configuration = tuple[int, ...]


def configurations(shape: SystemShape) -> list[Configuration]:
    """All joint configurations, unit 0 as the most significant digit."""
    return list(product(*(range(n) for n in shape.sizes)))


def configuration_index(shape: SystemShape, x: Configuration) -> int:
    index = 0
    for n, symbol in zip(shape.sizes, x):
        if not 0 <= symbol < n:
            raise ValueError(f"Configuration {x} does not fit unit sizes {shape.sizes}")
        index = index * n + symbol
    return index


def _ordered_subsets(N: int, k: int) -> list[tuple[int, ...]]:
    # contiguous subsets first: {0,1}, {1,2}, {0,2} for N = 3, k = 2
    return sorted(combinations(range(N), k), key=lambda nu: (nu[-1] - nu[0], nu))


class InteractionMatrix(BaseModel):
    """
    0/1 matrix with rows (nu, y), |nu| = k, y a configuration of nu, and one
    column per joint configuration x; the entry is 1 iff x restricted to nu is y.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    shape: SystemShape
    k: int
    row_index: tuple[tuple[tuple[int, ...], Configuration], ...]
    entries: np.ndarray

    @property
    def columns(self) -> list[Configuration]:
        return configurations(self.shape)

    def column_support(self, x: Configuration) -> frozenset[int]:
        column = self.entries[:, configuration_index(self.shape, x)]
        return frozenset(np.flatnonzero(column).tolist())

    def row_labels(self) -> list[str]:
        return [
            "{" + ",".join(map(str, nu)) + "}:" + "".join(map(str, y))
            for nu, y in self.row_index
        ]


def build_interaction_matrix(shape: SystemShape, k: int) -> InteractionMatrix:
    if not shape.is_classical:
        raise QuantumUnitError("Interaction matrices need every unit to be classical")
    if not 1 <= k <= shape.N:
        raise HypergraphError(f"k must lie in 1..{shape.N}, got {k}")

    columns = configurations(shape)
    rows = []
    for nu in _ordered_subsets(shape.N, k):
        for y in product(*(range(shape.sizes[i]) for i in nu)):
            rows.append((nu, y))

    entries = np.zeros((len(rows), len(columns)), dtype=np.int64)
    for r, (nu, y) in enumerate(rows):
        for c, x in enumerate(columns):
            if tuple(x[i] for i in nu) == y:
                entries[r, c] = 1
    entries.setflags(write=False)
    return InteractionMatrix(shape=shape, k=k, row_index=tuple(rows), entries=entries)


def monomial_map(A: InteractionMatrix, t) -> np.ndarray:
    """Phi(t)_x = prod over rows of t_row ** a_(row, x), with 0 ** 0 = 1."""
    t = np.asarray(t, dtype=float)
    if t.shape != (A.entries.shape[0],):
        raise ValueError(f"Expected {A.entries.shape[0]} row weights, got shape {t.shape}")
    if np.any(t < 0):
        raise NegativeEntriesError("Monomial map needs nonnegative weights")
    factors = np.where(A.entries == 1, t[:, None], 1.0)
    return np.prod(factors, axis=0)
