import logging
from functools import cached_property, reduce
from itertools import chain, combinations, product
from math import prod

import numpy as np
from pydantic import BaseModel, ConfigDict

from app.algebra import SystemShape, unit_basis
from app.config import settings
from app.constants import HERMITIAN_TOL
from app.errors import ShapeMismatchError

from .hypergraph import Hypergraph

logger = logging.getLogger(__name__)


def pure_factor_dim(shape: SystemShape, v) -> int:
    """dim of the pure factor space of v: product over i in v of (dim A_i - 1)."""
    units = shape.check_units(v)
    dims = shape.unit_algebra_dims
    return prod(dims[i] - 1 for i in units)


def model_dim(shape: SystemShape, U: Hypergraph) -> tuple[int, int]:
    """(dim_total, dim_model) of the hierarchical model of U."""
    if U.N != shape.N:
        raise ShapeMismatchError(f"Hypergraph on {U.N} units does not fit a system of {shape.N} units")
    dim_total = sum(pure_factor_dim(shape, v) for v in U.sets)
    return dim_total, dim_total - 1


class BlockwiseRank(BaseModel):
    rank: int
    # largest Hilbert-Schmidt overlap between two distinct pure factor blocks
    max_overlap: float
    blocks: int


def blockwise_rank(shape: SystemShape, U: Hypergraph) -> BlockwiseRank:
    """
    Rank of the model space of U without assembling it. The Gram matrix of a
    pure factor block is the tensor product of the unit Gram matrices, so its
    rank is the product of the unit ranks; blocks of different sets overlap
    through a unit cross term that vanishes for traceless elements.
    """
    if U.N != shape.N:
        raise ShapeMismatchError(f"Hypergraph on {U.N} units does not fit a system of {shape.N} units")
    unit_rank, gram_norm, cross_norm, identity_norm = [], [], [], []
    for n, kind in zip(shape.sizes, shape.kinds):
        stack = unit_basis(n, kind)
        identity = stack[0].reshape(-1)
        pure = stack[1:].reshape(len(stack) - 1, -1)
        gram = pure.conj() @ pure.T
        unit_rank.append(int(np.linalg.matrix_rank(gram, hermitian=True)))
        gram_norm.append(float(np.linalg.norm(gram)))
        cross_norm.append(float(np.linalg.norm(pure.conj() @ identity)))
        identity_norm.append(float(abs(np.vdot(identity, identity))))

    def overlap(v: frozenset[int], w: frozenset[int]) -> float:
        factors = (
            gram_norm[i] if i in v and i in w else cross_norm[i] if i in v or i in w else identity_norm[i]
            for i in range(shape.N)
        )
        return prod(factors)

    sets = list(U.sets)
    rank = sum(prod(unit_rank[i] for i in v) for v in sets)
    max_overlap = max((overlap(v, w) for v, w in combinations(sets, 2)), default=0.0)
    return BlockwiseRank(rank=rank, max_overlap=max_overlap, blocks=len(sets))


def _element_indices(shape: SystemShape, v: frozenset[int]) -> list[tuple[int, ...]]:
    """Per-unit basis indices of the elements spanning the pure factor space of v."""
    dims = shape.unit_algebra_dims
    ranges = [range(1, dims[i]) if i in v else (0,) for i in range(shape.N)]
    return list(product(*ranges))


def _assemble(shape: SystemShape, indices: list[tuple[int, ...]]) -> np.ndarray:
    unit_bases = [unit_basis(n, kind) for n, kind in zip(shape.sizes, shape.kinds)]
    out = np.empty((len(indices), shape.dim, shape.dim), dtype=complex)
    for row, index in enumerate(indices):
        out[row] = reduce(np.kron, (unit_bases[i][j] for i, j in enumerate(index)))
    return out


class HierarchicalModelSpec(BaseModel):
    """
    Orthonormal self-adjoint basis of a hierarchical model subspace. basis[0]
    is the identity over sqrt(d); patterns[i] holds the units on which
    basis[i] is not a multiple of the identity.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    shape: SystemShape
    hypergraph: Hypergraph
    basis: np.ndarray
    patterns: tuple[frozenset[int], ...]
    indices: tuple[tuple[int, ...], ...]
    dim_total: int
    dim_model: int

    @property
    def hamiltonian_basis(self) -> np.ndarray:
        """Basis elements without the identity; these carry the Gibbs coordinates."""
        return self.basis[1:]

    @cached_property
    def complement_basis(self) -> np.ndarray:
        """Orthonormal basis of the self-adjoint complement of the model space."""
        in_model = set(self.hypergraph.sets)
        all_sets = chain.from_iterable(combinations(range(self.shape.N), r) for r in range(self.shape.N + 1))
        indices = [
            index
            for v in all_sets
            if frozenset(v) not in in_model
            for index in _element_indices(self.shape, frozenset(v))
        ]
        if not indices:
            return np.zeros((0, self.shape.dim, self.shape.dim), dtype=complex)
        return _assemble(self.shape, indices)

    def coefficients(self, matrix: np.ndarray) -> np.ndarray:
        """Hilbert-Schmidt coordinates <b_i, a> of a Hermitian matrix."""
        flat = self.basis.reshape(len(self.basis), -1)
        return (flat.conj() @ matrix.reshape(-1)).real

    def project(self, matrix: np.ndarray) -> np.ndarray:
        """Orthogonal projection of a Hermitian matrix onto the model subspace."""
        return np.tensordot(self.coefficients(matrix), self.basis, axes=1)

    def subspace_residual(self, other: "HierarchicalModelSpec") -> float:
        """Largest distance of a basis element of this model to the subspace of other."""
        if self.shape != other.shape:
            raise ShapeMismatchError(f"Models live on {self.shape} and {other.shape}")
        return max(float(np.linalg.norm(b - other.project(b))) for b in self.basis)


def build_model(shape: SystemShape, U: Hypergraph) -> HierarchicalModelSpec:
    """
    Assemble the basis of the model of U from tensor products of unit bases,
    with the normalized identity outside each pattern.
    """
    dim_total, dim_model = model_dim(shape, U)
    indices: list[tuple[int, ...]] = []
    patterns: list[frozenset[int]] = []
    for v in U.sets:
        block = _element_indices(shape, v)
        indices.extend(block)
        patterns.extend([v] * len(block))
    basis = _assemble(shape, indices)

    entries = basis.size
    if entries <= settings.verify_basis_limit:
        flat = basis.reshape(len(basis), -1)
        gram = flat.conj() @ flat.T
        error = float(np.max(np.abs(gram - np.eye(len(basis)))))
        if error > HERMITIAN_TOL * max(shape.dim, 1):
            logger.warning(f"Model basis deviates from orthonormality by {error:.3e}")
    else:
        logger.warning(f"Skipping Gram check of a basis with {entries} entries")

    basis.setflags(write=False)
    logger.debug(f"Built model on {shape.sizes} with {dim_total} basis elements")
    return HierarchicalModelSpec(
        shape=shape,
        hypergraph=U,
        basis=basis,
        patterns=tuple(patterns),
        indices=tuple(indices),
        dim_total=dim_total,
        dim_model=dim_model,
    )
