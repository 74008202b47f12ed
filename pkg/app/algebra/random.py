import numpy as np

from .types import DensityMatrix, SystemShape


def random_pure_state(shape: SystemShape, rng: np.random.Generator) -> DensityMatrix:
    """Haar-random pure state: a normalized complex Gaussian vector."""
    psi = rng.normal(size=shape.dim) + 1j * rng.normal(size=shape.dim)
    return DensityMatrix.from_vector(shape, psi)


def random_distribution(shape: SystemShape, rng: np.random.Generator) -> DensityMatrix:
    """Uniform point of the open simplex over all configurations."""
    return DensityMatrix.from_probabilities(shape, rng.dirichlet(np.ones(shape.dim)))


def random_density_matrix(
    shape: SystemShape, rng: np.random.Generator, rank: int | None = None
) -> DensityMatrix:
    """
    G G* / tr(G G*) for a complex Gaussian d x rank matrix G. Full rank by
    default; all-classical shapes get a random distribution instead.
    """
    if shape.is_classical:
        return random_distribution(shape, rng)
    rank = shape.dim if rank is None else rank
    if not 1 <= rank <= shape.dim:
        raise ValueError(f"Rank must lie in 1..{shape.dim}, got {rank}")
    G = rng.normal(size=(shape.dim, rank)) + 1j * rng.normal(size=(shape.dim, rank))
    return DensityMatrix.from_hermitian(shape, G @ G.conj().T)


def random_rank_mixed(shape: SystemShape, rng: np.random.Generator) -> DensityMatrix:
    """Rank drawn uniformly from 1..d, then a random state of that rank."""
    return random_density_matrix(shape, rng, int(rng.integers(1, shape.dim + 1)))
