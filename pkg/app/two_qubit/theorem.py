import logging

import numpy as np
from pydantic import BaseModel
from scipy.special import xlogy

from app.config import settings
from app.constants import LOG2, PRODUCT_FORMS
from app.maxent import multi_information

from .bell import bell_from_t, bell_sign_matrix
from .classical import is_classically_correlated_bd, mutual_information_bd, separable_extreme_points

logger = logging.getLogger(__name__)

BOUND_SLACK = 1e-9
PRODUCT_FORM_TOL = 1e-12


def sample_octahedron(samples: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform points of |t|_1 <= 1: Dirichlet weights for |t_i| with random signs."""
    weights = rng.dirichlet(np.ones(4), size=samples)[:, :3]
    signs = rng.choice([-1.0, 1.0], size=(samples, 3))
    return weights * signs


def _vertex_distance(t: np.ndarray) -> float:
    """l1 distance from t to the nearest vertex +-e_i of the octahedron."""
    magnitude = np.abs(t)
    return float(1 - magnitude.max() + magnitude.sum() - magnitude.max())


def _product_form(pair: tuple[int, int]) -> np.ndarray:
    matrix = np.zeros((4, 4), dtype=complex)
    for a, b in PRODUCT_FORMS[pair]:
        ket = np.kron(a, b)
        matrix += np.outer(ket, ket.conj()) / 2
    return matrix


class VertexCheck(BaseModel):
    pair: tuple[int, int]
    t: tuple[float, float, float]
    mutual_information: float
    attains_bound: bool
    classical: bool
    product_form_deviation: float


class Theorem1Report(BaseModel):
    samples: int
    seed: int
    max_sampled_information: float
    argmax_t: tuple[float, float, float]
    # l1 distance from the best sample to the nearest vertex
    argmax_vertex_distance: float
    violations: int
    formula_deviation: float
    vertices: list[VertexCheck]
    holds: bool
    counterexample: tuple[float, float, float] | None = None


def verify_theorem1(samples: int, seed: int | None = None) -> Theorem1Report:
    """
    Separable Bell-diagonal states carry at most log 2 of mutual information,
    reached exactly at the six vertices of the separable octahedron, each of
    which is a classically correlated mixture of two product states.
    """
    if samples < 1:
        raise ValueError(f"Need at least one sample, got {samples}")
    seed = settings.seed if seed is None else seed
    rng = np.random.default_rng(seed)

    t = sample_octahedron(samples, rng)
    lam = np.clip((1 + t @ bell_sign_matrix().T) / 4, 0.0, None)
    information = 2 * LOG2 + np.sum(xlogy(lam, lam), axis=1)
    best = int(np.argmax(information))
    violations = np.flatnonzero(information > LOG2 + BOUND_SLACK)

    # spot-check the closed form against the generic multi-information
    formula_deviation = max(
        abs(mutual_information_bd(bell_from_t(point)) - multi_information(bell_from_t(point).state()))
        for point in t[: min(samples, 10)]
    )

    vertices = []
    pairs = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    for pair, vertex in zip(pairs, separable_extreme_points()):
        value = mutual_information_bd(vertex)
        vertices.append(
            VertexCheck(
                pair=pair,
                t=vertex.t,
                mutual_information=value,
                attains_bound=abs(value - LOG2) <= BOUND_SLACK,
                classical=is_classically_correlated_bd(vertex).classical,
                product_form_deviation=float(np.max(np.abs(vertex.matrix() - _product_form(pair)))),
            )
        )

    holds = (
        len(violations) == 0
        and all(v.attains_bound and v.classical for v in vertices)
        and all(v.product_form_deviation <= PRODUCT_FORM_TOL for v in vertices)
    )
    counterexample = tuple(t[violations[0]].tolist()) if len(violations) else None
    if not holds:
        logger.warning(f"Theorem check failed: {len(violations)} bound violations, counterexample {counterexample}")
    return Theorem1Report(
        samples=samples,
        seed=seed,
        max_sampled_information=float(information[best]),
        argmax_t=tuple(t[best].tolist()),
        argmax_vertex_distance=_vertex_distance(t[best]),
        violations=len(violations),
        formula_deviation=float(formula_deviation),
        vertices=vertices,
        holds=holds,
        counterexample=counterexample,
    )
