import logging
from itertools import combinations
from math import comb

import numpy as np
from pydantic import BaseModel
from scipy.special import rel_entr

from app.algebra import SystemShape
from app.config import settings
from app.errors import EmptySupportError, ExhaustionGuardError
from app.hierarchy import build_model, hypergraph_k
from app.maxent.solvers import fit_marginals

from .interaction import (
    Configuration,
    InteractionMatrix,
    build_interaction_matrix,
    configuration_index,
    configurations,
)
from .toric import check_toric_membership

logger = logging.getLogger(__name__)

IPF_ORACLE_FIT_TOL = 1e-12
IPF_ORACLE_SWEEPS = 2000


def _column_masks(A: InteractionMatrix) -> list[int]:
    """Row support of every column as a bit mask."""
    masks = []
    for column in A.entries.T:
        mask = 0
        for r in np.flatnonzero(column):
            mask |= 1 << int(r)
        masks.append(mask)
    return masks


def _feasible_indices(masks: list[int], chosen: tuple[int, ...]) -> bool:
    covered = 0
    for c in chosen:
        covered |= masks[c]
    inside = set(chosen)
    return not any(mask & ~covered == 0 for x, mask in enumerate(masks) if x not in inside)


def is_k_feasible(F, shape: SystemShape, k: int) -> bool:
    """
    A non-empty support F is k-feasible when no configuration outside F has
    its row support inside the union of the row supports of F. Exactly then
    the uniform vector on F factorizes over the k-party subsystems.
    """
    support = {tuple(x) for x in F}
    if not support:
        raise EmptySupportError("Feasibility is only defined for non-empty supports")
    A = build_interaction_matrix(shape, k)
    chosen = tuple(sorted(configuration_index(shape, x) for x in support))
    return _feasible_indices(_column_masks(A), chosen)


def uniform_on(F, shape: SystemShape) -> np.ndarray:
    """Uniform probability vector on F over all joint configurations."""
    support = {tuple(x) for x in F}
    if not support:
        raise EmptySupportError("Cannot build the uniform vector on an empty support")
    p = np.zeros(shape.dim)
    for x in support:
        p[configuration_index(shape, x)] = 1.0
    return p / p.sum()


def ipf_uniform_divergence(F, shape: SystemShape, k: int, max_sweeps: int | None = None) -> float:
    """
    D(u_F, q) for q fitted by iterative proportional fitting from the uniform
    table to the k-unit marginals of u_F. Zero, up to solver error, exactly
    when F is k-feasible.
    """
    target = uniform_on(F, shape)
    joint = target.reshape(shape.sizes)
    targets = {}
    for nu in combinations(range(shape.N), k):
        drop = tuple(i for i in range(shape.N) if i not in nu)
        targets[nu] = joint.sum(axis=drop, keepdims=True)
    q, sweeps, converged = fit_marginals(
        targets, shape.sizes, IPF_ORACLE_FIT_TOL, max_sweeps or IPF_ORACLE_SWEEPS
    )
    if not converged:
        logger.debug(f"IPF oracle stopped after {sweeps} sweeps on a support of size {len(F)}")
    return float(np.sum(rel_entr(target, q)))


class SizeSummary(BaseModel):
    size: int
    total: int
    feasible: int


class FeasibilityReport(BaseModel):
    sizes: list[int]
    k: int
    max_size: int
    by_size: list[SizeSummary]
    # every subset of size <= k is feasible
    small_sets_feasible: bool
    minimal_infeasible: list[list[Configuration]]


def enumerate_feasibility(shape: SystemShape, k: int, max_size: int | None = None) -> FeasibilityReport:
    """
    Classify every non-empty support of size up to max_size and collect the
    non-feasible ones of smallest size.
    """
    A = build_interaction_matrix(shape, k)
    columns = configurations(shape)
    d = len(columns)
    max_size = d if max_size is None else min(max_size, d)
    total = sum(comb(d, size) for size in range(1, max_size + 1))
    if total > settings.feasibility.guard:
        raise ExhaustionGuardError(
            f"{total} subsets exceed the enumeration guard of {settings.feasibility.guard}"
        )

    masks = _column_masks(A)
    by_size = []
    minimal: list[list[Configuration]] = []
    for size in range(1, max_size + 1):
        feasible = 0
        infeasible = []
        for chosen in combinations(range(d), size):
            if _feasible_indices(masks, chosen):
                feasible += 1
            elif not minimal:
                infeasible.append([columns[c] for c in chosen])
        if infeasible:
            minimal = infeasible
        by_size.append(SizeSummary(size=size, total=comb(d, size), feasible=feasible))

    small = all(s.feasible == s.total for s in by_size if s.size <= k)
    if not small:
        logger.warning(f"Found infeasible sets of size <= {k} on {shape.sizes}")
    return FeasibilityReport(
        sizes=list(shape.sizes),
        k=k,
        max_size=max_size,
        by_size=by_size,
        small_sets_feasible=small,
        minimal_infeasible=minimal,
    )


def weight_one_support(shape: SystemShape) -> list[Configuration]:
    """Configurations with exactly one nonzero symbol, e.g. {100, 010, 001}."""
    return [x for x in configurations(shape) if sum(1 for s in x if s != 0) == 1]


class InclusionChainReport(BaseModel):
    samples: int
    gibbs_full_support: bool
    gibbs_toric: bool
    weight_one: list[Configuration]
    weight_one_toric: bool
    weight_one_feasible: bool

    @property
    def exhibits_gap(self) -> bool:
        """The weight-one support lies in the toric closure but is not a factorizing uniform vector."""
        return self.weight_one_toric and not self.weight_one_feasible


def inclusion_chain_report(
    shape: SystemShape, k: int, seed: int | None = None, samples: int = 20
) -> InclusionChainReport:
    """
    Spot-check the chain Gibbs family < closure < toric variety: random Gibbs
    points have full support and satisfy the binomials, while the uniform
    vector on the weight-one support satisfies the binomials without being
    k-feasible when k < N.
    """
    seed = settings.seed if seed is None else seed
    rng = np.random.default_rng(seed)
    A = build_interaction_matrix(shape, k)
    model = build_model(shape, hypergraph_k(shape.N, k))
    diagonals = np.real(np.einsum("iaa->ia", model.hamiltonian_basis))

    full_support = True
    toric = True
    for _ in range(samples):
        energies = rng.normal(size=len(diagonals)) @ diagonals
        p = np.exp(energies - energies.max())
        p /= p.sum()
        full_support &= bool(np.all(p > 0))
        toric &= check_toric_membership(p, A).member

    support = weight_one_support(shape)
    return InclusionChainReport(
        samples=samples,
        gibbs_full_support=full_support,
        gibbs_toric=toric,
        weight_one=support,
        weight_one_toric=check_toric_membership(uniform_on(support, shape), A).member,
        weight_one_feasible=is_k_feasible(support, shape, k),
    )
