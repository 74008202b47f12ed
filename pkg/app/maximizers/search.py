"""
Multi-start ascent on rho -> d(rho), the divergence from a hierarchical model.
The gradient is log rho - log pi(rho): the projection is held fixed when
differentiating.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from math import floor

import numpy as np

from app.algebra import DensityMatrix, dephase, log_state
from app.config import settings
from app.hierarchy import HierarchicalModelSpec
from app.maxent import maxent_project, multi_information, product_of_marginals
from app.maxent.solvers import fit_marginals

from .bounds import bound_is_extension, classical_multi_information_bound, support_bound
from .exp_form import check_exponential_form
from .types import MaximizerReport, MaximizerSearch, SearchOptions

logger = logging.getLogger(__name__)

# objective may drop by this much on an accepted step
ASCENT_SLACK = 1e-12
STALL_STEPS = 3
SEARCH_IPF_SWEEPS = 2000


def _is_independence(model: HierarchicalModelSpec) -> bool:
    return all(len(v) <= 1 for v in model.hypergraph.sets)


class _ClassicalObjective:
    def __init__(self, model: HierarchicalModelSpec):
        self.sizes = model.shape.sizes
        self.keys = [tuple(sorted(v)) for v in model.hypergraph.maximal_sets]

    def projection(self, p: np.ndarray) -> np.ndarray:
        table = p.reshape(self.sizes)
        targets = {
            keep: table.sum(axis=tuple(i for i in range(table.ndim) if i not in keep), keepdims=True)
            for keep in self.keys
        }
        pi, _, _ = fit_marginals(targets, self.sizes, 1e-12, SEARCH_IPF_SWEEPS)
        return pi

    def __call__(self, p: np.ndarray) -> tuple[float, np.ndarray]:
        pi = self.projection(p)
        support = p > 0
        value = float(np.sum(p[support] * (np.log(p[support]) - np.log(pi[support]))))
        return value, pi


class _QuantumObjective:
    def __init__(self, model: HierarchicalModelSpec):
        self.model = model
        self.independence = _is_independence(model)

    def __call__(self, matrix: np.ndarray) -> tuple[float, DensityMatrix, DensityMatrix]:
        rho = DensityMatrix.from_hermitian(self.model.shape, dephase(matrix, self.model.shape))
        if self.independence:
            return multi_information(rho), rho, product_of_marginals(rho)
        result = maxent_project(rho, self.model)
        return result.divergence, rho, result.pi


def _classical_restart(model: HierarchicalModelSpec, opts: SearchOptions, rng: np.random.Generator):
    objective = _ClassicalObjective(model)
    p = rng.dirichlet(np.ones(model.shape.dim))
    value, pi = objective(p)
    history = [value]
    eta = 1.0
    stalled = 0
    converged = False
    step = 0
    for step in range(1, opts.max_steps + 1):
        support = p > 0
        gradient = np.zeros_like(p)
        gradient[support] = np.log(p[support]) - np.log(pi[support])
        gradient[support] -= gradient[support].max()
        trial = p * np.exp(eta * gradient)
        trial /= trial.sum()
        trial_value, trial_pi = objective(trial)
        if trial_value < value - ASCENT_SLACK:
            eta /= 2
            if eta < 1e-10:
                converged = True
                break
            continue

        gain = trial_value - value
        p, value, pi = trial, trial_value, trial_pi
        eta = min(eta * 1.5, 64.0)
        history.append(value)

        small = (p > 0) & (p < opts.snap)
        if np.any(small):
            snapped = np.where(small, 0.0, p)
            snapped /= snapped.sum()
            snapped_value, snapped_pi = objective(snapped)
            if snapped_value >= value - ASCENT_SLACK:
                p, value, pi = snapped, snapped_value, snapped_pi
                history.append(value)

        stalled = stalled + 1 if gain < 1e-13 else 0
        if stalled >= STALL_STEPS:
            converged = True
            break
    return DensityMatrix.from_probabilities(model.shape, p), step, converged, history


def _reduce_rank(matrix: np.ndarray, rank_eigenvalue: float, force: bool) -> np.ndarray | None:
    """Factor of matrix without eigenvalues at or below rank_eigenvalue; force also drops the smallest kept one."""
    values, vectors = np.linalg.eigh(matrix)
    keep = values > rank_eigenvalue
    if force and keep.sum() > 1:
        kept = np.flatnonzero(keep)
        keep[kept[np.argmin(values[kept])]] = False
    if not keep.any():
        return None
    return vectors[:, keep] * np.sqrt(values[keep])


def _quantum_restart(model: HierarchicalModelSpec, opts: SearchOptions, rng: np.random.Generator):
    objective = _QuantumObjective(model)
    d = model.shape.dim
    rank = max(1, min(d, floor(support_bound(model) + 1e-9)))
    factor = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    factor /= np.linalg.norm(factor)

    value, rho, pi = objective(factor @ factor.conj().T)
    history = [value]
    size = 1.0
    stalled = 0
    converged = False
    step = 0
    for step in range(1, opts.max_steps + 1):
        trace = float(np.real(np.trace(factor @ factor.conj().T)))
        g = log_state(rho) - log_state(pi)
        g = g - np.real(np.trace(rho.matrix @ g)) * np.eye(d)
        direction = (2.0 / trace) * g @ factor
        trial = factor + size * direction
        trial_value, trial_rho, trial_pi = objective(trial @ trial.conj().T)
        if trial_value < value - ASCENT_SLACK:
            size /= 2
            if size < 1e-10:
                converged = True
                break
            continue

        gain = trial_value - value
        factor, value, rho, pi = trial, trial_value, trial_rho, trial_pi
        size = min(size * 1.5, 64.0)
        history.append(value)

        reduced = _reduce_rank(rho.matrix, opts.rank_eigenvalue, force=False)
        if reduced is not None and reduced.shape[1] < factor.shape[1]:
            reduced_value, reduced_rho, reduced_pi = objective(reduced @ reduced.conj().T)
            if reduced_value >= value - ASCENT_SLACK:
                factor, value, rho, pi = reduced, reduced_value, reduced_rho, reduced_pi
                history.append(value)

        stalled = stalled + 1 if gain < 1e-13 else 0
        if stalled >= STALL_STEPS:
            converged = True
            break

    # settle on a lower-rank face when that does not lose objective
    while True:
        current = int(np.sum(np.linalg.eigvalsh(rho.matrix) > opts.rank_eigenvalue))
        reduced = _reduce_rank(rho.matrix, opts.rank_eigenvalue, force=True)
        if reduced is None or reduced.shape[1] >= current:
            break
        reduced_value, reduced_rho, reduced_pi = objective(reduced @ reduced.conj().T)
        if reduced_value < value - ASCENT_SLACK:
            break
        value, rho, pi = reduced_value, reduced_rho, reduced_pi
        history.append(value)
    return rho, step, converged, history


def _report(
    model: HierarchicalModelSpec,
    opts: SearchOptions,
    state: DensityMatrix,
    steps: int,
    converged: bool,
    history: list[float],
    seed: int,
    index: int,
) -> MaximizerReport:
    if _is_independence(model):
        divergence = multi_information(state)
    else:
        result = maxent_project(state, model)
        divergence = result.divergence
        converged = converged and result.converged

    eigenvalues = np.linalg.eigvalsh(state.matrix)
    rank = int(np.sum(eigenvalues > opts.rank_eigenvalue))
    bound = support_bound(model)
    support_size = int(np.sum(state.probabilities > opts.rank_eigenvalue)) if model.shape.is_classical else None
    measured = support_size if support_size is not None else rank
    return MaximizerReport(
        state=state,
        divergence=divergence,
        rank=rank,
        support_size=support_size,
        bound=bound,
        bound_satisfied=measured <= bound + 1e-9,
        extended_bound=bound_is_extension(model.shape),
        exp_form_residual=check_exponential_form(state, model),
        restarts=opts.restarts,
        seed=seed,
        restart_index=index,
        steps=steps,
        converged=converged,
        ascent=history,
    )


def search_maximizers(
    model: HierarchicalModelSpec, opts: SearchOptions | None = None, seed: int | None = None
) -> MaximizerSearch:
    """
    Run opts.restarts independent ascents with seeds spawned from seed and
    keep the distinct local maximizers, i.e. restarts whose end point passes
    the exponential-form check, clustered by divergence value.
    """
    opts = opts or SearchOptions()
    seed = settings.seed if seed is None else seed
    children = np.random.SeedSequence(seed).spawn(opts.restarts)
    restart = _classical_restart if model.shape.is_classical else _quantum_restart

    def run(index: int) -> MaximizerReport | None:
        try:
            state, steps, converged, history = restart(model, opts, np.random.default_rng(children[index]))
            return _report(model, opts, state, steps, converged, history, seed, index)
        except (ValueError, np.linalg.LinAlgError) as exc:
            logger.warning(f"Restart {index} failed: {exc}")
            return None

    with ThreadPoolExecutor(max_workers=max(1, opts.threads)) as executor:
        outcomes = list(executor.map(run, range(opts.restarts)))

    finished = [report for report in outcomes if report is not None]
    failed = len(outcomes) - len(finished)
    unconverged = sum(1 for report in finished if not report.converged)
    maximizers = [report for report in finished if report.exp_form_residual <= opts.exp_form_tol]
    rejected = len(finished) - len(maximizers)

    distinct: list[MaximizerReport] = []
    for report in sorted(maximizers, key=lambda r: (-r.divergence, r.restart_index)):
        if all(abs(report.divergence - kept.divergence) > opts.cluster_tol for kept in distinct):
            distinct.append(report)

    for report in distinct:
        if not report.bound_satisfied:
            logger.warning(
                f"Maximizer from restart {report.restart_index} has rank {report.rank} above bound {report.bound:.4f}"
            )
    logger.info(
        f"Search on {model.shape.sizes}: {len(distinct)} distinct maximizers, "
        f"{failed} failed, {unconverged} unconverged, {rejected} rejected"
    )
    return MaximizerSearch(
        reports=distinct,
        restarts=opts.restarts,
        seed=seed,
        failed=failed,
        unconverged=unconverged,
        rejected=rejected,
        global_bound=classical_multi_information_bound(model.shape),
    )


def local_max_search(
    model: HierarchicalModelSpec, opts: SearchOptions | None = None, seed: int | None = None
) -> MaximizerReport | None:
    """Best local maximizer of the divergence found by search_maximizers."""
    return search_maximizers(model, opts, seed).best
