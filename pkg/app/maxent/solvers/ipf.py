import logging

import numpy as np

from app.algebra import DensityMatrix
from app.config import settings
from app.errors import QuantumUnitError
from app.hierarchy import HierarchicalModelSpec

from ..types import ProjectionOptions, SolverOutcome
from .base import BaseSolver

logger = logging.getLogger(__name__)


def _marginal(p: np.ndarray, keep: tuple[int, ...]) -> np.ndarray:
    drop = tuple(i for i in range(p.ndim) if i not in keep)
    return p.sum(axis=drop, keepdims=True)


def _ratio(target: np.ndarray, current: np.ndarray) -> np.ndarray:
    # 0 / 0 = 0
    return np.divide(target, current, out=np.zeros_like(target), where=current > 0)


def fit_marginals(
    targets: dict[tuple[int, ...], np.ndarray],
    sizes: tuple[int, ...],
    tol: float,
    max_sweeps: int,
    start: np.ndarray | None = None,
) -> tuple[np.ndarray, int, bool]:
    """
    Iterative proportional fitting of a joint table to prescribed marginals,
    one rescaling per marginal and sweep, starting from the uniform table.
    """
    p = np.full(sizes, 1.0 / np.prod(sizes)) if start is None else start.reshape(sizes).copy()
    for sweep in range(1, max_sweeps + 1):
        for keep, target in targets.items():
            p = p * _ratio(target, _marginal(p, keep))
        deviation = max(float(np.max(np.abs(_marginal(p, keep) - t))) for keep, t in targets.items())
        if deviation <= tol:
            return p.reshape(-1), sweep, True
    return p.reshape(-1), max_sweeps, False


class IPFSolver(BaseSolver):
    """Iterative proportional fitting over the maximal sets of the hypergraph."""

    name = "ipf"

    def solve(self, rho: DensityMatrix, model: HierarchicalModelSpec, opts: ProjectionOptions) -> SolverOutcome:
        if not model.shape.is_classical:
            raise QuantumUnitError("Iterative proportional fitting needs every unit to be classical")
        sizes = model.shape.sizes
        joint = rho.probabilities.reshape(sizes)
        targets = {
            tuple(sorted(v)): _marginal(joint, tuple(sorted(v)))
            for v in model.hypergraph.maximal_sets
        }
        p, sweeps, converged = fit_marginals(
            targets, sizes, opts.tol, max(opts.max_iter, settings.solver.ipf_max_iter)
        )
        if not converged:
            logger.info(f"IPF stopped after {sweeps} sweeps without reaching {opts.tol:g}")
        return SolverOutcome(
            matrix=np.diag(p / p.sum()).astype(complex),
            iterations=sweeps,
            converged=converged,
            reason=None if converged else "sweep limit",
        )
