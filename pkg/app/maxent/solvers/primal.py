import logging

import numpy as np

from app.algebra import DensityMatrix, hermitian_eigh
from app.config import settings
from app.hierarchy import HierarchicalModelSpec

from ..types import ProjectionOptions, SolverOutcome
from .base import BaseSolver, solve_newton, spectral_hessian

logger = logging.getLogger(__name__)

ARMIJO = 1e-4
MIN_STEP = 1e-14


def smoothed_entropy_terms(values: np.ndarray, floor: float):
    """
    phi(l) = l log l for l >= floor, continued below the floor by its
    second-order Taylor polynomial at the floor. Returns phi, phi' and phi''.
    """
    above = values >= floor
    safe = np.where(above, values, floor)
    log_floor = np.log(floor)
    delta = values - floor
    phi = np.where(above, safe * np.log(safe), floor * log_floor + (log_floor + 1) * delta + delta**2 / (2 * floor))
    d_phi = np.where(above, np.log(safe) + 1, log_floor + 1 + delta / floor)
    dd_phi = 1.0 / np.maximum(values, floor)
    return phi, d_phi, dd_phi


def _d_phi_divided_differences(values: np.ndarray, floor: float) -> np.ndarray:
    _, d_phi, dd_phi = smoothed_entropy_terms(values, floor)
    a, b = values[:, None], values[None, :]
    gap = a - b
    close = np.abs(gap) <= 1e-13 * np.maximum(1.0, np.maximum(np.abs(a), np.abs(b)))
    safe_gap = np.where(close, 1.0, gap)
    both_above = (a >= floor) & (b >= floor)
    log_ratio = np.log1p(np.where(both_above, gap / np.maximum(b, floor), 0.0)) / safe_gap
    generic = (d_phi[:, None] - d_phi[None, :]) / safe_gap
    out = np.where(both_above, log_ratio, generic)
    return np.where(close, (dd_phi[:, None] + dd_phi[None, :]) / 2, out)


class PrimalSolver(BaseSolver):
    """
    Entropy maximization over the constraint set rho + span(complement basis).
    The entropy is smoothed below a floor; Newton runs for a decreasing
    sequence of floors and the result is clipped to a state at the end.
    Handles projections on the boundary of the state space.
    """

    name = "primal"

    def __init__(self, floors: list[float] | None = None):
        self.floors = floors or settings.solver.primal_floors

    def solve(self, rho: DensityMatrix, model: HierarchicalModelSpec, opts: ProjectionOptions) -> SolverOutcome:
        directions = model.complement_basis
        if len(directions) == 0:
            return SolverOutcome(matrix=np.array(rho.matrix), iterations=0, converged=True)

        start = np.array(rho.matrix)
        x = np.zeros(len(directions))
        iterations = 0
        stage_converged = False
        for floor in self.floors:
            x, used, stage_converged = self._stage(start, directions, x, floor, opts.max_iter)
            iterations += used
            logger.debug(f"primal floor {floor:.0e}: {used} iterations, converged={stage_converged}")

        matrix = start + np.tensordot(x, directions, axes=1)
        return SolverOutcome(
            matrix=(matrix + matrix.conj().T) / 2,
            iterations=iterations,
            converged=stage_converged,
            reason=None if stage_converged else "smoothed entropy did not converge",
        )

    def _stage(self, start: np.ndarray, directions: np.ndarray, x: np.ndarray, floor: float, max_iter: int):
        def value(point: np.ndarray) -> float:
            tau = start + np.tensordot(point, directions, axes=1)
            values = np.linalg.eigvalsh((tau + tau.conj().T) / 2)
            phi, _, _ = smoothed_entropy_terms(values, floor)
            return -float(phi.sum())

        for iteration in range(1, max_iter + 1):
            tau = start + np.tensordot(x, directions, axes=1)
            values, vectors = hermitian_eigh(tau)
            phi, d_phi, _ = smoothed_entropy_terms(values, floor)
            current = -float(phi.sum())
            rotated = np.einsum("ab,ibc,cd->iad", vectors.conj().T, directions, vectors, optimize=True)
            gradient = -np.einsum("iaa,a->i", rotated, d_phi).real
            hessian = -spectral_hessian(rotated, _d_phi_divided_differences(values, floor))

            step = solve_newton(hessian, gradient)
            slope = float(gradient @ step)
            if not slope > 0:
                step, slope = gradient, float(gradient @ gradient)
            if slope <= 1e-16 or np.max(np.abs(gradient)) <= 1e-12:
                return x, iteration, True

            t = 1.0
            if slope > 1e-12:
                slack = 1e-15 * (1.0 + abs(current))
                while value(x + t * step) < current + ARMIJO * t * slope - slack:
                    t /= 2
                    if t < MIN_STEP:
                        return x, iteration, slope <= 1e-10
            x = x + t * step
        return x, max_iter, False
