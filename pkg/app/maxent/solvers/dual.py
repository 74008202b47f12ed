import logging

import numpy as np

from app.algebra import DensityMatrix, hermitian_eigh
from app.hierarchy import HierarchicalModelSpec

from ..types import ProjectionOptions, SolverOutcome
from .base import BaseSolver, exp_divided_differences, solve_newton, spectral_hessian

logger = logging.getLogger(__name__)

ARMIJO = 1e-4
MIN_STEP = 1e-12


class DualSolver(BaseSolver):
    """
    Damped Newton on the convex dual log Z(theta) - <theta, targets>, started
    at theta = 0. The Hessian is the Kubo-Mori metric, built from divided
    differences of exp on the spectrum of the Hamiltonian.
    """

    name = "dual"

    def solve(self, rho: DensityMatrix, model: HierarchicalModelSpec, opts: ProjectionOptions) -> SolverOutcome:
        basis = model.hamiltonian_basis
        targets = model.coefficients(rho.matrix)[1:]
        if len(basis) == 0:
            return SolverOutcome(
                matrix=np.eye(model.shape.dim) / model.shape.dim, iterations=0, converged=True,
                theta=np.zeros(0), logZ=float(np.log(model.shape.dim)),
            )
        if model.shape.is_classical:
            evaluate = _ClassicalDual(basis, targets)
        else:
            evaluate = _QuantumDual(basis, targets)

        theta = np.zeros(len(basis))
        reason = None
        converged = False
        iteration = 0
        for iteration in range(1, opts.max_iter + 1):
            value, gradient, hessian = evaluate.full(theta)
            residual = float(np.max(np.abs(gradient)))
            logger.debug(f"dual iteration {iteration}: residual {residual:.3e}")
            if residual <= opts.tol:
                converged = True
                break
            if np.linalg.norm(theta) > opts.theta_threshold:
                reason = f"theta norm exceeded {opts.theta_threshold:g}"
                break

            step = solve_newton(hessian, gradient)
            slope = float(gradient @ step)
            if not slope < 0:
                step, slope = -gradient, -float(gradient @ gradient)

            t = 1.0
            slack = 1e-15 * (1.0 + abs(value))
            while evaluate.value(theta + t * step) > value + ARMIJO * t * slope + slack:
                t /= 2
                if t < MIN_STEP:
                    break
            if t < MIN_STEP:
                reason = "line search stalled"
                break
            theta = theta + t * step

        matrix, log_z = evaluate.state(theta)
        if not converged:
            logger.info(f"Dual solver stopped after {iteration} iterations: {reason or 'iteration limit'}")
        return SolverOutcome(
            matrix=matrix,
            iterations=iteration,
            converged=converged,
            theta=theta,
            logZ=log_z,
            reason=reason or (None if converged else "iteration limit"),
        )


class _ClassicalDual:
    def __init__(self, basis: np.ndarray, targets: np.ndarray):
        self.features = np.real(np.einsum("iaa->ia", basis))
        self.targets = targets

    def _weights(self, theta: np.ndarray) -> tuple[np.ndarray, float]:
        energies = theta @ self.features
        top = energies.max()
        w = np.exp(energies - top)
        total = w.sum()
        return w / total, float(top + np.log(total))

    def value(self, theta: np.ndarray) -> float:
        _, log_z = self._weights(theta)
        return log_z - float(theta @ self.targets)

    def full(self, theta: np.ndarray):
        p, log_z = self._weights(theta)
        mean = self.features @ p
        hessian = (self.features * p) @ self.features.T - np.outer(mean, mean)
        return log_z - float(theta @ self.targets), mean - self.targets, hessian

    def state(self, theta: np.ndarray) -> tuple[np.ndarray, float]:
        p, log_z = self._weights(theta)
        return np.diag(p).astype(complex), log_z


class _QuantumDual:
    def __init__(self, basis: np.ndarray, targets: np.ndarray):
        self.basis = basis
        self.targets = targets

    def _spectrum(self, theta: np.ndarray):
        values, vectors = hermitian_eigh(np.tensordot(theta, self.basis, axes=1))
        top = values.max()
        return values - top, vectors, float(top)

    def value(self, theta: np.ndarray) -> float:
        shifted, _, top = self._spectrum(theta)
        return top + float(np.log(np.exp(shifted).sum())) - float(theta @ self.targets)

    def full(self, theta: np.ndarray):
        shifted, vectors, top = self._spectrum(theta)
        w = np.exp(shifted)
        total = w.sum()
        p = w / total
        rotated = np.einsum("ab,ibc,cd->iad", vectors.conj().T, self.basis, vectors, optimize=True)
        mean = np.einsum("iaa,a->i", rotated, p).real
        metric = exp_divided_differences(shifted) / total
        hessian = spectral_hessian(rotated, metric) - np.outer(mean, mean)
        value = top + float(np.log(total)) - float(theta @ self.targets)
        return value, mean - self.targets, hessian

    def state(self, theta: np.ndarray) -> tuple[np.ndarray, float]:
        shifted, vectors, top = self._spectrum(theta)
        w = np.exp(shifted)
        total = w.sum()
        matrix = (vectors * (w / total)) @ vectors.conj().T
        return (matrix + matrix.conj().T) / 2, top + float(np.log(total))
