import logging

import numpy as np

from app.algebra import (
    DensityMatrix,
    marginal,
    product_state,
    relative_entropy,
    von_neumann_entropy,
)
from app.errors import ShapeMismatchError
from app.hierarchy import HierarchicalModelSpec

from .solvers import get_solver
from .types import (
    GibbsParameters,
    ProjectionOptions,
    ProjectionResult,
    SolverMethod,
    SolverOutcome,
)

logger = logging.getLogger(__name__)


def _score(
    rho: DensityMatrix,
    model: HierarchicalModelSpec,
    outcome: SolverOutcome,
    method: SolverMethod,
    tolerance: float,
    diagnostics: list[str],
) -> ProjectionResult:
    pi = DensityMatrix.from_hermitian(model.shape, outcome.matrix)
    residual = float(np.max(np.abs(model.coefficients(pi.matrix) - model.coefficients(rho.matrix))))
    entropy_pi = von_neumann_entropy(pi)
    entropy_rho = von_neumann_entropy(rho)
    theta = None
    if method == SolverMethod.DUAL and outcome.theta is not None:
        theta = GibbsParameters(model=model, theta=outcome.theta, logZ=outcome.logZ)
    if outcome.reason:
        diagnostics.append(f"{method.value}: {outcome.reason}")
    return ProjectionResult(
        pi=pi,
        divergence=max(entropy_pi - entropy_rho, 0.0),
        constraint_residual=residual,
        method=method,
        iterations=outcome.iterations,
        converged=outcome.converged and residual <= tolerance,
        theta=theta,
        entropy_pi=entropy_pi,
        entropy_rho=entropy_rho,
        tolerance=tolerance,
        diagnostics=diagnostics,
    )


def _run(method: SolverMethod, rho, model, opts) -> SolverOutcome:
    solver = get_solver(method.value)
    if solver is None:
        raise ValueError(f"Unknown solver: {method.value}")
    return solver.solve(rho, model, opts)


def maxent_project(
    rho: DensityMatrix, model: HierarchicalModelSpec, opts: ProjectionOptions | None = None
) -> ProjectionResult:
    """
    The maximum-entropy state pi with the same model-basis expectations as rho.

    With method "auto" the dual Newton solver runs first; when it fails or
    lands next to the boundary (smallest eigenvalue of pi below
    opts.boundary_eigenvalue) the primal solver takes over and theta is dropped.
    """
    opts = opts or ProjectionOptions()
    if rho.shape != model.shape:
        raise ShapeMismatchError(f"State of shape {rho.shape} does not fit model on {model.shape}")

    if opts.method == SolverMethod.DUAL:
        return _score(rho, model, _run(SolverMethod.DUAL, rho, model, opts), SolverMethod.DUAL, opts.tol, [])
    if opts.method == SolverMethod.IPF:
        return _score(rho, model, _run(SolverMethod.IPF, rho, model, opts), SolverMethod.IPF, opts.tol, [])
    if opts.method == SolverMethod.PRIMAL:
        outcome = _run(SolverMethod.PRIMAL, rho, model, opts)
        return _score(rho, model, outcome, SolverMethod.PRIMAL, opts.boundary_tol, [])

    diagnostics: list[str] = []
    dual = _run(SolverMethod.DUAL, rho, model, opts)
    smallest = float(np.linalg.eigvalsh(dual.matrix).min())
    if dual.converged and smallest >= opts.boundary_eigenvalue:
        return _score(rho, model, dual, SolverMethod.DUAL, opts.tol, diagnostics)

    if dual.converged:
        diagnostics.append(f"dual: smallest eigenvalue {smallest:.3e} is below {opts.boundary_eigenvalue:g}")
    else:
        diagnostics.append(f"dual: {dual.reason}")
    logger.info(f"Switching to the primal solver after {dual.iterations} dual iterations")
    primal = _run(SolverMethod.PRIMAL, rho, model, opts)
    result = _score(rho, model, primal, SolverMethod.PRIMAL, opts.boundary_tol, diagnostics)
    result.iterations += dual.iterations
    if not result.converged:
        logger.warning(
            f"Projection did not converge: residual {result.constraint_residual:.3e}, {'; '.join(result.diagnostics)}"
        )
    return result


def divergence_from_model(
    rho: DensityMatrix, model: HierarchicalModelSpec, opts: ProjectionOptions | None = None
) -> float:
    """d(rho) = H(pi) - H(rho), the divergence of rho from the model closure."""
    result = maxent_project(rho, model, opts)
    if not result.converged:
        logger.warning(f"Divergence computed from an unconverged projection ({result.constraint_residual:.3e})")
    return result.divergence


def pythagorean_residual(
    rho: DensityMatrix,
    sigma: DensityMatrix,
    model: HierarchicalModelSpec,
    opts: ProjectionOptions | None = None,
    pi: DensityMatrix | None = None,
) -> float:
    """|D(rho, sigma) - D(rho, pi) - D(pi, sigma)| for sigma in the model closure; inf if a term is."""
    if pi is None:
        pi = maxent_project(rho, model, opts).pi
    terms = [relative_entropy(rho, sigma), relative_entropy(rho, pi), relative_entropy(pi, sigma)]
    if any(np.isinf(t) for t in terms):
        return float("inf")
    return abs(terms[0] - terms[1] - terms[2])


def product_of_marginals(rho: DensityMatrix) -> DensityMatrix:
    """rho_0 (x) ... (x) rho_(N-1), the projection onto the independence model."""
    factors = [marginal(rho, [i]) for i in range(rho.shape.N)]
    return DensityMatrix.from_hermitian(rho.shape, product_state(factors))
