from .base import BaseSolver
from .dual import DualSolver
from .ipf import IPFSolver, fit_marginals
from .primal import PrimalSolver

__all__ = ["BaseSolver", "DualSolver", "IPFSolver", "PrimalSolver", "fit_marginals", "get_solver"]


SOLVERS: dict[str, type[BaseSolver]] = {
    DualSolver.name: DualSolver,
    PrimalSolver.name: PrimalSolver,
    IPFSolver.name: IPFSolver,
}


def get_solver(name: str) -> BaseSolver | None:
    solver = SOLVERS.get(name)
    if solver is None:
        return None
    return solver()
