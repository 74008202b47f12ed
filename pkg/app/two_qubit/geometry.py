import logging

import numpy as np
from pydantic import BaseModel
from scipy.optimize import minimize

from app.algebra import DensityMatrix, relative_entropy
from app.config import settings
from app.constants import PAULIS
from app.errors import ShapeMismatchError

from .bell import TWO_QUBITS, bell_from_t, bell_sign_matrix
from .classical import is_separable, mutual_information_bd

logger = logging.getLogger(__name__)


class GeometryPoint(BaseModel):
    kind: str
    t1: float
    t2: float
    t3: float
    physical: bool
    separable: bool | None = None
    entangled: bool | None = None
    product: bool = False
    mutual_information: float | None = None


def _classify(kind: str, t) -> GeometryPoint:
    t = [float(v) for v in t]
    lam = (1 + bell_sign_matrix() @ np.asarray(t)) / 4
    point = GeometryPoint(kind=kind, t1=t[0], t2=t[1], t3=t[2], physical=bool(lam.min() >= -1e-12))
    if not point.physical:
        return point
    b = bell_from_t(t)
    separable = is_separable(b)
    return point.model_copy(
        update={
            "separable": separable,
            "entangled": not separable,
            "product": not any(abs(v) > 1e-12 for v in t),
            "mutual_information": mutual_information_bd(b),
        }
    )


def fig1_geometry_export(grid: int) -> list[GeometryPoint]:
    """
    Points for plotting the Bell-diagonal tetrahedron: its four vertices, the
    six vertices of the separable octahedron, the maximally mixed center (the
    only product state) and a grid^3 classification over [-1, 1]^3.
    """
    if grid < 1:
        raise ValueError(f"Grid needs at least one point per axis, got {grid}")
    points = [_classify("tetrahedron", row) for row in bell_sign_matrix()]
    for axis in range(3):
        for sign in (1.0, -1.0):
            t = np.zeros(3)
            t[axis] = sign
            points.append(_classify("octahedron", t))
    points.append(_classify("center", np.zeros(3)))

    axis_values = np.linspace(-1.0, 1.0, grid) if grid > 1 else np.array([0.0])
    for t1 in axis_values:
        for t2 in axis_values:
            for t3 in axis_values:
                points.append(_classify("grid", (t1, t2, t3)))
    return points


def _bloch_state(u: np.ndarray) -> np.ndarray:
    r = u / np.sqrt(1 + u @ u)
    return (np.eye(2) + sum(c * sigma for c, sigma in zip(r, PAULIS))) / 2


def product_state_distance(rho: DensityMatrix, seed: int | None = None, starts: int = 4) -> float:
    """
    min over product states sigma_A (x) sigma_B of D(rho, sigma_A (x) sigma_B),
    by local search over the two Bloch vectors.
    """
    if rho.shape != TWO_QUBITS:
        raise ShapeMismatchError(f"Product-state distance needs two qubits, got {rho.shape}")
    seed = settings.seed if seed is None else seed
    rng = np.random.default_rng(seed)

    def objective(x: np.ndarray) -> float:
        sigma = np.kron(_bloch_state(x[:3]), _bloch_state(x[3:]))
        value = relative_entropy(rho, DensityMatrix.from_hermitian(TWO_QUBITS, sigma))
        return min(value, 1e6)

    best = np.inf
    for start in [np.zeros(6)] + [rng.normal(scale=0.5, size=6) for _ in range(starts - 1)]:
        result = minimize(
            objective, start, method="Nelder-Mead", options={"xatol": 1e-9, "fatol": 1e-12, "maxiter": 4000}
        )
        best = min(best, float(result.fun))
    logger.debug(f"Product-state distance {best:.9f} from {starts} starts")
    return best
