from enum import Enum
from functools import cached_property
from math import prod

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    field_serializer,
    field_validator,
    model_validator,
)

from app.constants import HERMITIAN_TOL, PSD_TOL, TRACE_TOL
from app.errors import InvalidStateError, InvalidSubsystemError


class UnitKind(str, Enum):
    CLASSICAL = "classical"
    QUANTUM = "quantum"


class SystemShape(BaseModel):
    """
    Number of units, their sizes and whether each unit is a diagonal
    (classical) or a full matrix (quantum) algebra.
    """

    model_config = ConfigDict(frozen=True)

    sizes: tuple[int, ...]
    kinds: tuple[UnitKind, ...]

    @model_validator(mode="after")
    def _check_units(self) -> "SystemShape":
        if len(self.sizes) < 1:
            raise ValueError("A system needs at least one unit")
        if len(self.sizes) != len(self.kinds):
            raise ValueError(
                f"Got {len(self.sizes)} unit sizes but {len(self.kinds)} unit kinds"
            )
        if any(n < 1 for n in self.sizes):
            raise ValueError(f"Unit sizes must be positive, got {list(self.sizes)}")
        return self

    @classmethod
    def classical(cls, sizes: list[int] | tuple[int, ...]) -> "SystemShape":
        return cls(sizes=tuple(sizes), kinds=(UnitKind.CLASSICAL,) * len(sizes))

    @classmethod
    def quantum(cls, sizes: list[int] | tuple[int, ...]) -> "SystemShape":
        return cls(sizes=tuple(sizes), kinds=(UnitKind.QUANTUM,) * len(sizes))

    @property
    def N(self) -> int:
        return len(self.sizes)

    @property
    def dim(self) -> int:
        return prod(self.sizes)

    @property
    def unit_algebra_dims(self) -> tuple[int, ...]:
        """Complex dimension of each unit algebra: n for diagonal, n^2 for full."""
        return tuple(
            n if kind == UnitKind.CLASSICAL else n * n
            for n, kind in zip(self.sizes, self.kinds)
        )

    @property
    def is_classical(self) -> bool:
        return all(kind == UnitKind.CLASSICAL for kind in self.kinds)

    @property
    def is_quantum(self) -> bool:
        return all(kind == UnitKind.QUANTUM for kind in self.kinds)

    def check_units(self, nu) -> tuple[int, ...]:
        """Return the sorted unit indices of nu, rejecting anything outside [0, N)."""
        units = tuple(sorted(set(int(i) for i in nu)))
        bad = [i for i in units if i < 0 or i >= self.N]
        if bad:
            raise InvalidSubsystemError(
                f"Units {bad} are out of range for a system of {self.N} units"
            )
        return units

    def subshape(self, nu) -> "SystemShape":
        units = self.check_units(nu)
        if not units:
            return SystemShape.classical([1])
        return SystemShape(
            sizes=tuple(self.sizes[i] for i in units),
            kinds=tuple(self.kinds[i] for i in units),
        )


def _as_complex_matrix(value) -> np.ndarray:
    matrix = np.array(value, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"Expected a square matrix, got array of shape {matrix.shape}")
    return matrix


def _serialize_matrix(matrix: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in matrix]


class HermitianObservable(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    shape: SystemShape
    matrix: np.ndarray

    @field_validator("matrix", mode="before")
    @classmethod
    def _to_array(cls, value) -> np.ndarray:
        return _as_complex_matrix(value)

    @model_validator(mode="after")
    def _check_hermitian(self) -> "HermitianObservable":
        if self.matrix.shape[0] != self.shape.dim:
            raise ValueError(
                f"Matrix of size {self.matrix.shape[0]} does not fit dimension {self.shape.dim}"
            )
        if np.max(np.abs(self.matrix - self.matrix.conj().T), initial=0.0) > HERMITIAN_TOL:
            raise ValueError("Observable is not Hermitian")
        self.matrix.setflags(write=False)
        return self

    @field_serializer("matrix")
    def _dump_matrix(self, matrix: np.ndarray) -> list:
        return _serialize_matrix(matrix)


class DensityMatrix(BaseModel):
    """
    Hermitian positive semidefinite unit-trace matrix over the tensor algebra
    of a SystemShape. Coherences between different symbols of a classical
    unit must vanish.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    shape: SystemShape
    matrix: np.ndarray

    @field_validator("matrix", mode="before")
    @classmethod
    def _to_array(cls, value) -> np.ndarray:
        return _as_complex_matrix(value)

    @model_validator(mode="after")
    def _check_state(self) -> "DensityMatrix":
        from .linalg import dephase

        matrix = self.matrix
        if matrix.shape[0] != self.shape.dim:
            raise ValueError(
                f"Matrix of size {matrix.shape[0]} does not fit dimension {self.shape.dim}"
            )
        if np.max(np.abs(matrix - matrix.conj().T), initial=0.0) > HERMITIAN_TOL:
            raise ValueError("Density matrix is not Hermitian")
        if abs(np.trace(matrix) - 1.0) > TRACE_TOL:
            raise ValueError(f"Density matrix has trace {np.trace(matrix).real}, expected 1")
        if not self.shape.is_quantum:
            if np.max(np.abs(matrix - dephase(matrix, self.shape)), initial=0.0) > HERMITIAN_TOL:
                raise ValueError("Density matrix has coherences on a classical unit")
        if np.linalg.eigvalsh(matrix).min() < -PSD_TOL:
            raise ValueError("Density matrix is not positive semidefinite")
        matrix.setflags(write=False)
        return self

    @field_serializer("matrix")
    def _dump_matrix(self, matrix: np.ndarray) -> list:
        return _serialize_matrix(matrix)

    @classmethod
    def from_probabilities(cls, shape: SystemShape, probabilities) -> "DensityMatrix":
        p = np.asarray(probabilities, dtype=float)
        if np.any(p < -PSD_TOL):
            raise InvalidStateError("Probabilities must be nonnegative")
        return cls(shape=shape, matrix=np.diag(p))

    @classmethod
    def from_vector(cls, shape: SystemShape, vector) -> "DensityMatrix":
        psi = np.asarray(vector, dtype=complex)
        norm = np.linalg.norm(psi)
        if norm == 0:
            raise InvalidStateError("Cannot build a state from the zero vector")
        psi = psi / norm
        return cls(shape=shape, matrix=np.outer(psi, psi.conj()))

    @classmethod
    def maximally_mixed(cls, shape: SystemShape) -> "DensityMatrix":
        return cls(shape=shape, matrix=np.eye(shape.dim) / shape.dim)

    @classmethod
    def from_hermitian(cls, shape: SystemShape, matrix: np.ndarray) -> "DensityMatrix":
        """Build a state from a numerically computed matrix: symmetrize, clip, renormalize."""
        matrix = (matrix + matrix.conj().T) / 2
        values, vectors = np.linalg.eigh(matrix)
        values = np.clip(values, 0.0, None)
        if values.sum() <= 0:
            raise InvalidStateError("Matrix has no positive part to normalize")
        values = values / values.sum()
        matrix = (vectors * values) @ vectors.conj().T
        return cls(shape=shape, matrix=(matrix + matrix.conj().T) / 2)

    @property
    def dim(self) -> int:
        return self.shape.dim

    @cached_property
    def probabilities(self) -> np.ndarray:
        """Diagonal of the matrix; the whole state when every unit is classical."""
        return np.clip(np.diag(self.matrix).real, 0.0, None)
