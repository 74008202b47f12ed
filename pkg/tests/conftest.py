import numpy as np
import pytest

from app.algebra import DensityMatrix, SystemShape


@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture
def three_bits():
    return SystemShape.classical([2, 2, 2])


@pytest.fixture
def two_qubits():
    return SystemShape.quantum([2, 2])


@pytest.fixture
def three_qubits():
    return SystemShape.quantum([2, 2, 2])


@pytest.fixture
def ghz(three_qubits):
    psi = np.zeros(8)
    psi[0] = psi[7] = 1.0
    return DensityMatrix.from_vector(three_qubits, psi)


@pytest.fixture
def bell_pair(two_qubits):
    return DensityMatrix.from_vector(two_qubits, [1, 0, 0, 1])
