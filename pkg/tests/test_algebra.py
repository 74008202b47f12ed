import numpy as np
import pytest

from app.algebra import (
    DensityMatrix,
    HermitianObservable,
    SystemShape,
    UnitKind,
    adjoint_relation_deviation,
    basis_E,
    gibbs_map,
    gram_deviation,
    hermitize_basis,
    log_state,
    marginal,
    random_density_matrix,
    random_pure_state,
    relative_entropy,
    unit_basis,
    von_neumann_entropy,
)
from app.constants import LOG2
from app.errors import DegeneratePairError, InvalidStateError, InvalidSubsystemError, ShapeMismatchError


def test_shape_rejects_bad_units():
    with pytest.raises(ValueError):
        SystemShape(sizes=(), kinds=())
    with pytest.raises(ValueError):
        SystemShape(sizes=(2, 2), kinds=(UnitKind.QUANTUM,))
    with pytest.raises(ValueError):
        SystemShape.classical([2, 0])


def test_shape_unit_algebra_dims():
    shape = SystemShape(sizes=(2, 3), kinds=(UnitKind.CLASSICAL, UnitKind.QUANTUM))
    assert shape.unit_algebra_dims == (2, 9)
    assert shape.dim == 6
    assert not shape.is_classical and not shape.is_quantum


@pytest.mark.parametrize(
    "matrix",
    [
        [[0.5, 0.1], [0.0, 0.5]],
        [[0.6, 0.0], [0.0, 0.6]],
        [[1.5, 0.0], [0.0, -0.5]],
    ],
    ids=["not-hermitian", "trace", "negative"],
)
def test_density_matrix_validation(matrix):
    with pytest.raises(ValueError):
        DensityMatrix(shape=SystemShape.quantum([2]), matrix=matrix)


def test_classical_unit_rejects_coherences():
    with pytest.raises(ValueError):
        DensityMatrix(shape=SystemShape.classical([2]), matrix=[[0.5, 0.5], [0.5, 0.5]])


def test_marginals(ghz):
    empty = marginal(ghz, [])
    np.testing.assert_allclose(empty.matrix, [[1.0]])
    pair = marginal(ghz, [0, 2])
    np.testing.assert_allclose(pair.matrix, np.diag([0.5, 0, 0, 0.5]), atol=1e-12)
    with pytest.raises(InvalidSubsystemError):
        marginal(ghz, [3])


def test_entropies(ghz, bell_pair):
    assert von_neumann_entropy(ghz) == pytest.approx(0.0, abs=1e-12)
    assert von_neumann_entropy(marginal(ghz, [1])) == pytest.approx(LOG2)
    assert von_neumann_entropy(marginal(bell_pair, [0])) == pytest.approx(LOG2)
    mixed = DensityMatrix.maximally_mixed(SystemShape.quantum([2, 3]))
    assert von_neumann_entropy(mixed) == pytest.approx(np.log(6))


def test_relative_entropy_support_and_shapes(three_bits):
    p = DensityMatrix.from_probabilities(three_bits, [0.5, 0, 0, 0, 0, 0, 0, 0.5])
    q = DensityMatrix.from_probabilities(three_bits, [1, 0, 0, 0, 0, 0, 0, 0])
    assert relative_entropy(p, q) == float("inf")
    assert relative_entropy(q, p) == pytest.approx(LOG2)
    uniform = DensityMatrix.maximally_mixed(three_bits)
    assert relative_entropy(p, uniform) == pytest.approx(2 * LOG2)
    with pytest.raises(ShapeMismatchError):
        relative_entropy(p, DensityMatrix.maximally_mixed(SystemShape.classical([2, 4])))


def test_quantum_relative_entropy_to_maximally_mixed(rng, two_qubits):
    rho = random_density_matrix(two_qubits, rng)
    uniform = DensityMatrix.maximally_mixed(two_qubits)
    assert relative_entropy(rho, uniform) == pytest.approx(np.log(4) - von_neumann_entropy(rho))


@pytest.mark.parametrize("shape", [SystemShape.classical([2, 2]), SystemShape.quantum([2, 2])])
def test_relative_entropy_ignores_mass_below_kernel_tolerance(shape):
    rho = DensityMatrix.from_probabilities(shape, [0.5 - 8e-11, 0.5, 8e-11, 0.0])
    sigma = DensityMatrix.from_probabilities(shape, [0.5, 0.5, 0.0, 0.0])
    assert relative_entropy(rho, sigma) == pytest.approx(0.0, abs=1e-9)


@pytest.mark.parametrize(
    "shape",
    [SystemShape.classical([2, 3, 2]), SystemShape.quantum([2, 2]), SystemShape.quantum([2, 3])],
)
def test_relative_entropy_is_nonnegative(rng, shape):
    for _ in range(20):
        rho = random_density_matrix(shape, rng)
        sigma = random_density_matrix(shape, rng)
        value = relative_entropy(rho, sigma)
        assert value >= 0.0
        assert np.isfinite(value)
    assert relative_entropy(rho, rho) == pytest.approx(0.0, abs=1e-9)


@pytest.mark.parametrize("shape", [SystemShape.classical([2, 3, 2, 2]), SystemShape.quantum([2, 3, 2, 2])])
def test_marginal_of_marginal(rng, shape):
    rho = random_density_matrix(shape, rng)
    outer = marginal(rho, (0, 2, 3))
    # units 0 and 3 sit at positions 0 and 2 of the outer marginal
    nested = marginal(outer, (0, 2))
    direct = marginal(rho, (0, 3))
    assert nested.shape == direct.shape
    np.testing.assert_allclose(nested.matrix, direct.matrix, atol=1e-12)


def _random_observable(shape: SystemShape, rng: np.random.Generator) -> HermitianObservable:
    if shape.is_classical:
        return HermitianObservable(shape=shape, matrix=np.diag(rng.normal(size=shape.dim)))
    X = rng.normal(size=(shape.dim, shape.dim)) + 1j * rng.normal(size=(shape.dim, shape.dim))
    return HermitianObservable(shape=shape, matrix=(X + X.conj().T) / 2)


@pytest.mark.parametrize("shape", [SystemShape.classical([2, 3]), SystemShape.quantum([2, 2])])
def test_gibbs_map_shift_invariance(rng, shape):
    a = _random_observable(shape, rng)
    shifted = HermitianObservable(shape=shape, matrix=a.matrix + 3.7 * np.eye(shape.dim))
    np.testing.assert_allclose(gibbs_map(shifted).matrix, gibbs_map(a).matrix, atol=1e-12)


@pytest.mark.parametrize("shape", [SystemShape.classical([2, 3]), SystemShape.quantum([2, 2])])
def test_log_of_gibbs_state_differs_by_a_constant(rng, shape):
    a = _random_observable(shape, rng)
    difference = log_state(gibbs_map(a)) - a.matrix
    np.testing.assert_allclose(difference, difference[0, 0] * np.eye(shape.dim), atol=1e-9)


def test_gibbs_map():
    shape = SystemShape.quantum([2])
    sigma = gibbs_map(HermitianObservable(shape=shape, matrix=np.diag([np.log(3), 0.0])))
    np.testing.assert_allclose(sigma.matrix, np.diag([0.75, 0.25]), atol=1e-12)

    classical = gibbs_map(HermitianObservable(shape=SystemShape.classical([2]), matrix=np.diag([1000.0, 0.0])))
    assert classical.probabilities[0] == pytest.approx(1.0)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_basis_e_is_orthonormal_and_adjoint_closed(n):
    E = basis_E(n)
    assert len(E) == n * n
    np.testing.assert_allclose(E[0], np.eye(n) / np.sqrt(n))
    assert gram_deviation(np.array(E)) <= 1e-12
    assert adjoint_relation_deviation(n) <= 1e-12


def test_basis_e_displayed_element():
    E = basis_E(3)[1]
    np.testing.assert_allclose(E + E.conj().T, (np.ones((3, 3)) - np.eye(3)) / np.sqrt(3), atol=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("kind", list(UnitKind))
def test_unit_basis_is_self_adjoint_and_orthonormal(n, kind):
    stack = unit_basis(n, kind)
    assert len(stack) == (n if kind == UnitKind.CLASSICAL else n * n)
    np.testing.assert_allclose(stack, np.conj(np.transpose(stack, (0, 2, 1))), atol=1e-12)
    assert gram_deviation(stack) <= 1e-12
    np.testing.assert_allclose(stack[0], np.eye(n) / np.sqrt(n), atol=1e-12)


def test_hermitize_rejects_unpaired_element():
    with pytest.raises(DegeneratePairError):
        hermitize_basis([basis_E(3)[1]])


def test_random_states(rng, three_qubits):
    pure = random_pure_state(three_qubits, rng)
    assert np.linalg.matrix_rank(pure.matrix, tol=1e-10) == 1
    rank_two = random_density_matrix(three_qubits, rng, rank=2)
    assert np.linalg.matrix_rank(rank_two.matrix, tol=1e-10) == 2
    with pytest.raises(ValueError):
        random_density_matrix(three_qubits, rng, rank=9)


def test_degenerate_constructors(two_qubits, three_bits):
    with pytest.raises(InvalidStateError):
        DensityMatrix.from_vector(two_qubits, np.zeros(4))
    with pytest.raises(InvalidStateError):
        DensityMatrix.from_hermitian(two_qubits, -np.eye(4))
    with pytest.raises(InvalidStateError):
        DensityMatrix.from_probabilities(three_bits, [-0.5, 1.5, 0, 0, 0, 0, 0, 0])
