import numpy as np
import pytest
from scipy.stats import unitary_group

from app.constants import LOG2
from app.errors import NonPhysicalError, ShapeMismatchError
from app.maxent import multi_information
from app.two_qubit import (
    bell_basis_consistency,
    bell_from_lambda,
    bell_from_t,
    bell_sign_matrix,
    fig1_geometry_export,
    is_classically_correlated_bd,
    is_separable,
    mutual_information_bd,
    product_state_distance,
    product_witness,
    separable_extreme_points,
    verify_theorem1,
)


def test_sign_matrix():
    np.testing.assert_array_equal(
        bell_sign_matrix(),
        [[1, -1, 1], [-1, 1, 1], [1, 1, -1], [-1, -1, -1]],
    )
    assert bell_basis_consistency() <= 1e-12


def test_bell_from_t():
    b = bell_from_t([0.5, 0, 0])
    np.testing.assert_allclose(b.lam, [0.375, 0.125, 0.375, 0.125])
    assert is_separable(b)
    np.testing.assert_allclose(bell_from_lambda(b.lam).t, b.t, atol=1e-12)


@pytest.mark.parametrize("t", [[1, 1, 1], [0.9, 0.9, 0.9]])
def test_non_physical_t(t):
    with pytest.raises(NonPhysicalError):
        bell_from_t(t)


def test_non_physical_lambda():
    with pytest.raises(NonPhysicalError):
        bell_from_lambda([0.5, 0.5, 0.5, -0.5])
    with pytest.raises(NonPhysicalError):
        bell_from_lambda([0.5, 0.5, 0.5, 0.0])


def test_singlet():
    singlet = bell_from_t([-1, -1, -1])
    np.testing.assert_allclose(singlet.lam, [0, 0, 0, 1], atol=1e-12)
    assert not is_separable(singlet)
    assert mutual_information_bd(singlet) == pytest.approx(2 * LOG2)


def test_closed_form_matches_multi_information():
    b = bell_from_t([0.2, -0.3, 0.1])
    assert mutual_information_bd(b) == pytest.approx(multi_information(b.state()), abs=1e-12)


def test_separable_extreme_points():
    points = separable_extreme_points()
    assert len(points) == 6
    for b in points:
        assert is_separable(b)
        assert mutual_information_bd(b) == pytest.approx(LOG2)
        assert sorted(abs(v) for v in b.t) == pytest.approx([0, 0, 1])
        assert is_classically_correlated_bd(b).classical


def test_classical_correlation_needs_one_axis():
    assert is_classically_correlated_bd(bell_from_t([0.5, 0, 0])).classical
    assert not is_classically_correlated_bd(bell_from_t([0.3, 0.3, 0])).classical


def _diagonalizes(matrix: np.ndarray, witness) -> bool:
    frame = np.kron(*witness)
    rotated = frame.conj().T @ matrix @ frame
    return np.max(np.abs(rotated - np.diag(np.diag(rotated)))) <= 1e-9


@pytest.mark.parametrize(
    "probabilities",
    [[0.4, 0.3, 0.2, 0.1], [0.5, 0.0, 0.0, 0.5], [0.25, 0.25, 0.25, 0.25], [0.3, 0.3, 0.3, 0.1]],
    ids=["distinct", "paired", "uniform", "triple"],
)
def test_product_witness_finds_rotated_local_frames(probabilities):
    unitaries = [unitary_group.rvs(2, random_state=seed) for seed in (1, 2)]
    frame = np.kron(*unitaries)
    matrix = frame @ np.diag(probabilities) @ frame.conj().T
    witness = product_witness(matrix)
    assert witness is not None
    assert _diagonalizes(matrix, witness)


def test_product_witness_rejects_entangled_eigenvectors():
    assert product_witness(bell_from_t([0.3, 0.3, 0]).matrix()) is None
    assert product_witness(bell_from_lambda([0.7, 0.1, 0.1, 0.1]).matrix()) is None


def test_classical_vertex_witness():
    b = bell_from_t([0, 0, 1])
    result = is_classically_correlated_bd(b)
    assert result.classical and result.witness is not None
    assert _diagonalizes(b.matrix(), product_witness(b.matrix()))


def test_theorem1():
    report = verify_theorem1(500, seed=3)
    assert report.holds
    assert report.violations == 0
    assert report.max_sampled_information <= LOG2 + 1e-9
    assert report.formula_deviation <= 1e-10
    assert len(report.vertices) == 6
    assert all(v.product_form_deviation <= 1e-12 for v in report.vertices)
    with pytest.raises(ValueError):
        verify_theorem1(0)


def test_theorem1_is_deterministic():
    assert verify_theorem1(100, seed=5) == verify_theorem1(100, seed=5)


def test_fig1_geometry():
    points = fig1_geometry_export(3)
    assert len(points) == 4 + 6 + 1 + 27
    kinds = [p.kind for p in points]
    assert kinds.count("tetrahedron") == 4 and kinds.count("octahedron") == 6
    assert all(p.physical and p.entangled for p in points if p.kind == "tetrahedron")
    assert all(p.separable for p in points if p.kind == "octahedron")
    assert [p.kind for p in points if p.product] == ["center", "grid"]
    corner = next(p for p in points if p.kind == "grid" and (p.t1, p.t2, p.t3) == (1.0, 1.0, 1.0))
    assert not corner.physical and corner.separable is None
    with pytest.raises(ValueError):
        fig1_geometry_export(0)


def test_product_state_distance_is_mutual_information():
    rho = bell_from_t([0.5, 0, 0]).state()
    assert product_state_distance(rho, seed=1) == pytest.approx(multi_information(rho), abs=1e-5)


def test_product_state_distance_needs_two_qubits(ghz):
    with pytest.raises(ShapeMismatchError):
        product_state_distance(ghz)
