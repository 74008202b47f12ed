import numpy as np
import pytest

from app.algebra import DensityMatrix, SystemShape, random_density_matrix, random_distribution, random_pure_state
from app.constants import LOG2
from app.errors import InvalidSubsystemError, QuantumUnitError, ShapeMismatchError
from app.hierarchy import build_model, hypergraph_k
from app.maxent import (
    GibbsParameters,
    ProjectionOptions,
    SolverMethod,
    correlation_ck,
    decompose,
    divergence_from_model,
    irreducible_ck,
    irreducible_correlation,
    maxent_project,
    multi_information,
    product_of_marginals,
    project_k,
    pythagorean_residual,
)
from app.maxent.solvers import IPFSolver, get_solver
from app.maxent.solvers.base import exp_divided_differences

DUAL = ProjectionOptions(method=SolverMethod.DUAL)


@pytest.mark.parametrize(
    "shape",
    [SystemShape.quantum([2, 2]), SystemShape.quantum([2, 2, 2]), SystemShape.classical([2, 3])],
)
def test_independence_projection_is_multi_information(rng, shape):
    rho = random_density_matrix(shape, rng)
    result = project_k(rho, 1, DUAL)
    assert result.converged
    assert result.divergence == pytest.approx(multi_information(rho), abs=1e-7)
    np.testing.assert_allclose(result.pi.matrix, product_of_marginals(rho).matrix, atol=1e-7)


def test_bell_pair_correlations(bell_pair):
    assert multi_information(bell_pair) == pytest.approx(2 * LOG2)
    assert correlation_ck(bell_pair, 2) == 0.0
    assert correlation_ck(bell_pair, 1) == pytest.approx(2 * LOG2, abs=1e-6)


def test_ghz_multi_information(ghz):
    assert multi_information(ghz) == pytest.approx(3 * LOG2)


def test_perfectly_correlated_bits():
    shape = SystemShape.classical([2, 2])
    rho = DensityMatrix.from_probabilities(shape, [0.5, 0, 0, 0.5])
    model = build_model(shape, hypergraph_k(2, 1))
    result = maxent_project(rho, model)
    np.testing.assert_allclose(result.pi.probabilities, np.full(4, 0.25), atol=1e-9)
    assert result.divergence == pytest.approx(LOG2)
    assert result.constraint_residual <= 1e-8
    assert pythagorean_residual(rho, DensityMatrix.maximally_mixed(shape), model) <= 1e-8


def test_gibbs_state_projects_onto_itself(rng, three_qubits):
    model = build_model(three_qubits, hypergraph_k(3, 2))
    sigma = GibbsParameters.from_theta(model, rng.normal(scale=0.5, size=model.dim_model)).state()
    result = maxent_project(sigma, model)
    assert result.method == SolverMethod.DUAL
    assert result.divergence == pytest.approx(0.0, abs=1e-8)
    np.testing.assert_allclose(result.pi.matrix, sigma.matrix, atol=1e-7)
    assert result.theta is not None


@pytest.mark.parametrize("k", [1, 2])
def test_pythagorean_identity(rng, three_bits, k):
    model = build_model(three_bits, hypergraph_k(3, k))
    for _ in range(5):
        rho = random_distribution(three_bits, rng)
        sigma = GibbsParameters.from_theta(model, rng.normal(scale=0.5, size=model.dim_model)).state()
        assert pythagorean_residual(rho, sigma, model) <= 1e-6


def test_solvers_agree_on_distributions(rng, three_bits):
    model = build_model(three_bits, hypergraph_k(3, 2))
    rho = random_distribution(three_bits, rng)
    results = [
        maxent_project(rho, model, ProjectionOptions(method=method))
        for method in (SolverMethod.DUAL, SolverMethod.IPF, SolverMethod.PRIMAL)
    ]
    for result in results[1:]:
        assert result.divergence == pytest.approx(results[0].divergence, abs=1e-6)
        np.testing.assert_allclose(result.pi.probabilities, results[0].pi.probabilities, atol=1e-6)


def test_get_solver():
    assert get_solver("dual").name == "dual"
    assert get_solver("newton") is None


def test_ipf_needs_classical_units(bell_pair):
    model = build_model(bell_pair.shape, hypergraph_k(2, 1))
    with pytest.raises(QuantumUnitError):
        IPFSolver().solve(bell_pair, model, ProjectionOptions())


def test_projection_rejects_other_shapes(bell_pair, three_bits):
    with pytest.raises(ShapeMismatchError):
        maxent_project(bell_pair, build_model(three_bits, hypergraph_k(3, 1)))


def test_k_range(ghz):
    with pytest.raises(InvalidSubsystemError):
        correlation_ck(ghz, 0)
    with pytest.raises(InvalidSubsystemError):
        project_k(ghz, 4)
    with pytest.raises(InvalidSubsystemError):
        irreducible_correlation(ghz, 1)
    with pytest.raises(InvalidSubsystemError):
        multi_information(DensityMatrix.maximally_mixed(SystemShape.quantum([2])))


def test_exp_divided_differences():
    values = np.array([0.0, 1.0, 1.0 + 1e-14])
    table = exp_divided_differences(values)
    np.testing.assert_allclose(np.diag(table), np.exp(values))
    assert table[0, 1] == pytest.approx(np.e - 1)
    assert table[1, 2] == pytest.approx(np.e)
    np.testing.assert_allclose(table, table.T)


@pytest.mark.parametrize(
    "shape",
    [SystemShape.classical([2, 2, 2]), SystemShape.classical([2, 3, 2]), SystemShape.quantum([2, 2, 2])],
)
def test_correlations_decrease_with_k(rng, shape):
    for _ in range(3):
        table = decompose(random_density_matrix(shape, rng))
        c = table.c
        assert len(c) == shape.N
        assert all(earlier >= later - 1e-8 for earlier, later in zip(c, c[1:]))
        assert all(item.agree for item in table.irreducible)
        assert table.sum_residual <= 1e-6


@pytest.mark.parametrize("gap", [50.0, 800.0, 1500.0])
def test_exp_divided_differences_wide_gap(gap):
    table = exp_divided_differences(np.array([0.0, -gap]))
    assert np.all(np.isfinite(table))
    np.testing.assert_allclose(table, table.T)
    assert table[0, 1] == pytest.approx(-np.expm1(-gap) / gap)


@pytest.mark.slow
def test_ghz_decomposition(ghz):
    c_2 = project_k(ghz, 2, ProjectionOptions(method=SolverMethod.PRIMAL)).divergence
    assert c_2 == pytest.approx(LOG2, abs=1e-3)

    table = decompose(ghz)
    assert table.c[0] == pytest.approx(3 * LOG2, abs=1e-6)
    assert table.c[-1] == 0.0
    C_2, C_3 = table.C
    assert C_2 == pytest.approx(2 * LOG2, abs=1e-3)
    assert C_3 == pytest.approx(LOG2, abs=1e-3)
    assert table.sum_residual <= 1e-3


@pytest.mark.slow
def test_random_pure_states_have_no_three_party_correlation(rng, three_qubits):
    for _ in range(3):
        assert correlation_ck(random_pure_state(three_qubits, rng), 2) <= 1e-2


def test_irreducible_correlation_of_a_pair(bell_pair):
    item = irreducible_correlation(bell_pair, 2)
    assert item.agree
    assert item.difference == pytest.approx(2 * LOG2, abs=1e-6)
    assert irreducible_ck(bell_pair, 2) == pytest.approx(2 * LOG2, abs=1e-6)


def test_divergence_from_model(rng, three_bits):
    rho = random_distribution(three_bits, rng)
    model = build_model(three_bits, hypergraph_k(3, 1))
    assert divergence_from_model(rho, model) == pytest.approx(multi_information(rho), abs=1e-7)


def test_decomposition_matches_single_irreducible_correlations(rng, three_bits):
    rho = random_distribution(three_bits, rng)
    table = decompose(rho)
    for item in table.irreducible:
        single = irreducible_correlation(rho, item.k)
        assert single.difference == pytest.approx(item.difference, abs=1e-9)
        assert single.divergence == pytest.approx(item.divergence, abs=1e-9)
