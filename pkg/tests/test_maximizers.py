from itertools import pairwise
from math import log, sqrt

import numpy as np
import pytest

from app.algebra import DensityMatrix, SystemShape, UnitKind, random_density_matrix
from app.constants import LOG2
from app.errors import ShapeMismatchError
from app.hierarchy import build_model, hypergraph_k
from app.maxent import GibbsParameters, multi_information
from app.maximizers import (
    SearchOptions,
    bound_is_extension,
    check_exponential_form,
    classical_multi_information_bound,
    local_max_search,
    search_maximizers,
    support_bound,
)
from app.maximizers.search import _classical_restart, _quantum_restart


def test_support_bounds(three_bits, two_qubits):
    assert support_bound(build_model(three_bits, hypergraph_k(3, 2))) == 7.0
    assert support_bound(build_model(two_qubits, hypergraph_k(2, 1))) == pytest.approx(sqrt(7))


def test_mixed_shape_bound_is_flagged():
    shape = SystemShape(sizes=(2, 2), kinds=(UnitKind.CLASSICAL, UnitKind.QUANTUM))
    assert bound_is_extension(shape)
    assert support_bound(build_model(shape, hypergraph_k(2, 1))) == pytest.approx(sqrt(10))
    assert not bound_is_extension(SystemShape.quantum([2, 2]))


def test_classical_multi_information_bound():
    assert classical_multi_information_bound(SystemShape.classical([3, 2, 2])) == pytest.approx(2 * log(2))
    assert classical_multi_information_bound(SystemShape.quantum([2, 2])) is None


def test_exponential_form_of_gibbs_states(rng, three_qubits):
    model = build_model(three_qubits, hypergraph_k(3, 1))
    sigma = GibbsParameters.from_theta(model, rng.normal(size=model.dim_model)).state()
    assert check_exponential_form(sigma, model) <= 1e-8
    assert check_exponential_form(random_density_matrix(three_qubits, rng), model) > 1e-3


def test_exponential_form_on_a_face():
    shape = SystemShape.classical([2, 2])
    rho = DensityMatrix.from_probabilities(shape, [0.5, 0, 0, 0.5])
    assert check_exponential_form(rho, build_model(shape, hypergraph_k(2, 1))) <= 1e-10


def test_exponential_form_rejects_other_shapes(bell_pair, three_bits):
    with pytest.raises(ShapeMismatchError):
        check_exponential_form(bell_pair, build_model(three_bits, hypergraph_k(3, 1)))


@pytest.mark.slow
def test_two_bits_maximizer():
    model = build_model(SystemShape.classical([2, 2]), hypergraph_k(2, 1))
    best = local_max_search(model, SearchOptions(restarts=8), seed=1)
    assert best is not None
    assert best.divergence == pytest.approx(LOG2, abs=1e-6)
    assert best.support_size == 2
    assert best.bound_satisfied


@pytest.mark.slow
def test_two_qubit_maximizer_is_pure(two_qubits):
    best = local_max_search(build_model(two_qubits, hypergraph_k(2, 1)), SearchOptions(restarts=8), seed=1)
    assert best is not None
    assert best.divergence >= 2 * LOG2 - 1e-6
    assert best.rank == 1


@pytest.mark.slow
def test_three_bit_maximizers_respect_support_bound(three_bits):
    search = search_maximizers(build_model(three_bits, hypergraph_k(3, 2)), SearchOptions(restarts=8), seed=2)
    assert search.restarts == 8 and search.seed == 2
    assert search.reports
    assert all(r.support_size <= 7 for r in search.reports)
    assert [r.divergence for r in search.reports] == sorted((r.divergence for r in search.reports), reverse=True)


@pytest.mark.parametrize("threads", [1, 3])
def test_search_is_reproducible(threads):
    model = build_model(SystemShape.classical([2, 2]), hypergraph_k(2, 1))
    first = search_maximizers(model, SearchOptions(restarts=3, threads=1), seed=11)
    second = search_maximizers(model, SearchOptions(restarts=3, threads=threads), seed=11)
    assert first.model_dump(mode="json") == second.model_dump(mode="json")
    assert [r.ascent for r in first.reports] == [r.ascent for r in second.reports]


@pytest.mark.parametrize(
    "shape, restart",
    [(SystemShape.classical([2, 2]), _classical_restart), (SystemShape.quantum([2, 2]), _quantum_restart)],
)
def test_ascent_never_loses_objective(shape, restart):
    model = build_model(shape, hypergraph_k(2, 1))
    state, steps, _, history = restart(model, SearchOptions(), np.random.default_rng(5))
    assert steps >= 1 and len(history) >= 2
    assert all(later >= earlier - 1e-12 for earlier, later in pairwise(history))
    assert history[-1] == pytest.approx(multi_information(state), abs=1e-9)
