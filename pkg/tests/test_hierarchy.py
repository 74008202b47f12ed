import numpy as np
import pytest

from app.algebra import SystemShape
from app.errors import HypergraphError, ShapeMismatchError
from app.hierarchy import (
    blockwise_rank,
    build_model,
    enumerate_hypergraphs,
    hypergraph_k,
    model_dim,
    validate_hypergraph,
)


@pytest.mark.parametrize(
    "N, sets",
    [
        (2, [[], [0], [0, 1]]),
        (3, [[], [0], [1]]),
        (2, [[], [0], [2]]),
        (0, [[]]),
    ],
    ids=["missing-subset", "uncovered", "out-of-range", "no-units"],
)
def test_validate_hypergraph_errors(N, sets):
    with pytest.raises(HypergraphError):
        validate_hypergraph(N, sets)


def test_generators_take_downward_closure():
    U = validate_hypergraph(3, [[0, 1], [2]], generators=True)
    assert len(U) == 5
    assert [0, 1] in U.as_lists() and [] in U.as_lists()
    assert sorted(map(sorted, U.maximal_sets)) == [[0, 1], [2]]


def test_hypergraph_k():
    assert len(hypergraph_k(3, 2)) == 7
    assert len(hypergraph_k(4, 4)) == 16
    assert hypergraph_k(3, 1).is_subhypergraph_of(hypergraph_k(3, 2))
    with pytest.raises(HypergraphError):
        hypergraph_k(3, 4)


@pytest.mark.parametrize("N, count", [(1, 1), (2, 2), (3, 9), (4, 114)])
def test_enumerate_hypergraphs(N, count):
    found = enumerate_hypergraphs(N)
    assert len(found) == count
    assert len({U.sets for U in found}) == count


@pytest.mark.parametrize(
    "shape, k, expected",
    [
        (SystemShape.classical([2, 2, 2]), 1, 3),
        (SystemShape.classical([2, 2, 2]), 2, 6),
        (SystemShape.quantum([2, 2, 2]), 1, 9),
        (SystemShape.quantum([2, 2, 2]), 2, 36),
        (SystemShape.quantum([3, 3]), 2, 80),
        (SystemShape.classical([3, 2]), 1, 3),
    ],
)
def test_model_dim(shape, k, expected):
    dim_total, dim_model = model_dim(shape, hypergraph_k(shape.N, k))
    assert dim_model == expected
    assert dim_total == expected + 1


def test_model_dim_rejects_other_sizes():
    with pytest.raises(ShapeMismatchError):
        model_dim(SystemShape.classical([2, 2]), hypergraph_k(3, 1))


def test_model_basis(three_qubits):
    model = build_model(three_qubits, hypergraph_k(3, 2))
    assert len(model.basis) == model.dim_total
    np.testing.assert_allclose(model.basis[0], np.eye(8) / np.sqrt(8), atol=1e-12)
    flat = model.basis.reshape(len(model.basis), -1)
    np.testing.assert_allclose(flat.conj() @ flat.T, np.eye(len(flat)), atol=1e-10)
    assert len(model.complement_basis) == 64 - model.dim_total


def test_models_are_nested(three_bits):
    small = build_model(three_bits, hypergraph_k(3, 1))
    large = build_model(three_bits, hypergraph_k(3, 2))
    assert small.subspace_residual(large) <= 1e-12
    assert large.subspace_residual(small) > 0.5


@pytest.mark.parametrize(
    "shape",
    [SystemShape.classical([2, 3, 2]), SystemShape.quantum([2, 2, 2]), SystemShape.quantum([3, 2])],
)
def test_blockwise_rank_matches_assembled_basis(shape):
    for U in enumerate_hypergraphs(shape.N):
        basis = build_model(shape, U).basis
        blocks = blockwise_rank(shape, U)
        assert blocks.rank == int(np.linalg.matrix_rank(basis.reshape(len(basis), -1)))
        assert blocks.rank == model_dim(shape, U)[0]
        assert blocks.blocks == len(U)
        assert blocks.max_overlap <= 1e-12


def test_blockwise_rank_on_four_qutrits():
    shape = SystemShape.quantum([3, 3, 3, 3])
    for U in enumerate_hypergraphs(4):
        blocks = blockwise_rank(shape, U)
        assert blocks.rank == model_dim(shape, U)[0]
        assert blocks.max_overlap <= 1e-12
    assert blockwise_rank(shape, hypergraph_k(4, 4)).rank == 81 * 81


def test_blockwise_rank_rejects_other_sizes():
    with pytest.raises(ShapeMismatchError):
        blockwise_rank(SystemShape.quantum([2, 2]), hypergraph_k(3, 1))
