from .hypergraph import Hypergraph, enumerate_hypergraphs, hypergraph_k, validate_hypergraph
from .model import BlockwiseRank, HierarchicalModelSpec, blockwise_rank, build_model, model_dim, pure_factor_dim

__all__ = [
    "BlockwiseRank",
    "Hypergraph",
    "HierarchicalModelSpec",
    "blockwise_rank",
    "build_model",
    "enumerate_hypergraphs",
    "hypergraph_k",
    "model_dim",
    "pure_factor_dim",
    "validate_hypergraph",
]
