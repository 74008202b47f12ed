from .files import (
    HypergraphFile,
    ShapeFile,
    StateFile,
    dump_hypergraph,
    dump_state,
    parse_shape,
    read_hypergraph,
    read_shape,
    read_state,
    write_csv,
    write_json,
    write_state,
)

__all__ = [
    "HypergraphFile",
    "ShapeFile",
    "StateFile",
    "dump_hypergraph",
    "dump_state",
    "parse_shape",
    "read_hypergraph",
    "read_shape",
    "read_state",
    "write_csv",
    "write_json",
    "write_state",
]
