"""
JSON codecs for states, hypergraphs and shapes, and CSV writers for exports.
Units are numbered from 0 in every file.
"""

import csv
import json
import logging
from pathlib import Path

import numpy as np
from pydantic import BaseModel, ValidationError, model_validator

from app.algebra import DensityMatrix, SystemShape, UnitKind
from app.errors import InputFileError
from app.hierarchy import Hypergraph, validate_hypergraph

logger = logging.getLogger(__name__)


class ShapeFile(BaseModel):
    sizes: list[int]
    kinds: list[UnitKind] | None = None

    def to_shape(self, default: UnitKind = UnitKind.CLASSICAL) -> SystemShape:
        kinds = self.kinds or [default] * len(self.sizes)
        return SystemShape(sizes=tuple(self.sizes), kinds=tuple(kinds))


class StateFile(BaseModel):
    shape: ShapeFile
    matrix: list[list[tuple[float, float]]] | None = None
    probabilities: list[float] | None = None

    @model_validator(mode="after")
    def _one_payload(self) -> "StateFile":
        if (self.matrix is None) == (self.probabilities is None):
            raise ValueError('Give exactly one of "matrix" and "probabilities"')
        return self


class HypergraphFile(BaseModel):
    N: int
    generators: list[list[int]] | None = None
    sets: list[list[int]] | None = None

    @model_validator(mode="after")
    def _one_family(self) -> "HypergraphFile":
        if (self.generators is None) == (self.sets is None):
            raise ValueError('Give exactly one of "generators" and "sets"')
        return self


def _load_json(path: str | Path):
    path = str(path)
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as exc:
        raise InputFileError(path, f"cannot read file: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFileError(path, exc.msg, exc.lineno, exc.colno) from exc


def _parse(model: type[BaseModel], data, path: str | Path):
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        error = exc.errors()[0]
        where = ".".join(str(part) for part in error["loc"]) or "document"
        raise InputFileError(str(path), f"{where}: {error['msg']}") from exc


def _build(path: str | Path, build):
    try:
        return build()
    except InputFileError:
        raise
    except ValueError as exc:
        raise InputFileError(str(path), str(exc)) from exc


def read_shape(path: str | Path) -> SystemShape:
    data = _load_json(path)
    if isinstance(data, dict) and "shape" in data:
        data = data["shape"]
    parsed = _parse(ShapeFile, data, path)
    return _build(path, parsed.to_shape)


def parse_shape(text: str, kind: UnitKind = UnitKind.CLASSICAL) -> SystemShape:
    """'2,2,2' with one kind for all units, or 'q2,c3' with a kind prefix per unit."""
    sizes, kinds = [], []
    for item in text.split(","):
        item = item.strip().lower()
        unit_kind = kind
        if item[:1] in ("c", "q"):
            unit_kind = UnitKind.CLASSICAL if item[0] == "c" else UnitKind.QUANTUM
            item = item[1:]
        if not item.isdigit():
            raise ValueError(f"Cannot read unit size from '{text}'")
        sizes.append(int(item))
        kinds.append(unit_kind)
    return SystemShape(sizes=tuple(sizes), kinds=tuple(kinds))


def read_state(path: str | Path) -> DensityMatrix:
    parsed = _parse(StateFile, _load_json(path), path)

    def build() -> DensityMatrix:
        shape = parsed.shape.to_shape()
        if parsed.probabilities is not None:
            return DensityMatrix.from_probabilities(shape, parsed.probabilities)
        matrix = np.array([[complex(re, im) for re, im in row] for row in parsed.matrix])
        return DensityMatrix(shape=shape, matrix=matrix)

    return _build(path, build)


def read_hypergraph(path: str | Path) -> Hypergraph:
    parsed = _parse(HypergraphFile, _load_json(path), path)
    if parsed.generators is not None:
        return _build(path, lambda: validate_hypergraph(parsed.N, parsed.generators, generators=True))
    return _build(path, lambda: validate_hypergraph(parsed.N, parsed.sets))


def dump_state(rho: DensityMatrix) -> dict:
    """State file document for rho."""
    return {
        "shape": {"sizes": list(rho.shape.sizes), "kinds": [k.value for k in rho.shape.kinds]},
        "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in rho.matrix],
    }


def write_state(path: str | Path, rho: DensityMatrix):
    write_json(path, dump_state(rho))


def dump_hypergraph(U: Hypergraph) -> dict:
    return {"N": U.N, "sets": U.as_lists()}


def write_json(path: str | Path, data):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2)
        f.write("\n")
    logger.debug(f"Wrote {path}")


def write_csv(path: str | Path, header: list[str], rows) -> int:
    count = 0
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)
            count += 1
    logger.debug(f"Wrote {count} rows to {path}")
    return count
