"""JSON formats for point sets, hypergraphs, colorings and reports."""

from __future__ import annotations

import json
from pathlib import Path

from .colorings import EdgeColoring, TupleColoring
from .families import Hypergraph
from .geometry import PointSet
from .kinds import coord_to_json


def pointset_to_json(S: PointSet) -> dict:
    return {"dim": S.dim, "points": [[coord_to_json(c) for c in p] for p in S.points]}


def pointset_from_json(data: dict) -> PointSet:
    pts = data["points"]
    return PointSet(tuple(tuple(p) for p in pts), int(data["dim"]))


def dumps(obj: dict) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def write_json(obj: dict, path: str | Path | None) -> str:
    text = dumps(obj)
    if path is not None:
        Path(path).write_text(text)
    return text


def read_json(path: str | Path) -> dict:
    return json.loads(Path(path).read_text())


def coloring_from_json(data: dict) -> EdgeColoring | TupleColoring:
    """Edge colorings carry an ``edges`` list, tuple colorings a ``tuples`` list."""
    if "edges" in data and "t" not in data:
        return EdgeColoring.from_json(data)
    if "tuples" in data:
        return TupleColoring.from_json(data)
    raise ValueError("not a coloring file: expected an 'edges' or 'tuples' list")


def load_pointset(path) -> PointSet:
    return pointset_from_json(read_json(path))


def load_hypergraph(path) -> Hypergraph:
    return Hypergraph.from_json(read_json(path))
