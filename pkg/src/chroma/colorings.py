"""Explicit edge and tuple colorings with exact JSON round-trips."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Mapping


def _pair(i: int, j: int) -> tuple[int, int]:
    if i == j:
        raise ValueError(f"an edge needs two distinct endpoints, got {i} twice")
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class EdgeColoring:
    """A map from unordered vertex pairs to colors ``1..k``."""

    k: int
    assignments: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        norm = {}
        for (i, j), c in self.assignments.items():
            e = _pair(i, j)
            if e in norm:
                raise ValueError(f"edge {e} colored twice")
            if not 1 <= c <= self.k:
                raise ValueError(f"color {c} of edge {e} is outside 1..{self.k}")
            norm[e] = int(c)
        object.__setattr__(self, "assignments", dict(sorted(norm.items())))

    def __len__(self) -> int:
        return len(self.assignments)

    def __getitem__(self, edge) -> int:
        return self.assignments[_pair(*edge)]

    @property
    def domain(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.assignments)

    @property
    def colors_used(self) -> set[int]:
        return set(self.assignments.values())

    def to_json(self) -> dict:
        return {"k": self.k, "edges": [[i, j, c] for (i, j), c in self.assignments.items()]}

    @classmethod
    def from_json(cls, data: dict) -> "EdgeColoring":
        return cls(int(data["k"]), {(int(i), int(j)): int(c) for i, j, c in data["edges"]})


@dataclass(frozen=True)
class TupleColoring:
    """A total map from the sorted ``t``-subsets of ``range(n)`` to colors ``1..k``."""

    n: int
    t: int
    k: int
    assignments: Mapping[tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self):
        if self.t < 1:
            raise ValueError("tuple size must be at least 1")
        norm = {}
        for tup, c in self.assignments.items():
            key = tuple(sorted(tup))
            if len(key) != self.t or len(set(key)) != self.t:
                raise ValueError(f"{tup} is not a {self.t}-subset")
            if key[0] < 0 or key[-1] >= self.n:
                raise ValueError(f"{tup} has an index outside [0, {self.n})")
            if not 1 <= c <= self.k:
                raise ValueError(f"color {c} of {key} is outside 1..{self.k}")
            norm[key] = int(c)
        missing = (comb(self.n, self.t) if self.n >= self.t else 0) - len(norm)
        if missing:
            raise ValueError(f"coloring is not total: {missing} of the {self.t}-subsets lack a color")
        object.__setattr__(self, "assignments", dict(sorted(norm.items())))

    @classmethod
    def from_function(cls, n: int, t: int, k: int, rule) -> "TupleColoring":
        return cls(n, t, k, {T: rule(T) for T in combinations(range(n), t)})

    def __len__(self) -> int:
        return len(self.assignments)

    def __getitem__(self, tup: Iterable[int]) -> int:
        return self.assignments[tuple(sorted(tup))]

    @property
    def colors_used(self) -> set[int]:
        return set(self.assignments.values())

    def to_json(self) -> dict:
        return {"n": self.n, "t": self.t, "k": self.k,
                "tuples": [[*T, c] for T, c in self.assignments.items()]}

    @classmethod
    def from_json(cls, data: dict) -> "TupleColoring":
        t = int(data["t"])
        rows = data["tuples"]
        n = int(data["n"]) if "n" in data else (1 + max((max(r[:t]) for r in rows), default=t - 1))
        return cls(n, t, int(data["k"]), {tuple(int(v) for v in r[:t]): int(r[t]) for r in rows})

