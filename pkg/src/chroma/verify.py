"""Brute-force oracles: guarantee checks, impossibility search and counterexample discovery."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from typing import Iterable, Sequence

import networkx as nx
import numpy as np

from .colorings import EdgeColoring, TupleColoring
from .errors import BudgetExceededError, DomainMismatchError
from .families import Hypergraph, canonical_hyperedges, delaunay_edges, mask_of, members
from .geometry import PointSet, check_general_position
from .kinds import BOTTOMLESS, FamilyKind

DEFAULT_IMPOSSIBILITY_BUDGET = 1 << 24
DEFAULT_SEARCH_BUDGET = 10 ** 6
_CHUNK = 8192


def budget_from_env(default: int) -> int:
    raw = os.environ.get("CHROMA_BUDGET")
    return int(raw) if raw else default


@dataclass
class VerificationReport:
    passed: bool
    checked_regions: int
    threshold_kind: str
    threshold: int
    mode: str
    witness: dict | None = None

    def to_json(self) -> dict:
        return {"passed": self.passed, "checkedRegions": self.checked_regions,
                "thresholdKind": self.threshold_kind, "threshold": self.threshold,
                "mode": self.mode, "witness": self.witness}

    @classmethod
    def from_json(cls, data: dict) -> "VerificationReport":
        return cls(data["passed"], data["checkedRegions"], data["thresholdKind"],
                   data["threshold"], data["mode"], data.get("witness"))


def membership(H: Hypergraph, masks: Sequence[int] | None = None) -> np.ndarray:
    """Boolean matrix with one row per hyperedge and one column per vertex."""
    masks = sorted(H.masks) if masks is None else masks
    width = max(1, (H.n + 7) // 8)
    raw = b"".join(m.to_bytes(width, "little") for m in masks)
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8).reshape(len(masks), width),
                         axis=1, bitorder="little")
    return bits[:, :H.n].astype(bool)


def _presence(M: np.ndarray, tuples: np.ndarray, Mf: np.ndarray | None = None) -> np.ndarray:
    """Row ``r`` is True iff some tuple lies inside hyperedge ``r``."""
    out = np.zeros(len(M), dtype=bool)
    if len(tuples) == 0:
        return out
    if tuples.shape[1] == 2:
        A = np.zeros((M.shape[1], M.shape[1]), dtype=np.float32)
        A[tuples[:, 0], tuples[:, 1]] = 1
        Mf = M.astype(np.float32) if Mf is None else Mf
        for s in range(0, len(M), _CHUNK):
            blk = Mf[s:s + _CHUNK]
            out[s:s + _CHUNK] = ((blk @ A) * blk).sum(axis=1) > 0
        return out
    for s in range(0, len(tuples), 256):
        part = tuples[s:s + 256]
        inside = np.logical_and.reduce([M[:, part[:, a]] for a in range(part.shape[1])])
        out |= inside.any(axis=1)
    return out


def _colors_present(M: np.ndarray, items: dict, k: int) -> np.ndarray:
    """``P[r, c-1]`` is True iff hyperedge ``r`` contains an item of color ``c``."""
    by_color: dict[int, list] = {}
    for T, c in items.items():
        by_color.setdefault(c, []).append(T)
    P = np.zeros((len(M), k), dtype=bool)
    Mf = M.astype(np.float32)
    for c, Ts in by_color.items():
        P[:, c - 1] = _presence(M, np.array(Ts, dtype=np.int64), Mf)
    return P


def _count_inside(M: np.ndarray, edges: Sequence[tuple[int, int]]) -> np.ndarray:
    if not edges:
        return np.zeros(len(M), dtype=np.int64)
    E = np.array(edges, dtype=np.int64)
    return (M[:, E[:, 0]] & M[:, E[:, 1]]).sum(axis=1)


def _first(masks: Sequence[int], bad: np.ndarray) -> tuple[int, ...] | None:
    idx = np.flatnonzero(bad)
    if len(idx) == 0:
        return None
    return min(members(masks[i]) for i in idx)


def check_edge_coloring(H: Hypergraph, coloring: EdgeColoring, threshold: int,
                        threshold_kind: str = "points") -> VerificationReport:
    """Every hyperedge over the threshold must hold Delaunay-edges of two colors."""
    if threshold_kind not in ("points", "edges"):
        raise ValueError("threshold kind is 'points' or 'edges'")
    masks = sorted(H.masks)
    if threshold_kind == "points":
        masks = [m for m in masks if m.bit_count() >= threshold]
    M = membership(H, masks)
    edges = sorted(coloring.domain)
    if threshold_kind == "edges":
        qualifies = _count_inside(M, edges) >= threshold
    else:
        qualifies = np.ones(len(M), dtype=bool)
    P = _colors_present(M, coloring.assignments, max(coloring.k, 1))
    distinct = P.sum(axis=1)
    bad = qualifies & (distinct < 2)
    report = VerificationReport(True, int(qualifies.sum()), threshold_kind, threshold, "proper")
    w = _first(masks, bad)
    if w is not None:
        wm = mask_of(w)
        inside = [e for e in edges if (wm >> e[0]) & (wm >> e[1]) & 1]
        report.passed = False
        report.witness = {"hyperedge": list(w), "edges": [list(e) for e in inside],
                          "colors": sorted({coloring[e] for e in inside}),
                          "detail": "monochromatic" if inside else "no Delaunay-edges inside"}
    return report


def verify_edge_coloring(S: PointSet, family: FamilyKind, coloring: EdgeColoring, threshold: int,
                         threshold_kind: str = "points") -> VerificationReport:
    """Check an edge coloring against every canonical region of ``family`` on ``S``."""
    domain = delaunay_edges(S, family)
    if coloring.domain != domain:
        raise DomainMismatchError(
            f"coloring covers {len(coloring.domain)} edges, the family has {len(domain)} Delaunay-edges")
    min_size = threshold if threshold_kind == "points" else 2
    H = canonical_hyperedges(S, family, min_size=max(min_size, 1))
    return check_edge_coloring(H, coloring, threshold, threshold_kind)


def check_tuple_coloring(H: Hypergraph, coloring: TupleColoring, m: int,
                         mode: str = "polychromatic") -> VerificationReport:
    """Every hyperedge with at least ``m`` vertices must hold tuples of two colors (proper) or all colors."""
    if mode not in ("proper", "polychromatic"):
        raise ValueError("mode is 'proper' or 'polychromatic'")
    if coloring.n != H.n:
        raise DomainMismatchError(f"coloring is on {coloring.n} vertices, hypergraph on {H.n}")
    masks = sorted(m_ for m_ in H.masks if m_.bit_count() >= m)
    M = membership(H, masks)
    P = _colors_present(M, coloring.assignments, coloring.k)
    if mode == "proper":
        bad = P.sum(axis=1) < 2
        label = "proper"
    else:
        bad = ~P.all(axis=1)
        label = f"polychromatic({coloring.k})"
    report = VerificationReport(True, len(masks), "points", m, label)
    w = _first(masks, bad)
    if w is not None:
        row = masks.index(mask_of(w))
        present = [int(c) + 1 for c in np.flatnonzero(P[row])]
        report.passed = False
        report.witness = {"hyperedge": list(w), "colors": present,
                          "missing": [c for c in range(1, coloring.k + 1) if c not in present]}
    return report


def verify_tuple_coloring(S: PointSet, family: FamilyKind, coloring: TupleColoring, m: int,
                          mode: str = "polychromatic") -> VerificationReport:
    """Check a tuple coloring against every canonical region of ``family`` holding ``m`` points."""
    H = canonical_hyperedges(S, family, min_size=max(m, 1))
    return check_tuple_coloring(H, coloring, m, mode)


def recheck_witness(report: VerificationReport, coloring, threshold_kind: str | None = None) -> bool:
    """Recount a failed report's witness hyperedge from scratch; True iff the violation is real."""
    if report.passed or report.witness is None:
        return False
    e = set(report.witness["hyperedge"])
    if isinstance(coloring, EdgeColoring):
        inside = [c for (i, j), c in coloring.assignments.items() if i in e and j in e]
        big = len(inside) >= report.threshold if report.threshold_kind == "edges" else len(e) >= report.threshold
        return big and len(set(inside)) < 2
    inside = {c for T, c in coloring.assignments.items() if set(T) <= e}
    if len(e) < report.threshold:
        return False
    if report.mode == "proper":
        return len(inside) < 2
    return inside != set(range(1, coloring.k + 1))


# ---------------------------------------------------------------------------
# prefix property of the box pair coloring

def check_prefix_property(H: Hypergraph, coloring: TupleColoring) -> tuple[int, ...] | None:
    """First hyperedge holding color ``i`` but missing some color below ``i``, or None."""
    masks = sorted(H.masks)
    M = membership(H, masks)
    P = _colors_present(M, coloring.assignments, coloring.k)
    # a prefix pattern is a run of Trues followed by Falses only
    bad = (P[:, 1:] & ~P[:, :-1]).any(axis=1) if coloring.k > 1 else np.zeros(len(M), dtype=bool)
    return _first(masks, bad)


# ---------------------------------------------------------------------------
# impossibility by exhaustive search

def _constraints(H: Hypergraph, domain: Sequence[tuple[int, ...]], threshold: int,
                 threshold_kind: str) -> list[tuple[int, ...]]:
    """Index sets of domain items inside each qualifying hyperedge, minimal ones only."""
    pos = [mask_of(T) for T in domain]
    out = set()
    for m in H.masks:
        inside = tuple(i for i, dm in enumerate(pos) if dm & m == dm)
        size = len(inside) if threshold_kind == "edges" else m.bit_count()
        if size >= threshold:
            out.add(inside)
    minimal = [c for c in out if not any(o != c and set(o) <= set(c) for o in out)]
    return sorted(minimal, key=lambda c: (len(c), c))


def no_proper_coloring(num_items: int, constraints: Sequence[Sequence[int]], num_colors: int,
                       budget: int = DEFAULT_IMPOSSIBILITY_BUDGET) -> bool:
    """True iff no ``num_colors``-coloring of ``num_items`` items gives every constraint two colors."""
    if num_colors ** num_items > budget:
        raise BudgetExceededError(
            f"{num_colors}^{num_items} colorings exceed the budget of {budget}")
    if any(len(c) < 2 for c in constraints):
        return True
    closing: list[list[tuple[int, ...]]] = [[] for _ in range(num_items)]
    for c in constraints:
        closing[max(c)].append(tuple(c))
    color = [0] * num_items

    def extend(i: int, used: int) -> bool:
        if i == num_items:
            return True
        # colors are interchangeable, so only one not-yet-used color needs trying
        for c in range(1, min(num_colors, used + 1) + 1):
            color[i] = c
            if all(len({color[j] for j in con}) >= 2 for con in closing[i]):
                if extend(i + 1, max(used, c)):
                    return True
        return False

    return not extend(0, 0)


def exhaustive_impossibility(S: PointSet, family: FamilyKind, threshold: int, num_colors: int,
                             target: str = "edges", threshold_kind: str = "points",
                             budget: int | None = None) -> bool:
    """True iff no coloring of the target domain passes the proper check at ``threshold``."""
    if target == "edges":
        domain = sorted(delaunay_edges(S, family))
    elif target == "pairs":
        domain = list(combinations(range(len(S)), 2))
    else:
        raise ValueError("target is 'edges' or 'pairs'")
    budget = budget_from_env(DEFAULT_IMPOSSIBILITY_BUDGET) if budget is None else budget
    H = canonical_hyperedges(S, family)
    cons = _constraints(H, domain, threshold, threshold_kind)
    return no_proper_coloring(len(domain), cons, num_colors, budget)


def all_colorings_fail(num_items: int, constraints: Sequence[Sequence[int]], num_colors: int) -> bool:
    """Direct product enumeration of the same question as :func:`no_proper_coloring`."""
    for col in product(range(num_colors), repeat=num_items):
        if all(len({col[j] for j in c}) >= 2 for c in constraints):
            return False
    return True


# ---------------------------------------------------------------------------
# the bottomless-rectangle tightness witness

PROOF_PAIRS = ((1, 2), (2, 3), (2, 4), (3, 4), (4, 5))


def proof_labeling(S: PointSet) -> tuple[int, ...] | None:
    """Order ``p1..p5`` of a 5-point set matching the tightness argument, if one exists.

    The pairs ``{p1,p2}, {p2,p3}, {p2,p4}, {p3,p4}, {p4,p5}`` must be
    Delaunay-edges and some bottomless rectangle must hold exactly
    ``p2, p3, p4``.
    """
    if len(S) != 5:
        return None
    edges = delaunay_edges(S, BOTTOMLESS)
    H = canonical_hyperedges(S, BOTTOMLESS)
    for perm in permutations(range(5)):
        p = (None,) + perm
        if all(tuple(sorted((p[a], p[b]))) in edges for a, b in PROOF_PAIRS) \
                and mask_of((p[2], p[3], p[4])) in H.masks:
            return perm
    return None


def general_position_grid_sets(size: int, grid: int) -> Iterable[PointSet]:
    """Point sets with distinct x and distinct y coordinates in ``range(grid)``, in a fixed order."""
    for xs in combinations(range(grid), size):
        for ys in combinations(range(grid), size):
            for perm in permutations(ys):
                yield PointSet(tuple((x, y) for x, y in zip(xs, perm)))


def find_bottomless_counterexample(budget: int | None = None, grid: int = 7, size: int = 5) -> PointSet:
    """First grid set whose bottomless Delaunay-edges have no 2-coloring proper at three points.

    The result is reindexed to follow :func:`proof_labeling` when such a
    labeling exists.
    """
    budget = budget_from_env(DEFAULT_SEARCH_BUDGET) if budget is None else budget
    for tried, S in enumerate(general_position_grid_sets(size, grid)):
        if tried >= budget:
            break
        if exhaustive_impossibility(S, BOTTOMLESS, 3, 2, "edges", "points"):
            perm = proof_labeling(S)
            return PointSet(tuple(S.points[i] for i in perm)) if perm else S
    raise BudgetExceededError(f"no bottomless counterexample among the first {budget} candidate sets")


# ---------------------------------------------------------------------------
# relation hypergraphs and planarity

RELATIONS = ("containment", "reverse-containment", "intersection")


def relation_hypergraph(H1: Hypergraph, H2: Hypergraph, relation: str = "containment") -> Hypergraph:
    """Hypergraph on the hyperedges of ``H1`` (in sorted order), one hyperedge per member of ``H2``.

    The hyperedge for ``h2`` collects every ``h1`` with ``h1 R h2``; empty
    collections are dropped.
    """
    if H1.n != H2.n:
        raise ValueError("both hypergraphs need the same vertex universe")
    if relation not in RELATIONS:
        raise ValueError(f"relation is one of {RELATIONS}")
    vertices = sorted(H1.masks, key=members)
    tests = {
        "containment": lambda a, b: a & b == a,
        "reverse-containment": lambda a, b: a & b == b,
        "intersection": lambda a, b: a & b != 0,
    }[relation]
    edges = set()
    for b in H2.masks:
        e = mask_of(i for i, a in enumerate(vertices) if tests(a, b))
        if e:
            edges.add(e)
    return Hypergraph(len(vertices), frozenset(edges))


def planarity_check(graph) -> bool:
    """Planarity of a networkx graph or an iterable of edges."""
    G = graph if isinstance(graph, nx.Graph) else nx.Graph(list(graph))
    return nx.check_planarity(G)[0]


def general_position_ok(S: PointSet, family: FamilyKind) -> bool:
    return check_general_position(S, family).ok
