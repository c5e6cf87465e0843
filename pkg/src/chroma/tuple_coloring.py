"""Colorings of all t-tuples: box tournaments, liftings and abstract combinators."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Sequence

import numpy as np

from .colorings import TupleColoring
from .errors import GeneralPositionError
from .families import h_region_reduction
from .geometry import PointSet, check_general_position
from .kinds import BOX, HalfspaceSpec, hregion


def _require_distinct_coordinates(S: PointSet) -> None:
    report = check_general_position(S, BOX)
    if not report.ok:
        raise GeneralPositionError(f"coordinate tie: {report.violations[0]}", report.violations)


def box_threshold(k: int, d: int, t: int = 2) -> int:
    """Points a box must hold to see every color of :func:`color_pairs_boxes` (lifted to ``t``)."""
    return k ** (2 ** (d - 1)) + t - 1


def h_region_threshold(t: int, k: int, h: int) -> int:
    return box_threshold(k, h, t)


# ---------------------------------------------------------------------------
# pair colorings of boxes

def monotone_path_lengths(S: PointSet) -> np.ndarray:
    """``L[p, q]``: longest path from ``p`` to ``q`` whose arcs all share the type of ``(p, q)``.

    Pairs are oriented by increasing first coordinate. Within one type the
    arcs form a transitive acyclic relation, so the longest path is found by
    dynamic programming in first-coordinate order. The matrix is symmetric.
    """
    _require_distinct_coordinates(S)
    n = len(S)
    if n < 2:
        return np.zeros((n, n), dtype=np.int64)
    order = sorted(range(n), key=lambda i: S.points[i][0])
    Y = [S.int_coords[i] for i in order]
    # T[a, b] encodes the signs of axes 1..d-1 of Y[b] - Y[a]; only a < b is used
    T = np.zeros((n, n), dtype=np.int64)
    for ax in range(1, S.dim):
        col = [p[ax] for p in Y]
        rise = np.array([[col[b] > col[a] for b in range(n)] for a in range(n)], dtype=np.int64)
        T |= rise << (ax - 1)
    before = np.triu(np.ones((n, n), dtype=bool), 1)
    Ls = np.zeros((n, n), dtype=np.int64)
    for c in range(1, n):
        tc = T[:c, c][:, None]
        via = (T[:c, :c] == tc) & (T[:c, c][None, :] == tc) & before[:c, :c]
        Ls[:c, c] = 1 + np.where(via, Ls[:c, :c], 0).max(axis=1)
    Ls = Ls + Ls.T
    inv = np.empty(n, dtype=np.int64)
    inv[order] = np.arange(n)
    return Ls[np.ix_(inv, inv)]


def color_pairs_boxes(S: PointSet, k: int) -> TupleColoring:
    """Color each pair by ``min(k, longest monotone path between its points)``.

    Every axis-parallel box with at least ``k**(2**(d-1)) + 1`` points then
    contains pairs of all ``k`` colors.
    """
    if k < 1:
        raise ValueError("need at least one color")
    L = monotone_path_lengths(S)
    n = len(S)
    return TupleColoring(n, 2, k, {(i, j): int(min(k, L[i, j])) for i, j in combinations(range(n), 2)})


def pair_type(S: PointSet, i: int, j: int) -> str:
    """``"NE"`` when the pair rises from left to right, ``"SE"`` when it falls."""
    p, q = S.points[i], S.points[j]
    if p[0] > q[0]:
        p, q = q, p
    return "NE" if q[1] > p[1] else "SE"


def color_pairs_rectangles_optimal(S: PointSet) -> TupleColoring:
    """Two colors so that every rectangle with at least three points holds pairs of both.

    A pair is red (1) when it rises and its bounding box is empty of other
    points, or when it falls and its bounding box is not; blue (2) otherwise.
    """
    _require_distinct_coordinates(S)
    if S.dim != 2:
        raise ValueError("rectangle pair coloring needs planar points")
    P = S.int_coords
    n = len(P)
    X = np.array([p[0] for p in P], dtype=object)
    Y = np.array([p[1] for p in P], dtype=object)

    def rule(T):
        i, j = T
        inside = int(((X >= min(X[i], X[j])) & (X <= max(X[i], X[j]))
                      & (Y >= min(Y[i], Y[j])) & (Y <= max(Y[i], Y[j]))).sum())
        rising = pair_type(S, i, j) == "NE"
        return 1 if (rising and inside == 2) or (not rising and inside > 2) else 2

    return TupleColoring.from_function(n, 2, 2, rule)


# ---------------------------------------------------------------------------
# liftings

def depth_order(S: PointSet, H: HalfspaceSpec) -> list[int]:
    """Points by decreasing distance from the boundary of a translate of ``H`` holding all of S."""
    H = H if isinstance(H, HalfspaceSpec) else HalfspaceSpec(tuple(H))
    proj = [H.project(p) for p in S.points]
    if len(set(proj)) != len(proj):
        raise GeneralPositionError("two points are at the same distance from the halfspace boundary")
    return sorted(range(len(S)), key=lambda i: proj[i])


def lift_tuples(base: TupleColoring, S: PointSet, H: HalfspaceSpec, tPrime: int) -> TupleColoring:
    """Color each ``tPrime``-subset by the base color of its ``t`` deepest points."""
    if tPrime <= base.t:
        raise ValueError(f"lift needs tPrime > t = {base.t}, got {tPrime}")
    if base.n != len(S):
        raise ValueError("base coloring and point set differ in size")
    rank = {v: r for r, v in enumerate(depth_order(S, H))}
    t = base.t

    def rule(T):
        deepest = sorted(T, key=rank.__getitem__)[:t]
        return base[deepest]

    return TupleColoring.from_function(base.n, tPrime, base.k, rule)


def color_tuples_h_regions(S: PointSet, H: Sequence[HalfspaceSpec], t: int, k: int) -> TupleColoring:
    """``k``-color the ``t``-tuples so every H-region with ``h_region_threshold(t, k, h)`` points sees all colors."""
    if t < 2:
        raise ValueError("H-region tuple colorings need t >= 2")
    H = [h if isinstance(h, HalfspaceSpec) else HalfspaceSpec(tuple(h)) for h in H]
    report = check_general_position(S, hregion(*(h.normal for h in H)))
    if not report.ok:
        raise GeneralPositionError(report.violations[0], report.violations)
    image = h_region_reduction(S, H)
    pairs = color_pairs_boxes(image, k)
    if t == 2:
        return pairs
    return lift_tuples(pairs, S, H[0], t)


def lift_proper_two_coloring(base: TupleColoring, tPrime: int) -> TupleColoring:
    """Red (1) when all ``t``-subsets of a ``tPrime``-tuple share a base color, blue (2) otherwise."""
    if tPrime <= base.t:
        raise ValueError(f"lift needs tPrime > t = {base.t}, got {tPrime}")
    t = base.t

    def rule(T):
        return 1 if len({base[U] for U in combinations(T, t)}) == 1 else 2

    return TupleColoring.from_function(base.n, tPrime, 2, rule)


DEFAULT_RAMSEY_BUDGET = 1 << 24


def ramsey_number(t: int, k: int, tPrime: int, budget: int = DEFAULT_RAMSEY_BUDGET) -> int | None:
    """Smallest ``R`` such that every ``k``-coloring of the ``t``-subsets of an ``R``-set has a
    monochromatic ``tPrime``-subset, by exhaustive search; None once the budget is spent."""
    if tPrime <= t:
        raise ValueError("need tPrime > t")
    spent = 0
    R = tPrime
    while True:
        subsets = list(combinations(range(R), t))
        index = {U: i for i, U in enumerate(subsets)}
        count = k ** len(subsets)
        spent += count
        if spent > budget:
            return None
        groups = np.array([[index[U] for U in combinations(T, t)]
                           for T in combinations(range(R), tPrime)], dtype=np.int64)
        if _every_coloring_has_monochromatic(len(subsets), k, groups):
            return R
        R += 1


def _every_coloring_has_monochromatic(slots: int, k: int, groups: np.ndarray, chunk: int = 1 << 16) -> bool:
    total = k ** slots
    powers = k ** np.arange(slots, dtype=np.int64)
    for start in range(0, total, chunk):
        codes = np.arange(start, min(total, start + chunk), dtype=np.int64)
        colors = (codes[:, None] // powers[None, :]) % k
        g = colors[:, groups]
        mono = (g == g[:, :, :1]).all(axis=2).any(axis=1)
        if not mono.all():
            return False
    return True


# ---------------------------------------------------------------------------
# from vertex colorings to tuple colorings

@dataclass(frozen=True)
class SubsetPalette:
    """Palette whose colors are the ``tPrime``-subsets of ``[k]`` then the ``i``-subsets of ``[k-1]``."""
    k: int
    tPrime: int

    @property
    def entries(self) -> list[tuple[str, tuple[int, ...]]]:
        out = [("distinct", c) for c in combinations(range(1, self.k + 1), self.tPrime)]
        for i in range(self.tPrime - 1):
            out += [("repeat", c) for c in combinations(range(1, self.k), i)]
        return out

    @property
    def size(self) -> int:
        return comb(self.k, self.tPrime) + sum(comb(self.k - 1, i) for i in range(self.tPrime - 1))

    def index(self) -> dict[tuple[str, tuple[int, ...]], int]:
        return {e: i + 1 for i, e in enumerate(self.entries)}


def phi(r: int, j: int, k: int) -> int:
    """Bijection from ``[k] minus {r}`` onto ``[k-1]``."""
    if j == r or not 1 <= j <= k:
        raise ValueError(f"phi_{r} is undefined at {j}")
    return j - r if j > r else j - r + k


def tuple_color_from_vertex_colors(colors: Sequence[int], k: int, tPrime: int,
                                   index: dict | None = None) -> int:
    index = index if index is not None else SubsetPalette(k, tPrime).index()
    counts = Counter(colors)
    if len(counts) == len(colors):
        return index[("distinct", tuple(sorted(counts)))]
    repeated = [c for c, m in counts.items() if m >= 2]
    if len(repeated) == 1:
        r = repeated[0]
        image = tuple(sorted(phi(r, j, k) for j in counts if j != r))
        return index[("repeat", image)]
    return 1


def polychromatic_tuples_from_vertex_coloring(c: Sequence[int], tPrime: int, k: int | None = None) -> TupleColoring:
    """Turn a polychromatic vertex ``k``-coloring into a polychromatic coloring of ``tPrime``-tuples.

    Every hyperedge with at least ``max(m, k*(tPrime-1)+1)`` vertices then
    holds tuples of all ``SubsetPalette(k, tPrime).size`` colors.
    """
    if tPrime <= 1:
        raise ValueError("need tPrime > 1")
    k = max(c, default=1) if k is None else k
    if any(not 1 <= x <= k for x in c):
        raise ValueError(f"vertex colors must lie in 1..{k}")
    palette = SubsetPalette(k, tPrime)
    index = palette.index()
    return TupleColoring.from_function(
        len(c), tPrime, palette.size,
        lambda T: tuple_color_from_vertex_colors([c[v] for v in T], k, tPrime, index))


def vertex_lift_threshold(m: int, k: int, tPrime: int) -> int:
    return max(m, k * (tPrime - 1) + 1)


# ---------------------------------------------------------------------------
# no rule on pair-color multisets lifts 3-colorings of pairs to triples

MULTISETS = tuple(sorted(tuple(sorted(ms)) for ms in
                         {tuple(sorted(x)) for x in product((1, 2, 3), repeat=3)}))


def _multiset_index(colors) -> int:
    return MULTISETS.index(tuple(sorted(colors)))


@dataclass(frozen=True)
class Gadget:
    """A hypergraph with a 3-coloring of its vertex pairs."""
    n: int
    edges: tuple[frozenset[int], ...]
    pair_color: dict

    def triple_multisets(self, edge) -> frozenset[int]:
        return frozenset(_multiset_index((self.pair_color[frozenset((x, y))],
                                          self.pair_color[frozenset((x, z))],
                                          self.pair_color[frozenset((y, z))]))
                         for x, y, z in combinations(sorted(edge), 3))

    def pairs_colorful(self, m: int) -> bool:
        """Every hyperedge with at least ``m`` vertices holds pairs of all three colors."""
        return all({self.pair_color[frozenset(p)] for p in combinations(e, 2)} == {1, 2, 3}
                   for e in self.edges if len(e) >= m)


def first_gadget(m: int, mPrime: int) -> Gadget:
    """Two disjoint special pairs colored 1 and 2; every other pair colored 3."""
    size = max(m, mPrime, 5)
    V = range(size)
    special = {frozenset((0, 1)): 1, frozenset((2, 3)): 2}
    colors = {frozenset(p): special.get(frozenset(p), 3) for p in combinations(V, 2)}
    width = max(m, 4)
    edges = [frozenset(V)]
    edges += [frozenset(e) for e in combinations(V, width)
              if {0, 1} <= set(e) and {2, 3} <= set(e)]
    return Gadget(size, tuple(dict.fromkeys(edges)), colors)


GADGET_ROTATIONS = ((1, 2, 3), (2, 1, 3), (3, 2, 1))


def second_gadget(m: int, mPrime: int, rotation: tuple[int, int, int]) -> Gadget:
    """Two halves A, B; pairs inside a half, matched pairs, and crossing pairs get the rotation's colors."""
    half = max(m, mPrime)
    A = list(range(half))
    B = list(range(half, 2 * half))
    same, matched, cross = rotation
    colors = {}
    for x, y in combinations(A + B, 2):
        if (x < half) == (y < half):
            colors[frozenset((x, y))] = same
        elif abs(x - y) == half:
            colors[frozenset((x, y))] = matched
        else:
            colors[frozenset((x, y))] = cross
    edges = [frozenset(A + B)]
    edges += [frozenset(A + [b]) for b in B] + [frozenset(B + [a]) for a in A]
    return Gadget(2 * half, tuple(edges), colors)


def all_multiset_rules() -> np.ndarray:
    """All ``3**10`` maps from the ten multisets to colors, one row each, colors ``1..3``."""
    codes = np.arange(3 ** len(MULTISETS), dtype=np.int64)
    powers = 3 ** np.arange(len(MULTISETS), dtype=np.int64)
    return ((codes[:, None] // powers[None, :]) % 3 + 1).astype(np.int8)


def _covers_all(rules: np.ndarray, present: Sequence[int]) -> np.ndarray:
    img = rules[:, sorted(present)]
    return np.logical_and.reduce([(img == c).any(axis=1) for c in (1, 2, 3)])


def gadget_constraints(m: int, mPrime: int) -> list[frozenset[int]]:
    """Multiset sets that must map onto all three colors, one per large gadget hyperedge."""
    gadgets = [first_gadget(m, mPrime)] + [second_gadget(m, mPrime, r) for r in GADGET_ROTATIONS]
    out = []
    for g in gadgets:
        if not g.pairs_colorful(m):
            raise AssertionError("gadget pair coloring fails its own premise")
        out += [g.triple_multisets(e) for e in g.edges if len(e) >= mPrime]
    return list(dict.fromkeys(out))


def surviving_rules(mMax: int, m: int = 4, rules: np.ndarray | None = None) -> np.ndarray:
    """Boolean mask over ``rules``: which survive the gadgets for some ``mPrime <= mMax``."""
    rules = all_multiset_rules() if rules is None else rules
    alive = np.zeros(len(rules), dtype=bool)
    for mPrime in range(1, mMax + 1):
        ok = np.ones(len(rules), dtype=bool)
        for present in gadget_constraints(m, mPrime):
            ok &= _covers_all(rules, present)
        alive |= ok
    return alive


def verify_no_local_mapping(mMax: int = 8, m: int = 4) -> int:
    """Count multiset rules that lift every valid pair 3-coloring to a valid triple 3-coloring."""
    return int(surviving_rules(mMax, m).sum())
