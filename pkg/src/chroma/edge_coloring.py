"""Colorings of Delaunay-edges for halfplanes, bottomless rectangles, rectangles and disks."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations
from math import ceil, log2
from typing import Callable, Iterable, Sequence

import networkx as nx

from .colorings import EdgeColoring
from .errors import GeneralPositionError, InconsistencyError
from .families import canonical_hyperedges, delaunay_edges, is_shrinkable, mask_of
from .geometry import PointSet, angular_sort, check_general_position, convex_hull
from .kinds import AXIS_RECT, BOTTOMLESS, DISK, HALFPLANE, FamilyKind


def _require_general_position(S: PointSet, family: FamilyKind) -> None:
    report = check_general_position(S, family)
    if not report.ok:
        raise GeneralPositionError(
            f"point set is not in general position for {family}: {report.violations[0]}",
            report.violations)


# ---------------------------------------------------------------------------
# halfplanes

def halfplane_traversal(S: PointSet) -> list[tuple[int, int]]:
    """Delaunay-edges of the halfplane family in the order the hull walk visits them.

    The walk starts at the lexicographically smallest hull vertex and moves
    clockwise along the hull. At each vertex the incident edges are scanned
    counter-clockwise, starting from the hull edge towards the
    counter-clockwise neighbour; edges seen before are skipped.
    """
    _require_general_position(S, HALFPLANE)
    n = len(S)
    if n < 2:
        return []
    edges = delaunay_edges(S, HALFPLANE, check=False)
    if n == 2:
        return sorted(edges)
    hull = convex_hull(S)
    h = len(hull)
    P = S.int_coords
    adj: dict[int, list[int]] = {}
    for i, j in edges:
        adj.setdefault(i, []).append(j)
        adj.setdefault(j, []).append(i)

    order: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    walk = [hull[0]] + hull[:0:-1]
    for v in walk:
        ccw_next = hull[(hull.index(v) + 1) % h]
        # the fan at a hull vertex spans less than a half-turn, so a plain orientation sort works
        rest = [u for u in adj.get(v, []) if u != ccw_next]
        for u in [ccw_next] + angular_sort(P[v], rest, P):
            e = (v, u) if v < u else (u, v)
            if e not in seen:
                seen.add(e)
                order.append(e)
    if len(order) != len(edges):
        raise InconsistencyError("hull walk missed Delaunay-edges",
                                 missed=sorted(edges - set(order)))
    return order


def color_halfplane_edges(S: PointSet) -> EdgeColoring:
    """Two colors such that every halfplane with at least three Delaunay-edges sees both."""
    order = halfplane_traversal(S)
    return EdgeColoring(2, {e: 1 + pos % 2 for pos, e in enumerate(order)})


# ---------------------------------------------------------------------------
# bottomless rectangles

@dataclass(frozen=True)
class SweepStep:
    """State after inserting one point: the x-ordered points and their neighbourly edge colors."""
    inserted: int
    row: tuple[int, ...]
    colors: tuple[int, ...]


def _other(c: int) -> int:
    return 3 - c


def _monochromatic_triple(colors: Sequence[int]) -> int | None:
    for a in range(len(colors) - 2):
        if colors[a] == colors[a + 1] == colors[a + 2]:
            return a
    return None


def color_bottomless_edges(S: PointSet,
                           on_step: Callable[[SweepStep], None] | None = None) -> EdgeColoring:
    """Two colors such that every bottomless rectangle with at least four points sees both.

    Points are inserted from bottom to top. Neighbourly edges (consecutive in
    x among the inserted points) are colored on creation so that no three
    consecutive ones share a color; Delaunay-edges that are never neighbourly
    get color 1.
    """
    _require_general_position(S, BOTTOMLESS)
    n = len(S)
    if n < 2:
        return EdgeColoring(2, {})
    pts = S.points
    row: list[int] = []          # inserted points, left to right
    color: dict[tuple[int, int], int] = {}

    def key(a: int, b: int) -> tuple[int, int]:
        return (a, b) if a < b else (b, a)

    def nb(j: int) -> int:
        # color of the neighbourly edge {p_j, p_{j+1}}, 1-based positions
        return color[key(row[j - 1], row[j])]

    for v in sorted(range(n), key=lambda i: pts[i][1]):
        x = pts[v][0]
        lo, hi = 0, len(row)
        while lo < hi:
            mid = (lo + hi) // 2
            if pts[row[mid]][0] < x:
                lo = mid + 1
            else:
                hi = mid
        row.insert(lo, v)
        k = len(row)
        i = lo + 1
        new = [j for j in (i - 1, i) if 1 <= j <= k - 1]

        if k <= 3:
            for j in new:
                ref = None
                for a in (j - 1, j + 1):
                    if 1 <= a <= k - 1 and key(row[a - 1], row[a]) in color:
                        ref = nb(a)
                        break
                color[key(row[j - 1], row[j])] = 1 if ref is None else _other(ref)
        elif i == 1:
            color[key(row[0], row[1])] = _other(nb(2))
        elif i == k:
            color[key(row[k - 2], row[k - 1])] = _other(nb(k - 2))
        elif i == 2:
            c = _other(nb(3))
            color[key(row[0], row[1])] = c
            color[key(row[1], row[2])] = c
        elif i == k - 1:
            c = _other(nb(k - 3))
            color[key(row[k - 3], row[k - 2])] = c
            color[key(row[k - 2], row[k - 1])] = c
        else:
            left, right = nb(i - 2), nb(i + 1)
            if left == right:
                color[key(row[i - 2], row[i - 1])] = _other(left)
                color[key(row[i - 1], row[i])] = _other(left)
            else:
                color[key(row[i - 2], row[i - 1])] = right
                color[key(row[i - 1], row[i])] = left

        current = tuple(nb(j) for j in range(1, k))
        bad = _monochromatic_triple(current)
        if bad is not None:
            raise InconsistencyError("three consecutive neighbourly edges share a color",
                                     step=v, position=bad, colors=current)
        if on_step is not None:
            on_step(SweepStep(v, tuple(row), current))

    domain = delaunay_edges(S, BOTTOMLESS, check=False)
    stray = set(color) - domain
    if stray:
        raise InconsistencyError("a neighbourly edge is not a Delaunay-edge", edges=sorted(stray))
    return EdgeColoring(2, {e: color.get(e, 1) for e in domain})


# ---------------------------------------------------------------------------
# posets and Hasse diagrams

class Poset:
    """A strict partial order on ``range(n)``, stored as its transitive closure in bitsets."""

    def __init__(self, n: int, relations: Iterable[tuple[int, int]]):
        self.n = n
        succ = [0] * n
        indeg = [0] * n
        for x, y in relations:
            if not (0 <= x < n and 0 <= y < n):
                raise ValueError(f"relation ({x}, {y}) outside range({n})")
            if x == y:
                raise ValueError(f"relation ({x}, {x}) is reflexive")
            if not succ[x] >> y & 1:
                succ[x] |= 1 << y
                indeg[y] += 1
        self._order = self._topological(succ, indeg)
        up = list(succ)
        for x in reversed(self._order):
            s = succ[x]
            acc = s
            while s:
                low = s & -s
                acc |= up[low.bit_length() - 1]
                s ^= low
            up[x] = acc
        down = [0] * n
        for x in range(n):
            s = up[x]
            while s:
                low = s & -s
                down[low.bit_length() - 1] |= 1 << x
                s ^= low
        self.up = up
        self.down = down

    @staticmethod
    def _topological(succ: list[int], indeg: list[int]) -> list[int]:
        indeg = list(indeg)
        heap = [x for x in range(len(succ)) if indeg[x] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            x = heapq.heappop(heap)
            order.append(x)
            s = succ[x]
            while s:
                low = s & -s
                y = low.bit_length() - 1
                indeg[y] -= 1
                if indeg[y] == 0:
                    heapq.heappush(heap, y)
                s ^= low
        if len(order) != len(succ):
            raise ValueError("relation has a cycle, so it is not a strict partial order")
        return order

    @classmethod
    def dominance(cls, S: PointSet, signs: Sequence[int] = (1, 1)) -> "Poset":
        """``p < q`` iff ``signs[a] * (q_a - p_a) > 0`` in every coordinate ``a``."""
        P = S.points
        rel = [(i, j) for i in range(len(P)) for j in range(len(P))
               if i != j and all(s * (b - a) > 0 for s, a, b in zip(signs, P[i], P[j]))]
        return cls(len(P), rel)

    def less(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    @property
    def relations(self) -> frozenset[tuple[int, int]]:
        return frozenset((x, y) for x in range(self.n) for y in range(self.n) if self.up[x] >> y & 1)

    @property
    def hasse(self) -> list[tuple[int, int]]:
        """Arcs ``(x, y)`` with ``x < y`` and nothing strictly between them."""
        arcs = []
        for x in range(self.n):
            s = self.up[x]
            while s:
                low = s & -s
                y = low.bit_length() - 1
                if not self.up[x] & self.down[y]:
                    arcs.append((x, y))
                s ^= low
        return arcs

    def linear_extension(self) -> list[int]:
        """Topological order, breaking ties by the smallest index."""
        return list(self._order)


def hasse_palette(n: int) -> int:
    return max(1, ceil(log2(n))) if n > 1 else 1


def hasse_arc_colors(P: Poset) -> dict[tuple[int, int], int]:
    """Color Hasse arcs so that no directed path of two arcs is monochromatic.

    In a fixed linear extension, an arc gets color ``ceil(log2(s))`` where
    ``s`` is the size of the smallest segment of the recursive halving (first
    half rounded up) that contains both of its ends.
    """
    pos = {x: i for i, x in enumerate(P.linear_extension())}
    out = {}
    for x, y in P.hasse:
        a, b = pos[x], pos[y]
        lo, hi = 0, P.n
        while True:
            size = hi - lo
            mid = lo + (size + 1) // 2
            if b < mid:
                hi = mid
            elif a >= mid:
                lo = mid
            else:
                out[(x, y)] = ceil(log2(size))
                break
    return out


def hasse_edge_coloring(P: Poset) -> EdgeColoring:
    """Hasse arcs as unordered edges with at most ``ceil(log2 n)`` colors."""
    return EdgeColoring(hasse_palette(P.n), hasse_arc_colors(P))


def color_rectangle_edges(S: PointSet) -> EdgeColoring:
    """Color axis-parallel rectangle Delaunay-edges from two dominance orders.

    Every rectangle with at least three points contains two Delaunay-edges
    of different colors. Coordinates must be pairwise distinct; apply
    :func:`shear_general_position` first otherwise.
    """
    _require_general_position(S, AXIS_RECT)
    n = len(S)
    k1 = hasse_palette(n)
    colors: dict[tuple[int, int], int] = {}
    for offset, signs in ((0, (1, 1)), (k1, (1, -1))):
        for (x, y), c in hasse_arc_colors(Poset.dominance(S, signs)).items():
            colors[(x, y) if x < y else (y, x)] = c + offset
    domain = delaunay_edges(S, AXIS_RECT, check=False)
    if set(colors) != domain:
        raise InconsistencyError("Hasse arcs differ from the rectangle Delaunay-edges",
                                 extra=sorted(set(colors) - domain), missing=sorted(domain - set(colors)))
    return EdgeColoring(2 * k1, colors)


# ---------------------------------------------------------------------------
# disks

def build_conflict_graph_J(S: PointSet, family: FamilyKind = DISK) -> nx.Graph:
    """Delaunay-edges, joined when they share an endpoint and their three points form a hyperedge."""
    _require_general_position(S, family)
    H = canonical_hyperedges(S, family, check=False, max_size=3)
    masks = H.masks
    edges = sorted(m for m in masks if m.bit_count() == 2)
    J = nx.Graph()
    pairs = [tuple(i for i in range(len(S)) if m >> i & 1) for m in edges]
    J.add_nodes_from(pairs)
    by_vertex: dict[int, list[tuple[int, int]]] = {}
    for e in pairs:
        for v in e:
            by_vertex.setdefault(v, []).append(e)
    for v, inc in by_vertex.items():
        for e, f in combinations(inc, 2):
            if mask_of(e) | mask_of(f) in masks:
                J.add_edge(e, f)
    return J


def exact_coloring(G: nx.Graph, k: int) -> dict | None:
    """A proper ``k``-coloring of ``G`` by backtracking in saturation-degree order, or None."""
    nodes = sorted(G.nodes)
    nbrs = {v: sorted(G.adj[v]) for v in nodes}
    color: dict = {}

    def pick():
        best, best_key = None, None
        for v in nodes:
            if v in color:
                continue
            sat = len({color[u] for u in nbrs[v] if u in color})
            key = (-sat, -len(nbrs[v]), v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        return best

    def solve() -> bool:
        v = pick()
        if v is None:
            return True
        used = {color[u] for u in nbrs[v] if u in color}
        # a color never seen before is interchangeable with any other unseen one
        fresh = False
        for c in range(1, k + 1):
            if c in used:
                continue
            unseen = c not in color.values()
            if unseen and fresh:
                continue
            fresh = fresh or unseen
            color[v] = c
            if solve():
                return True
            del color[v]
        return False

    return dict(color) if solve() else None


def color_disk_edges(S: PointSet, family: FamilyKind = DISK) -> EdgeColoring:
    """At most four colors such that every disk with at least three points sees two of them."""
    _require_general_position(S, family)
    ok, witness = is_shrinkable(canonical_hyperedges(S, family, check=False))
    if not ok:
        raise InconsistencyError("canonical disk hypergraph is not shrinkable", witness=witness)
    J = build_conflict_graph_J(S, family)
    col = exact_coloring(J, 4)
    if col is None:
        planar, _ = nx.check_planarity(J)
        raise InconsistencyError("conflict graph needs more than four colors", planar=planar)
    return EdgeColoring(4, col)
