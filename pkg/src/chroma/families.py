"""Canonical enumeration of the hypergraph G(S, F) for each supported family.

Hyperedges are stored as integer bitmasks (bit ``i`` set when point ``i`` is
in the hyperedge). Every enumerator is exact and complete for point sets that
pass :func:`check_general_position`; the rectangle-like enumerators also
tolerate coordinate ties.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .errors import DimensionError, GeneralPositionError
from .geometry import Box, PointSet, check_general_position, incircle, orient
from .kinds import FamilyKind, HalfspaceSpec

DEFAULT_MAX_HALFSPACES = 4
DEFAULT_MAX_HREGION_POINTS = 40


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def members(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


@dataclass(frozen=True)
class Hypergraph:
    n: int
    masks: frozenset[int]

    def __post_init__(self):
        masks = frozenset(self.masks)
        limit = 1 << self.n
        for m in masks:
            if m <= 0 or m >= limit:
                raise ValueError(f"hyperedge mask {m} is empty or outside [0, {self.n})")
        object.__setattr__(self, "masks", masks)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        return cls(n, frozenset(mask_of(e) for e in edges))

    @property
    def edges(self) -> list[tuple[int, ...]]:
        return sorted(members(m) for m in self.masks)

    def __len__(self) -> int:
        return len(self.masks)

    def __contains__(self, edge) -> bool:
        m = edge if isinstance(edge, int) else mask_of(edge)
        return m in self.masks

    def of_size(self, lo: int, hi: int | None = None) -> "Hypergraph":
        return Hypergraph(self.n, frozenset(
            m for m in self.masks
            if m.bit_count() >= lo and (hi is None or m.bit_count() <= hi)))

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> "Hypergraph":
        return cls.from_edges(int(data["n"]), data["edges"])


EdgeSet = frozenset  # of (i, j) pairs with i < j


# ---------------------------------------------------------------------------
# Enumerators. Each adds masks to ``out``; size filters are applied by callers.
# ---------------------------------------------------------------------------

def _groups(idx: Sequence[int], key) -> list[tuple[object, list[int]]]:
    buckets: dict = {}
    for i in idx:
        buckets.setdefault(key(i), []).append(i)
    return sorted(buckets.items(), key=lambda kv: kv[0])


def _rect_masks(idx: Sequence[int], X, Y, min_size: int, max_size: int | None, out: set,
                required: Sequence[set] = ()) -> None:
    """All nonempty ``idx`` subsets cut by closed boxes in the (X, Y) plane.

    Each hyperedge is emitted once, from the x-values and y-values of its own
    extreme points. Masks missing any of the ``required`` sets are skipped.
    """
    xgroups = _groups(idx, lambda i: X[i])
    nx = len(xgroups)
    lo = max(min_size, 1)
    for a in range(nx):
        ys: list = []  # sorted list of (y, i)
        a_set = set(xgroups[a][1])
        for b in range(a, nx):
            for i in xgroups[b][1]:
                bisect.insort(ys, (Y[i], i))
            if len(ys) < lo:
                continue
            # y-groups of the slab
            gm: list[int] = []
            gid: dict[int, int] = {}
            prev = None
            for y, i in ys:
                if y != prev:
                    gm.append(0)
                    prev = y
                gm[-1] |= 1 << i
                gid[i] = len(gm) - 1
            # sorted group positions of each required set; every mask must reach one of each
            where = [sorted({gid[i] for i in R if i in gid}) for R in (a_set, xgroups[b][1], *required)]
            if not all(where):
                continue
            last_g1 = min(w[-1] for w in where)
            G = len(gm)
            cum = [0] * (G + 1)
            cnt = [0] * (G + 1)
            for g in range(G):
                cum[g + 1] = cum[g] | gm[g]
                cnt[g + 1] = cnt[g] + gm[g].bit_count()
            for g1 in range(last_g1 + 1):
                start = max(w[bisect.bisect_left(w, g1)] for w in where)
                # smallest g2 with cnt[g2 + 1] - cnt[g1] >= lo
                need = bisect.bisect_left(cnt, cnt[g1] + lo) - 1
                start = max(start, need)
                base = cum[g1]
                for g2 in range(start, G):
                    if max_size is not None and cnt[g2 + 1] - cnt[g1] > max_size:
                        break
                    out.add(cum[g2 + 1] ^ base)


def _interval_masks(idx: Sequence[int], X, min_size: int, max_size: int | None, out: set) -> None:
    groups = _groups(idx, lambda i: X[i])
    gm = [mask_of(g) for _, g in groups]
    cnt = [0]
    cum = [0]
    for m in gm:
        cum.append(cum[-1] | m)
        cnt.append(cnt[-1] + m.bit_count())
    lo = max(min_size, 1)
    for a in range(len(gm)):
        for b in range(a, len(gm)):
            size = cnt[b + 1] - cnt[a]
            if size < lo:
                continue
            if max_size is not None and size > max_size:
                break
            out.add(cum[b + 1] ^ cum[a])


def _box_masks(S: PointSet, min_size: int, max_size: int | None) -> set[int]:
    P = S.int_coords
    d = S.dim
    out: set[int] = set()
    idx = list(range(len(P)))
    if d == 1:
        _interval_masks(idx, [p[0] for p in P], min_size, max_size, out)
        return out
    cols = [[p[k] for p in P] for k in range(d)]

    def recurse(sub: list[int], dim: int, required: tuple) -> None:
        if dim == d - 2:
            _rect_masks(sub, cols[dim], cols[dim + 1], min_size, max_size, out, required)
            return
        groups = _groups(sub, lambda i: cols[dim][i])
        lo = max(min_size, 1)
        for a in range(len(groups)):
            slab: list[int] = []
            for b in range(a, len(groups)):
                slab = slab + groups[b][1]
                if len(slab) < lo:
                    continue
                # the slab's own extreme groups must survive the inner cuts
                recurse(sorted(slab), dim + 1, required + (set(groups[a][1]), set(groups[b][1])))

    recurse(idx, 0, ())
    return out


def _bottomless_masks(S: PointSet, min_size: int, max_size: int | None) -> set[int]:
    P = S.int_coords
    X = [p[0] for p in P]
    Y = [p[1] for p in P]
    xgroups = _groups(range(len(P)), lambda i: X[i])
    out: set[int] = set()
    lo = max(min_size, 1)
    for a in range(len(xgroups)):
        ys: list = []
        a_set = set(xgroups[a][1])
        for b in range(a, len(xgroups)):
            for i in xgroups[b][1]:
                bisect.insort(ys, (Y[i], i))
            b_set = set(xgroups[b][1])
            mask = 0
            seen_a = seen_b = False
            k = 0
            while k < len(ys):
                y = ys[k][0]
                while k < len(ys) and ys[k][0] == y:
                    i = ys[k][1]
                    mask |= 1 << i
                    seen_a = seen_a or i in a_set
                    seen_b = seen_b or i in b_set
                    k += 1
                size = mask.bit_count()
                if max_size is not None and size > max_size:
                    break
                if seen_a and seen_b and size >= lo:
                    out.add(mask)
    return out


def _halfplane_variants(S: PointSet) -> Iterator[tuple[int, tuple[int, int], int]]:
    """Yield (left-side mask, ordered pair, included-subset mask) for each directed line."""
    P = S.int_coords
    n = len(P)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            a, b = P[i], P[j]
            left = 0
            for k in range(n):
                if k != i and k != j and orient(a, b, P[k]) > 0:
                    left |= 1 << k
            for inc in (0, 1 << i, 1 << j, (1 << i) | (1 << j)):
                yield left, (i, j), inc


def _halfplane_masks(S: PointSet) -> set[int]:
    n = len(S)
    if n == 1:
        return {1}
    out = {left | inc for left, _, inc in _halfplane_variants(S)}
    out.discard(0)
    return out


def _collinear_all(P) -> bool:
    if len(P) < 3:
        return True
    a, b = P[0], P[1]
    return all(orient(a, b, c) == 0 for c in P[2:])


def _disk_variants(S: PointSet) -> Iterator[tuple[int, tuple[int, int, int], int]]:
    """Yield (inside mask, ccw triple, included-subset mask) for each circle through three points."""
    P = S.int_coords
    n = len(P)
    for i, j, k in combinations(range(n), 3):
        o = orient(P[i], P[j], P[k])
        if o == 0:
            continue
        tri = (i, j, k) if o > 0 else (i, k, j)
        a, b, c = (P[t] for t in tri)
        inside = 0
        for l in range(n):
            if l not in tri and incircle(a, b, c, P[l]) > 0:
                inside |= 1 << l
        for bits in range(8):
            inc = 0
            for t in range(3):
                if bits >> t & 1:
                    inc |= 1 << tri[t]
            yield inside, tri, inc


def _disk_masks(S: PointSet) -> set[int]:
    P = S.int_coords
    n = len(P)
    if n <= 2:
        return set(range(1, 1 << n))
    if _collinear_all(P):
        order = sorted(range(n), key=lambda i: P[i])
        return {mask_of(order[a:b + 1]) for a in range(n) for b in range(a, n)}
    out = {inside | inc for inside, _, inc in _disk_variants(S)}
    out.discard(0)
    return out


def _hregion_projections(S: PointSet, halfspaces: Sequence[HalfspaceSpec]) -> list[list[Fraction]]:
    return [[h.project(p) for p in S.points] for h in halfspaces]


def _hregion_masks(S: PointSet, halfspaces: Sequence[HalfspaceSpec], min_size: int) -> set[int]:
    n = len(S)
    full = S.full_mask
    options: list[list[int]] = []
    for proj in _hregion_projections(S, halfspaces):
        order = sorted(range(n), key=lambda i: proj[i])
        prefixes = [full]
        m = 0
        k = 0
        while k < n:
            v = proj[order[k]]
            while k < n and proj[order[k]] == v:
                m |= 1 << order[k]
                k += 1
            prefixes.append(m)
        options.append(prefixes)
    out: set[int] = set()
    lo = max(min_size, 1)

    def recurse(level: int, acc: int) -> None:
        if acc.bit_count() < lo:
            return
        if level == len(options):
            out.add(acc)
            return
        for m in options[level]:
            recurse(level + 1, acc & m)

    recurse(0, full)
    return out


def canonical_hyperedges(S: PointSet, family: FamilyKind, *, min_size: int = 1,
                         max_size: int | None = None, check: bool = True,
                         max_halfspaces: int = DEFAULT_MAX_HALFSPACES,
                         max_hregion_points: int = DEFAULT_MAX_HREGION_POINTS) -> Hypergraph:
    """The hypergraph ``{S & F : F in family, S & F nonempty}``, optionally size-filtered."""
    family.check_dim(S.dim)
    if check:
        report = check_general_position(S, family)
        if not report.ok:
            raise GeneralPositionError(
                f"point set is not in general position for {family}: {report.violations[0]}",
                report.violations)
    n = len(S)
    kind = family.kind
    if n == 0:
        return Hypergraph(0, frozenset())
    if kind == "axisrect":
        masks = _box_masks(S, min_size, max_size)
    elif kind == "boxd":
        masks = _box_masks(S, min_size, max_size)
    elif kind == "bottomless":
        masks = _bottomless_masks(S, min_size, max_size)
    elif kind == "halfplane":
        masks = _halfplane_masks(S)
    elif kind == "disk":
        masks = _disk_masks(S)
    elif kind == "hregion":
        if len(family.halfspaces) > max_halfspaces:
            raise ValueError(
                f"hregion with {len(family.halfspaces)} halfspaces exceeds the limit of {max_halfspaces}")
        if n > max_hregion_points:
            raise ValueError(f"hregion enumeration is capped at {max_hregion_points} points, got {n}")
        masks = _hregion_masks(S, family.halfspaces, min_size)
    else:  # pragma: no cover - FamilyKind validates kinds
        raise ValueError(kind)
    if min_size > 1 or max_size is not None:
        masks = {m for m in masks
                 if m.bit_count() >= min_size and (max_size is None or m.bit_count() <= max_size)}
    return Hypergraph(n, frozenset(masks))


def delaunay_edges(S: PointSet, family: FamilyKind, **kw) -> frozenset[tuple[int, int]]:
    """Pairs ``{i, j}`` that some region of the family cuts out exactly."""
    H = canonical_hyperedges(S, family, min_size=2, max_size=2, **kw)
    return frozenset(members(m) for m in H.masks)


# ---------------------------------------------------------------------------
# Witness regions: explicit closed regions realizing each canonical hyperedge.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HalfplaneRegion:
    normal: tuple[Fraction, Fraction]
    offset: Fraction

    def contains(self, p) -> bool:
        return self.normal[0] * p[0] + self.normal[1] * p[1] <= self.offset


@dataclass(frozen=True)
class DiskRegion:
    center: tuple[Fraction, Fraction]
    radius_sq: Fraction

    def contains(self, p) -> bool:
        dx = p[0] - self.center[0]
        dy = p[1] - self.center[1]
        return dx * dx + dy * dy <= self.radius_sq


@dataclass(frozen=True)
class BottomlessRegion:
    left: Fraction
    right: Fraction
    top: Fraction

    def contains(self, p) -> bool:
        return self.left <= p[0] <= self.right and p[1] <= self.top


@dataclass(frozen=True)
class HRegionWitness:
    constraints: tuple[tuple[HalfspaceSpec, Fraction], ...]

    def contains(self, p) -> bool:
        return all(h.project(p) <= beta for h, beta in self.constraints)


def _affine_through(points, values):
    """Affine ``g(x) = w . x + c`` with ``g(points[k]) = values[k]`` for three non-collinear points."""
    (x1, y1), (x2, y2), (x3, y3) = points
    v1, v2, v3 = values
    det = x1 * (y2 - y3) - y1 * (x2 - x3) + (x2 * y3 - x3 * y2)
    wx = (v1 * (y2 - y3) - y1 * (v2 - v3) + (v2 * y3 - v3 * y2)) / det
    wy = (x1 * (v2 - v3) - v1 * (x2 - x3) + (x2 * v3 - x3 * v2)) / det
    c = (x1 * (y2 * v3 - y3 * v2) - y1 * (x2 * v3 - x3 * v2) + v1 * (x2 * y3 - x3 * y2)) / det
    return (wx, wy), c


def _perturbed(base, S: PointSet, touched: Sequence[int], signs: Sequence[int]):
    """``base + delta * g`` where g has sign ``signs[k]`` at point ``touched[k]``.

    ``base`` vanishes on the touched points and is nonzero elsewhere; delta is
    small enough that every other point keeps the sign of ``base``.
    """
    pts = S.points
    if len(touched) == 2:
        pi, pj = pts[touched[0]], pts[touched[1]]
        d = (pj[0] - pi[0], pj[1] - pi[1])
        dd = d[0] * d[0] + d[1] * d[1]
        si, sj = signs

        def g(x):
            t = ((x[0] - pi[0]) * d[0] + (x[1] - pi[1]) * d[1]) / dd
            return si + (sj - si) * t
    else:
        w, c = _affine_through([pts[t] for t in touched], list(signs))

        def g(x):
            return w[0] * x[0] + w[1] * x[1] + c

    delta = Fraction(1)
    for k, p in enumerate(pts):
        if k in touched:
            continue
        b = base(p)
        delta = min(delta, abs(b) / (2 * (abs(g(p)) + 1)))
    return lambda x: base(x) + delta * g(x)


def _coefficients_affine(f):
    c0 = f((0, 0))
    return (f((1, 0)) - c0, f((0, 1)) - c0), c0


def _coefficients_quadratic(f):
    z = f((0, 0))
    px, mx = f((1, 0)), f((-1, 0))
    py, my = f((0, 1)), f((0, -1))
    alpha = (px + mx) / 2 - z
    return alpha, (px - mx) / 2, (py - my) / 2, z


def canonical_regions(S: PointSet, family: FamilyKind) -> Iterator[tuple[int, object]]:
    """Yield ``(mask, region)`` where ``region.contains`` cuts exactly ``mask`` out of ``S``."""
    kind = family.kind
    pts = S.points
    n = len(pts)
    if kind in ("axisrect", "boxd", "bottomless", "hregion"):
        for m in sorted(canonical_hyperedges(S, family).masks):
            sub = [pts[i] for i in members(m)]
            if kind == "bottomless":
                yield m, BottomlessRegion(min(p[0] for p in sub), max(p[0] for p in sub),
                                          max(p[1] for p in sub))
            elif kind == "hregion":
                yield m, HRegionWitness(tuple(
                    (h, max(h.project(p) for p in sub)) for h in family.halfspaces))
            else:
                yield m, Box(tuple(min(c) for c in zip(*sub)), tuple(max(c) for c in zip(*sub)))
        return
    F = [tuple(p) for p in pts]
    if kind == "halfplane":
        if n == 1:
            yield 1, HalfplaneRegion((Fraction(1), Fraction(0)), F[0][0])
            return
        seen: set[int] = set()
        for left, (i, j), inc in _halfplane_variants(S):
            m = left | inc
            if m == 0 or m in seen:
                continue
            seen.add(m)
            pi, pj = F[i], F[j]

            def line(x, pi=pi, pj=pj):
                return (pj[0] - pi[0]) * (x[1] - pi[1]) - (pj[1] - pi[1]) * (x[0] - pi[0])

            signs = (1 if inc >> i & 1 else -1, 1 if inc >> j & 1 else -1)
            phi = _perturbed(line, S, (i, j), signs)
            w, c0 = _coefficients_affine(phi)
            yield m, HalfplaneRegion((-w[0], -w[1]), c0)
        return
    if kind == "disk":
        yield from _disk_regions(S, F)
        return
    raise ValueError(kind)


def _disk_regions(S: PointSet, F) -> Iterator[tuple[int, DiskRegion]]:
    n = len(F)

    def sq(a, b):
        return (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2

    def mid(a, b):
        return ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)

    if n <= 2:
        for i in range(n):
            r = min((sq(F[i], F[j]) for j in range(n) if j != i), default=Fraction(4)) / 4
            yield 1 << i, DiskRegion(F[i], r)
        if n == 2:
            yield 3, DiskRegion(mid(F[0], F[1]), sq(F[0], F[1]) / 4)
        return
    if _collinear_all(S.int_coords):
        order = sorted(range(n), key=lambda i: F[i])
        for a in range(n):
            for b in range(a, n):
                lo, hi = F[order[a]], F[order[b]]
                if a == b:
                    r = min(sq(lo, F[j]) for j in range(n) if j != order[a]) / 4
                    yield 1 << order[a], DiskRegion(lo, r)
                else:
                    yield mask_of(order[a:b + 1]), DiskRegion(mid(lo, hi), sq(lo, hi) / 4)
        return
    seen: set[int] = set()
    for inside, tri, inc in _disk_variants(S):
        m = inside | inc
        if m == 0 or m in seen:
            continue
        seen.add(m)
        a, b, c = (F[t] for t in tri)

        def circ(x, a=a, b=b, c=c):
            return incircle(a, b, c, x)

        signs = [1 if inc >> t & 1 else -1 for t in tri]
        phi = _perturbed(circ, S, tri, signs)
        alpha, beta, gamma, z = _coefficients_quadratic(phi)
        cx, cy = -beta / (2 * alpha), -gamma / (2 * alpha)
        yield m, DiskRegion((cx, cy), cx * cx + cy * cy - z / alpha)


def axis_rect_hyperedges_bruteforce(S: PointSet) -> Hypergraph:
    """Second, independent rectangle enumerator over all corner-point quadruples (O(n^5))."""
    if S.dim != 2:
        raise DimensionError("rectangles need planar points")
    P = S.int_coords
    n = len(P)
    out: set[int] = set()
    for l, r, b, t in product(range(n), repeat=4):
        x0, x1, y0, y1 = P[l][0], P[r][0], P[b][1], P[t][1]
        if x0 > x1 or y0 > y1:
            continue
        m = 0
        for i, (x, y) in enumerate(P):
            if x0 <= x <= x1 and y0 <= y <= y1:
                m |= 1 << i
        if m:
            out.add(m)
    return Hypergraph(n, frozenset(out))


# ---------------------------------------------------------------------------

def is_shrinkable(H: Hypergraph) -> tuple[bool, tuple[tuple[int, ...], int] | None]:
    """Check that every hyperedge of size >= 3 can drop one point while keeping any given point.

    Returns ``(True, None)`` or ``(False, (hyperedge, point))`` for the first
    violation in canonical order.
    """
    masks = H.masks
    failures = []
    for e in masks:
        if e.bit_count() < 3:
            continue
        pts = members(e)
        drops = [q for q in pts if (e ^ (1 << q)) in masks]
        if not drops:
            failures.append((pts, pts[0]))
            continue
        if len(drops) == 1:
            # the only droppable point cannot be the one we must keep
            failures.append((pts, drops[0]))
    if not failures:
        return True, None
    return False, min(failures)


def h_region_reduction(S: PointSet, H: Sequence[HalfspaceSpec]) -> PointSet:
    """Map each point ``x`` to ``(A_1 . x, ..., A_h . x)``."""
    H = [h if isinstance(h, HalfspaceSpec) else HalfspaceSpec(tuple(h)) for h in H]
    if not H:
        raise ValueError("need at least one halfspace")
    for h in H:
        if h.dim != S.dim:
            raise DimensionError(f"halfspace of dimension {h.dim} for points of dimension {S.dim}")
    return PointSet(tuple(tuple(h.project(p) for h in H) for p in S.points), len(H))
