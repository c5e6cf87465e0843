"""Exact geometric primitives over rational point sets.

All predicates run on integers: a point set is rescaled once by the common
denominator of its coordinates, which preserves every orientation, in-circle
and comparison sign used below.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, cmp_to_key
from itertools import combinations
from math import lcm
from typing import Iterable, Sequence

from .errors import DimensionError, DuplicatePointError, ShearError
from .kinds import AXIS_RECT, FamilyKind, as_rational

Point = tuple[Fraction, ...]


def make_point(coords: Iterable) -> Point:
    pt = tuple(as_rational(c) for c in coords)
    if not pt:
        raise DimensionError("a point needs at least one coordinate")
    return pt


@dataclass(frozen=True)
class PointSet:
    points: tuple[Point, ...]
    dim: int | None = None

    def __post_init__(self):
        pts = tuple(make_point(p) for p in self.points)
        dims = {len(p) for p in pts}
        if len(dims) > 1:
            raise DimensionError(f"mixed point dimensions {sorted(dims)}")
        dim = dims.pop() if dims else self.dim
        if dim is None:
            raise DimensionError("an empty point set needs an explicit dimension")
        if self.dim is not None and self.dim != dim:
            raise DimensionError(f"declared dimension {self.dim}, points have {dim}")
        seen: dict[Point, int] = {}
        for i, p in enumerate(pts):
            if p in seen:
                raise DuplicatePointError(f"points {seen[p]} and {i} coincide at {p}")
            seen[p] = i
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "dim", dim)

    @classmethod
    def of(cls, coords: Iterable[Sequence], dim: int | None = None) -> "PointSet":
        return cls(tuple(tuple(c) for c in coords), dim)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def __iter__(self):
        return iter(self.points)

    @cached_property
    def scale(self) -> int:
        return lcm(1, *(c.denominator for p in self.points for c in p))

    @cached_property
    def int_coords(self) -> tuple[tuple[int, ...], ...]:
        s = self.scale
        return tuple(tuple(int(c * s) for c in p) for p in self.points)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.points)) - 1

    def subset(self, mask: int) -> list[int]:
        return [i for i in range(len(self.points)) if mask >> i & 1]


@dataclass(frozen=True)
class Box:
    low: Point
    high: Point

    def __post_init__(self):
        if len(self.low) != len(self.high):
            raise DimensionError("box corners differ in dimension")
        if any(a > b for a, b in zip(self.low, self.high)):
            raise ValueError("box needs low <= high in every coordinate")

    def contains(self, p: Sequence) -> bool:
        return all(a <= c <= b for a, b, c in zip(self.low, self.high, p))


def bounding_box(p: Sequence, q: Sequence) -> Box:
    """Smallest closed axis-parallel box containing ``p`` and ``q``."""
    if len(p) != len(q):
        raise DimensionError(f"points of dimension {len(p)} and {len(q)}")
    p, q = make_point(p), make_point(q)
    return Box(tuple(map(min, p, q)), tuple(map(max, p, q)))


SignSequence = tuple[str, ...]


def directed_type(p: Sequence, q: Sequence) -> SignSequence:
    """Sign pattern of ``q - p``, flipped so that its first sign is ``+``."""
    if len(p) != len(q):
        raise DimensionError(f"points of dimension {len(p)} and {len(q)}")
    diff = [as_rational(b) - as_rational(a) for a, b in zip(p, q)]
    if any(c == 0 for c in diff):
        from .errors import GeneralPositionError
        raise GeneralPositionError(f"points {tuple(p)} and {tuple(q)} share a coordinate")
    if diff[0] < 0:
        diff = [-c for c in diff]
    return tuple("+" if c > 0 else "-" for c in diff)


def orient(a, b, c) -> int:
    """Twice the signed area of triangle abc (positive when counter-clockwise)."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def incircle(a, b, c, d) -> int:
    """Positive iff ``d`` lies strictly inside the circle through counter-clockwise a, b, c."""
    adx, ady = a[0] - d[0], a[1] - d[1]
    bdx, bdy = b[0] - d[0], b[1] - d[1]
    cdx, cdy = c[0] - d[0], c[1] - d[1]
    ad = adx * adx + ady * ady
    bd = bdx * bdx + bdy * bdy
    cd = cdx * cdx + cdy * cdy
    return (adx * (bdy * cd - bd * cdy)
            - ady * (bdx * cd - bd * cdx)
            + ad * (bdx * cdy - bdy * cdx))


def convex_hull(S: PointSet) -> list[int]:
    """Indices of hull vertices, counter-clockwise from the lexicographically smallest point."""
    if S.dim != 2:
        raise DimensionError("convex hull is implemented for planar point sets")
    P = S.int_coords
    order = sorted(range(len(P)), key=lambda i: P[i])
    if len(order) <= 2:
        return order

    def chain(seq):
        out: list[int] = []
        for i in seq:
            while len(out) >= 2 and orient(P[out[-2]], P[out[-1]], P[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(reversed(order))
    hull = lower[:-1] + upper[:-1]
    return hull if len(hull) >= 2 else order[:1] + order[-1:]


def angular_sort(center, others: list[int], P) -> list[int]:
    """Sort ``others`` counter-clockwise around ``center``.

    The directions from ``center`` must span less than a half-turn, which holds
    for neighbours of a convex hull vertex.
    """
    def cmp(i, j):
        o = orient(center, P[i], P[j])
        return -1 if o > 0 else (1 if o < 0 else 0)

    return sorted(others, key=cmp_to_key(cmp))


@dataclass
class GeneralPositionReport:
    family: str
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"family": self.family, "ok": self.ok, "violations": list(self.violations)}


def check_general_position(S: PointSet, family: FamilyKind) -> GeneralPositionReport:
    """List every degeneracy of ``S`` that the enumeration for ``family`` cannot accept."""
    family.check_dim(S.dim)
    report = GeneralPositionReport(str(family))
    v = report.violations
    P = S.int_coords
    n = len(P)
    kind = family.kind

    if kind in ("axisrect", "bottomless", "boxd"):
        axes = "xyzw"
        for ax in range(S.dim):
            name = axes[ax] if ax < len(axes) else f"axis-{ax}"
            for i, j in _ties(P, lambda p, ax=ax: p[ax]):
                v.append(f"shared {name}-coordinate: points {i}, {j}")
    elif kind == "halfplane":
        for i, j, k in combinations(range(n), 3):
            if orient(P[i], P[j], P[k]) == 0:
                v.append(f"collinear triple: points {i}, {j}, {k}")
    elif kind == "disk":
        for quad in combinations(range(n), 4):
            if _cocircular(*(P[i] for i in quad)):
                v.append("cocircular quadruple: points " + ", ".join(map(str, quad)))
    elif kind == "hregion":
        for h, hs in enumerate(family.halfspaces):
            proj = [hs.project(p) for p in S.points]
            for i, j in _ties(proj, lambda x: x, keyed=True):
                v.append(f"points {i}, {j} share a boundary translate of halfspace {h}")
    return report


def _ties(items, key, keyed=False):
    buckets: dict = {}
    for i, it in enumerate(items):
        buckets.setdefault(key(it), []).append(i)
    for idx in buckets.values():
        yield from combinations(idx, 2)


def _cocircular(a, b, c, d) -> bool:
    # Four collinear points lie on no circle; three collinear ones never share a circle with a fourth.
    if orient(a, b, c) == 0:
        return False
    return incircle(a, b, c, d) == 0


def _order_safe_epsilon(pts: Sequence[Point]) -> Fraction:
    """A positive epsilon below which ``x + e*y`` keeps every strict order of ``x``, in both axes."""
    bound = Fraction(1)
    for p, q in combinations(pts, 2):
        for a, b in ((0, 1), (1, 0)):
            dx = abs(p[a] - q[a])
            dy = abs(p[b] - q[b])
            if dx and dy:
                bound = min(bound, dx / dy)
    return bound / 2


SHEAR_SIGNS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def shear_points(S: PointSet, signs=(1, 1), eps: Fraction | None = None) -> PointSet:
    """Apply ``(x, y) -> (x + sx*e*y, y + sy*e*x)`` with an order-preserving ``e``."""
    if S.dim != 2:
        raise DimensionError("the shear acts on planar point sets")
    e = _order_safe_epsilon(S.points) if eps is None else eps
    sx, sy = signs
    return PointSet(tuple((x + sx * e * y, y + sy * e * x) for x, y in S.points))


def shear_general_position(S: PointSet, family: FamilyKind = AXIS_RECT) -> PointSet:
    """Break coordinate ties by an infinitesimal shear without changing the hypergraph.

    The magnitude of the shear is chosen so that every strict coordinate order
    survives and ties resolve exactly as in the limit of a vanishing shear.
    The four sign variants of the shear are tried in a fixed order and the
    first one whose canonical hypergraph matches the input's is returned.
    """
    from .families import canonical_hyperedges

    if S.dim != 2:
        raise DimensionError("the shear acts on planar point sets")
    if family.kind not in ("axisrect", "bottomless"):
        raise ValueError("the shear is defined for rectangle-like families")
    xs = {p[0] for p in S.points}
    ys = {p[1] for p in S.points}
    if len(xs) == len(S) and len(ys) == len(S):
        return S
    before = canonical_hyperedges(S, family, check=False)
    for signs in SHEAR_SIGNS:
        T = shear_points(S, signs)
        if canonical_hyperedges(T, family).masks == before.masks:
            return T
    raise ShearError(
        f"no shear breaks the coordinate ties of this set without changing its {family} hyperedges")
