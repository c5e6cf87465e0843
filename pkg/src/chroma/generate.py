"""Seeded point-set generators and frozen fixtures."""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .geometry import PointSet, check_general_position, convex_hull
from .kinds import AXIS_RECT, FamilyKind

# found by find_bottomless_counterexample on the 7x7 grid and frozen here
BOTTOMLESS_WITNESS = ((0, 0), (1, 1), (2, 4), (3, 2), (4, 3))

MAX_ATTEMPTS = 1000


def random_points(n: int, seed: int, dim: int = 2, family: FamilyKind = AXIS_RECT,
                  span: int | None = None) -> PointSet:
    """``n`` integer points with distinct coordinates per axis, in general position for ``family``."""
    if n < 1:
        raise ValueError("need at least one point")
    rng = random.Random(seed)
    span = span or max(1000, 50 * n)
    for _ in range(MAX_ATTEMPTS):
        axes = [rng.sample(range(span), n) for _ in range(dim)]
        S = PointSet(tuple(zip(*axes)), dim)
        if check_general_position(S, family).ok:
            return S
    raise ValueError(f"no general-position sample for {family} after {MAX_ATTEMPTS} attempts")


def grid_points(n: int) -> PointSet:
    """The first ``n`` points of a square grid, row by row (deliberately degenerate)."""
    if n < 1:
        raise ValueError("need at least one point")
    side = math.isqrt(n - 1) + 1
    return PointSet(tuple((i % side, i // side) for i in range(n)), 2)


def convex_points(n: int, radius: int = 10 ** 6) -> PointSet:
    """A regular ``n``-gon rounded to integers, counter-clockwise from angle zero."""
    if n < 1:
        raise ValueError("need at least one point")
    pts = tuple((round(radius * math.cos(2 * math.pi * i / n)),
                 round(radius * math.sin(2 * math.pi * i / n))) for i in range(n))
    S = PointSet(pts, 2)
    if n >= 3 and len(convex_hull(S)) != n:
        raise ValueError(f"rounding broke convex position for n={n}; raise the radius")
    return S


def odd_convex_points(n: int) -> PointSet:
    if n < 3 or n % 2 == 0:
        raise ValueError("the halfplane tightness set needs an odd n >= 3")
    return convex_points(n)


def bottomless_witness() -> PointSet:
    return PointSet(tuple((Fraction(x), Fraction(y)) for x, y in BOTTOMLESS_WITNESS), 2)
