"""Independent oracles: decide membership of every subset directly, with no shared code."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import numpy as np
from scipy.optimize import linprog


def subsets(n):
    for mask in range(1, 1 << n):
        yield mask


def _inside(mask, i):
    return mask >> i & 1


def _separable(features, mask):
    """LP: is there (w, c) with w.f <= c - 1 on the mask and >= c + 1 off it."""
    n, dim = features.shape
    rows, rhs = [], []
    for i in range(n):
        sign = 1.0 if _inside(mask, i) else -1.0
        rows.append(np.concatenate([sign * features[i], [-sign]]))
        rhs.append(-1.0)
    res = linprog(np.zeros(dim + 1), A_ub=np.array(rows), b_ub=np.array(rhs),
                  bounds=[(None, None)] * (dim + 1), method="highs")
    return res.status == 0


def halfplane_oracle(points):
    F = np.array([[float(x), float(y)] for x, y in points])
    return {m for m in subsets(len(points)) if _separable(F, m)}


def disk_oracle(points):
    """Lift to the paraboloid; a disk is a lower halfspace with nonnegative quadratic weight."""
    n = len(points)
    F = np.array([[float(x * x + y * y), float(x), float(y)] for x, y in points])
    out = set()
    for m in subsets(n):
        rows, rhs = [], []
        for i in range(n):
            sign = 1.0 if _inside(m, i) else -1.0
            rows.append(np.concatenate([sign * F[i], [-sign]]))
            rhs.append(-1.0)
        res = linprog(np.zeros(4), A_ub=np.array(rows), b_ub=np.array(rhs),
                      bounds=[(0, None), (None, None), (None, None), (None, None)], method="highs")
        if res.status == 0:
            out.add(m)
    return out


def _closure_oracle(points, inside):
    n = len(points)
    out = set()
    for m in subsets(n):
        T = [points[i] for i in range(n) if _inside(m, i)]
        if all(inside(T, points[i]) == bool(_inside(m, i)) for i in range(n)):
            out.add(m)
    return out


def box_oracle(points):
    def inside(T, p):
        return all(min(q[a] for q in T) <= p[a] <= max(q[a] for q in T) for a in range(len(p)))
    return _closure_oracle(points, inside)


def bottomless_oracle(points):
    def inside(T, p):
        return (min(q[0] for q in T) <= p[0] <= max(q[0] for q in T)
                and p[1] <= max(q[1] for q in T))
    return _closure_oracle(points, inside)


def hregion_oracle(points, normals):
    def dot(a, p):
        return sum(Fraction(x) * y for x, y in zip(a, p))

    def inside(T, p):
        return all(dot(a, p) <= max(dot(a, q) for q in T) for a in normals)
    return _closure_oracle(points, inside)


def pairs_of(masks):
    return {tuple(i for i in range(m.bit_length()) if m >> i & 1) for m in masks if m.bit_count() == 2}


def all_tuples(n, t):
    return list(combinations(range(n), t))


def orthant_oracle(points):
    """Subsets cut by lower orthants {y : y_a <= beta_a}, beta ranging over coordinate values and +inf."""
    Y = np.array([[float(c) for c in p] for p in points])
    n, h = Y.shape
    out = set()
    choices = [np.append(np.unique(Y[:, a]), np.inf) for a in range(h)]
    grids = np.meshgrid(*choices, indexing="ij")
    betas = np.stack([g.ravel() for g in grids], axis=1)
    inside = (Y[None, :, :] <= betas[:, None, :]).all(axis=2)
    weights = [1 << i for i in range(n)]
    for row in inside:
        m = sum(w for w, b in zip(weights, row) if b)
        if m:
            out.add(m)
    return out
