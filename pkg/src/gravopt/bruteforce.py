"""Independent desk-scale oracles: exhaustive lattice enumeration,
exhaustive convex maximization, 2-D hull edge extraction.

These deliberately share no code path with the main pipeline; the verify
command and the test suite compare the two.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

import numpy as np

from .convexopt import ConvexObjective, ObjectiveWeights
from .errors import DimensionMismatchError, ResourceLimitError
from .intlinalg import IntMat, mat_vec

_CHUNK = 65536


@dataclass(frozen=True)
class EnumBudget:
    max_points: int = 1_000_000
    bounds: Optional[tuple] = None  # per-variable upper bounds, x_j in [0, bound_j]

    def __post_init__(self):
        if self.max_points <= 0:
            raise ValueError("max_points must be positive")
        if self.bounds is not None and any(b < 0 for b in self.bounds):
            raise ValueError("bounds must be nonnegative")


def enumerate_feasible(A: IntMat, b: Sequence[int],
                       budget: EnumBudget = EnumBudget()) -> list:
    """All x in the budget box with Ax = b, x >= 0, lexicographic order.

    Default per-variable bound is max|b_i|, which is valid for the
    nonnegative margin-style systems in scope (each variable appears with
    coefficient one in some margin equation); pass explicit bounds for
    anything else.
    """
    if len(b) != A.rows:
        raise DimensionMismatchError("rhs length != row count")
    n = A.cols
    bounds = budget.bounds
    if bounds is None:
        cap = max((abs(v) for v in b), default=0)
        bounds = (cap,) * n
    if len(bounds) != n:
        raise DimensionMismatchError("bounds length != column count")
    total = 1
    for bound in bounds:
        total *= bound + 1
        if total > budget.max_points:
            raise ResourceLimitError(
                f"box of {total}+ points exceeds budget {budget.max_points}")
    big = max([1] + [abs(v) for row in A.data for v in row])
    use_numpy = A.rows > 0 and big * (sum(bounds) + 1) < 2 ** 60
    out = []
    if use_numpy:
        mat = np.array(A.data, dtype=np.int64)
        target = np.array(list(b), dtype=np.int64)
        grid = itertools.product(*(range(bound + 1) for bound in bounds))
        while True:
            chunk = list(itertools.islice(grid, _CHUNK))
            if not chunk:
                break
            pts = np.array(chunk, dtype=np.int64)
            mask = (pts @ mat.T == target).all(axis=1)
            out.extend(tuple(int(v) for v in row) for row in pts[mask])
    else:
        bb = tuple(b)
        for x in itertools.product(*(range(bound + 1) for bound in bounds)):
            if mat_vec(A, x) == bb:
                out.append(x)
    return out


def brute_convex_max(points: Sequence[Sequence[int]],
                     weights: ObjectiveWeights,
                     objective: ConvexObjective):
    """Exhaustive argmax of the composed objective, with the pipeline's
    tie-break (smallest projected point, then smallest solution)."""
    if not points:
        raise ValueError("empty point list")
    best = None  # (z, x)
    for x in points:
        x = tuple(x)
        z = weights.project(x)
        if best is None or objective.strictly_better(z, best[0]) or \
                (objective.compare_leq(best[0], z) and (z, x) < best):
            best = (z, x)
    return best[1], best[0]


def _primitive_direction(v: tuple) -> tuple:
    g = gcd(abs(v[0]), abs(v[1]))
    p = (v[0] // g, v[1] // g)
    if p[0] < 0 or (p[0] == 0 and p[1] < 0):
        p = (-p[0], -p[1])
    return p


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def hull_edges_2d(points: Sequence[Sequence[int]]) -> list:
    """Primitive edge directions of the 2-D convex hull, exact arithmetic.

    Collinear input yields the single direction; fewer than two distinct
    points yield nothing.
    """
    pts = sorted({(int(p[0]), int(p[1])) for p in points})
    if len(pts) < 2:
        return []
    if any(len(p) != 2 for p in points):
        raise DimensionMismatchError("hull_edges_2d needs 2-D points")
    # Andrew monotone chain
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:
        # all collinear: single direction from the sorted extremes
        return [_primitive_direction((pts[-1][0] - pts[0][0],
                                      pts[-1][1] - pts[0][1]))]
    dirs = set()
    for a, b in zip(hull, hull[1:] + hull[:1]):
        dirs.add(_primitive_direction((b[0] - a[0], b[1] - a[1])))
    return sorted(dirs)
