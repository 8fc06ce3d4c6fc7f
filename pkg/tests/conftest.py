"""Shared helpers: random instance generators and independent oracles."""

from __future__ import annotations

import itertools
import random

from gravopt.intlinalg import IntMat, dot
from gravopt.ratlp import find_interior_direction


def random_matrix(rng: random.Random, max_rows: int = 3, max_cols: int = 5,
                  lo: int = -3, hi: int = 3) -> IntMat:
    rows = rng.randint(1, max_rows)
    cols = rng.randint(1, max_cols)
    return IntMat(rows, cols,
                  tuple(tuple(rng.randint(lo, hi) for _ in range(cols))
                        for _ in range(rows)))


def is_extreme(p: tuple, pts: list, d: int) -> bool:
    """Exact extremality of p among pts, by cutting planes: grow a small
    set of difference constraints until a strictly separating direction
    survives every point or the constraint LP goes infeasible."""
    others = [q for q in pts if q != p]
    if not others:
        return True
    S = others[:2]
    while True:
        rows = [tuple(a - b for a, b in zip(p, q)) for q in S]
        g = find_interior_direction(rows, d)
        if g is None:
            return False
        gp = dot(g, p)
        viol = next((q for q in others if dot(g, q) >= gp), None)
        if viol is None:
            return True
        S.append(viol)


def hull_vertices_2d(points) -> list:
    """Strict vertices of a planar point set by monotone chain, exact
    integer arithmetic (collinear points are dropped)."""
    pts = sorted(set(map(tuple, points)))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out[:-1]

    hull = chain(pts) + chain(reversed(pts))
    return sorted(set(hull)) if len(hull) > 1 else pts[:1] + pts[-1:]


def enumerate_nfold(stencil, rhs, layer_bounds) -> list:
    """Exhaustive n-fold fiber by per-layer enumeration: all brick
    solutions of A2 x = b_k within the layer bounds, combined across
    layers and filtered by the coupling sums A1."""
    from gravopt.bruteforce import EnumBudget, enumerate_feasible
    from gravopt.intlinalg import mat_vec

    per_layer = [enumerate_feasible(stencil.A2, bk,
                                    EnumBudget(max_points=10 ** 7,
                                               bounds=layer_bounds[k]))
                 for k, bk in enumerate(rhs.layer_rhs)]
    out = []
    for combo in itertools.product(*per_layer):
        sums = [0] * stencil.r
        for brick in combo:
            contrib = mat_vec(stencil.A1, brick)
            sums = [a + c for a, c in zip(sums, contrib)]
        if tuple(sums) == rhs.b0:
            out.append(tuple(a for brick in combo for a in brick))
    out.sort()
    return out


def hull_extreme_points(gens: list) -> list:
    """Vertices of the zonotope by exhaustive sign enumeration followed by
    an exact hull-extremality filter.  Exponential in len(gens)."""
    d = len(gens[0])
    pts = sorted({tuple(sum(s * e[j] for s, e in zip(signs, gens))
                        for j in range(d))
                  for signs in itertools.product((1, -1), repeat=len(gens))})
    return [p for p in pts if is_extreme(p, pts, d)]
