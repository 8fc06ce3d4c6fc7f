"""Exact feasibility of strict homogeneous inequality systems.

Given integer rows r_1..r_k, decide whether some y satisfies r_i.y > 0
for all i, and produce an integer witness.  Used to probe cells of a
central hyperplane arrangement.  Implemented as a phase-I simplex over
Fractions with Bland's rule, so it terminates and never rounds.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Optional, Sequence


def find_interior_direction(rows: Sequence[Sequence[int]],
                            dim: int) -> Optional[tuple]:
    """Integer y with row.y >= 1 for every row, or None if the open cone
    {y : row.y > 0 for all rows} is empty (the two are equivalent by
    scaling)."""
    k = len(rows)
    if k == 0:
        return (0,) * dim
    # Standard form: y = u - v, u,v >= 0; row.u - row.v - s_i = 1.
    # Phase-I artificials start as the basis (rhs is +1 throughout).
    ncols = 2 * dim + k
    tab = []
    for i, row in enumerate(rows):
        line = [Fraction(c) for c in row] + [Fraction(-c) for c in row]
        line += [Fraction(-1) if j == i else Fraction(0) for j in range(k)]
        line.append(Fraction(1))  # rhs
        tab.append(line)
    # reduced cost row for min sum(artificials): z_j - c_j = sum of rows
    cost = [sum(tab[i][j] for i in range(k)) for j in range(ncols + 1)]
    basis = [ncols + i for i in range(k)]  # virtual artificial indices
    while True:
        enter = next((j for j in range(ncols) if cost[j] > 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(k):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][ncols] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            # unbounded phase-I cannot happen (objective bounded below by 0)
            raise AssertionError("phase-I simplex unbounded")
        piv = tab[leave][enter]
        tab[leave] = [v / piv for v in tab[leave]]
        for i in range(k):
            if i != leave and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [v - f * p for v, p in zip(tab[i], tab[leave])]
        if cost[enter]:
            f = cost[enter]
            cost = [v - f * p for v, p in zip(cost, tab[leave])]
        basis[leave] = enter
    if cost[ncols] != 0:
        return None  # min sum(artificials) > 0: no solution
    u = [Fraction(0)] * dim
    v = [Fraction(0)] * dim
    for i, b in enumerate(basis):
        if b < dim:
            u[b] = tab[i][ncols]
        elif b < 2 * dim:
            v[b - dim] = tab[i][ncols]
    y = [a - b for a, b in zip(u, v)]
    scale = lcm(*(f.denominator for f in y)) if y else 1
    out = tuple(int(f * scale) for f in y)
    assert all(sum(c * a for c, a in zip(row, out)) >= 1 for row in rows)
    return out
