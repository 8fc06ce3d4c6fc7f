"""Vertex enumeration for integer zonotopes in fixed small dimension.

A vertex of zone(D) is a signed sum of the generators, one sign pattern
per full-dimensional cell of the central arrangement of the hyperplanes
orthogonal to the generators.  The enumeration therefore walks cells,
not the exponentially many sign vectors: parallel generators are merged
into one aggregate per primitive direction, the problem is restricted to
the integer span of the aggregates, and one exact integer witness
direction is produced per cell (angular sweep in rank <= 2, incremental
insertion with an exact feasibility probe above).  The witness doubles
as the separation certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

from .config import DEFAULT_CONFIG, RunConfig
from .errors import DimensionMismatchError, ResourceLimitError
from .intlinalg import IntMat, dot, rank
from .ratlp import find_interior_direction


@dataclass(frozen=True)
class ZonotopeVertex:
    """A vertex, an integer direction uniquely maximized there, and the
    generator signs realizing it (zero generators get +1)."""

    vertex: tuple
    certificate: tuple
    signs: tuple


def _primitive(e: Sequence[int]):
    """Canonical primitive direction p (first nonzero entry positive) and
    the integer alpha with e = alpha * p.  Returns (None, 0) for zero."""
    g = 0
    for a in e:
        g = gcd(g, abs(a))
    if g == 0:
        return None, 0
    p = tuple(a // g for a in e)
    for a in p:
        if a:
            if a < 0:
                return tuple(-b for b in p), -g
            return p, g
    raise AssertionError


def _independent_subset(vectors: list) -> list:
    """Greedy maximal linearly independent subset, in input order."""
    chosen: list = []
    for v in vectors:
        trial = chosen + [v]
        if rank(IntMat.from_rows(trial, cols=len(v))) == len(trial):
            chosen.append(v)
    return chosen


def _cells_rank1(reduced: list) -> list:
    # single merged generator: two half-lines
    (e,) = reduced
    return [((1,), e), ((-1,), tuple(-a for a in e))]


def _cells_rank2(reduced: list) -> list:
    """Cells of a central line arrangement in the plane: the angular
    sectors between consecutive lines; a strict witness is the sum of the
    two bounding rays."""
    rays = []
    for (a, b) in reduced:
        rays.append((-b, a))
        rays.append((b, -a))
    # dedupe parallel rays, then sort counterclockwise starting at angle 0
    def half(r):
        x, y = r
        return 0 if (y > 0 or (y == 0 and x > 0)) else 1

    def cmp_key(r):
        return (half(r),)

    uniq = []
    for r in rays:
        if not any(x * r[1] == y * r[0] and x * r[0] + y * r[1] > 0
                   for (x, y) in uniq):
            uniq.append(r)
    import functools

    def cmp(r1, r2):
        h1, h2 = half(r1), half(r2)
        if h1 != h2:
            return -1 if h1 < h2 else 1
        cross = r1[0] * r2[1] - r1[1] * r2[0]
        return 0 if cross == 0 else (-1 if cross > 0 else 1)

    uniq.sort(key=functools.cmp_to_key(cmp))
    if len(uniq) == 2:
        # one line only: witnesses are the two normals
        e = reduced[0]
        cells = []
        for w in (e, tuple(-a for a in e)):
            cells.append((tuple(_sgn(dot(w, f)) for f in reduced), w))
        return cells
    cells = []
    m = len(uniq)
    for i in range(m):
        r1, r2 = uniq[i], uniq[(i + 1) % m]
        w = (r1[0] + r2[0], r1[1] + r2[1])
        sigma = tuple(_sgn(dot(w, f)) for f in reduced)
        assert 0 not in sigma
        cells.append((sigma, w))
    return cells


def _sgn(a: int) -> int:
    return (a > 0) - (a < 0)


def _cells_general(reduced: list, dim: int) -> list:
    """Incremental cell enumeration: insert one hyperplane at a time,
    keeping a strict integer witness per cell; the opposite side of a new
    hyperplane is probed with the exact feasibility LP."""
    first = reduced[0]
    cells = [((1,), first), ((-1,), tuple(-a for a in first))]
    for idx in range(1, len(reduced)):
        e = reduced[idx]
        nxt = []
        for sigma, y in cells:
            s = _sgn(dot(y, e))
            prior = [tuple(sg * c for c in reduced[i])
                     for i, sg in enumerate(sigma)]
            if s != 0:
                nxt.append((sigma + (s,), y))
                probe_signs = (-s,)
            else:
                probe_signs = (1, -1)
            for ps in probe_signs:
                rows = prior + [tuple(ps * c for c in e)]
                w = find_interior_direction(rows, dim)
                if w is not None:
                    nxt.append((sigma + (ps,), w))
        cells = nxt
    return cells


def zonotope_vertices(generators: Sequence[Sequence[int]],
                      dim: Optional[int] = None,
                      config: RunConfig = DEFAULT_CONFIG) -> list:
    """Every vertex of the zonotope of the generators, each with an
    integer certificate uniquely maximized there, sorted by vertex.

    Zero, parallel and repeated generators are fine.  The dimension guard
    rejects dim > config.dim_cap.
    """
    gens = [tuple(int(a) for a in e) for e in generators]
    if gens:
        dims = {len(e) for e in gens}
        if len(dims) != 1:
            raise DimensionMismatchError("generators of mixed dimensions")
        if dim is not None and dim != dims.pop():
            raise DimensionMismatchError("dim does not match the generators")
        dim = len(gens[0])
    elif dim is None:
        raise ValueError("dim required when the generator list is empty")
    if dim > config.dim_cap:
        raise ResourceLimitError(
            f"zonotope dimension {dim} exceeds cap {config.dim_cap}")

    # merge parallel generators into one aggregate per primitive direction
    classes: dict = {}
    memberships = []  # per generator: (primitive, alpha) or None for zero
    for e in gens:
        p, alpha = _primitive(e)
        memberships.append((p, alpha))
        if p is not None:
            classes[p] = classes.get(p, 0) + abs(alpha)
    zero = (0,) * dim
    if not classes:
        return [ZonotopeVertex(zero, zero, (1,) * len(gens))]
    prims = sorted(classes)
    aggregates = [tuple(classes[p] * a for a in p) for p in prims]

    # restrict to the span: aggregates expressed against an integer basis
    span_basis = _independent_subset(aggregates)
    d_eff = len(span_basis)
    reduced = [tuple(dot(bcol, agg) for bcol in span_basis)
               for agg in aggregates]

    if d_eff == 1:
        cells = _cells_rank1(reduced)
    elif d_eff == 2:
        cells = _cells_rank2(reduced)
    else:
        cells = _cells_general(reduced, d_eff)

    out = []
    for sigma, y in cells:
        cert = tuple(sum(yi * bcol[j] for yi, bcol in zip(y, span_basis))
                     for j in range(dim))
        vertex = [0] * dim
        for sg, agg in zip(sigma, aggregates):
            for j, a in enumerate(agg):
                vertex[j] += sg * a
        sign_by_prim = dict(zip(prims, sigma))
        signs = tuple(1 if p is None else sign_by_prim[p] * _sgn(alpha)
                      for p, alpha in memberships)
        out.append(ZonotopeVertex(tuple(vertex), cert, signs))
    out.sort(key=lambda zv: zv.vertex)
    assert len({zv.vertex for zv in out}) == len(out)
    return out
