"""Conformal order, Graver bases by completion, conformal decomposition.

The basis of a matrix A is the set of conformally-minimal nonzero integer
vectors in ker(A).  It is computed by a Pottier-style normal-form
completion: seed with the signed lattice kernel basis, close under pair
sums reduced to conformal normal form, then filter to minimal elements.
A brute-force box enumeration of the same set doubles as the test oracle.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import DEFAULT_CONFIG, RunConfig
from .errors import (DimensionMismatchError, InternalInconsistencyError,
                     ResourceLimitError)
from .intlinalg import IntMat, IntVec, lattice_kernel_basis, vec_sub


def conformal_leq(u: Sequence[int], v: Sequence[int]) -> bool:
    """True iff u and v lie in the same closed orthant and |u| <= |v|
    entrywise.  The zero vector is below everything."""
    if len(u) != len(v):
        raise DimensionMismatchError(
            f"conformal comparison of lengths {len(u)} and {len(v)}")
    for a, b in zip(u, v):
        if a * b < 0 or abs(a) > abs(b):
            return False
    return True


def _first_nonzero_positive(v: Sequence[int]) -> bool:
    for a in v:
        if a:
            return a > 0
    return False


@dataclass(frozen=True)
class GraverBasis:
    """Sign-symmetric set of conformally minimal kernel vectors of `source`.

    `elements` holds the full +/- set in lexicographic order (the canonical
    order used for every deterministic tie-break downstream).
    """

    elements: tuple  # tuple of IntVec, lex sorted, closed under negation
    source: IntMat

    @property
    def n(self) -> int:
        return self.source.cols

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, v) -> bool:
        return tuple(v) in set(self.elements)

    def canonical_half(self) -> tuple:
        """One representative per +/- pair: first nonzero entry positive,
        lexicographically sorted.  This is the serialization order."""
        return tuple(v for v in self.elements if _first_nonzero_positive(v))

    @functools.cached_property
    def supports(self) -> tuple:
        """Per element, the (index, value) pairs of its nonzero entries.
        N-fold elements are very sparse; the augmentation inner loops run
        over these instead of the full vectors."""
        return tuple(tuple((j, a) for j, a in enumerate(g) if a)
                     for g in self.elements)


def _normal_form(v: IntVec, basis: list) -> IntVec:
    """Subtract conformally-smaller basis elements until none applies."""
    changed = True
    while changed and any(v):
        changed = False
        for g in basis:
            if conformal_leq(g, v):
                v = vec_sub(v, g)
                changed = True
                if not any(v):
                    return v
    return v


def _minimal_filter(vectors) -> list:
    """Keep the conformally minimal vectors.  Processing by ascending
    1-norm makes a single pass sufficient: any strict minorant has a
    strictly smaller 1-norm."""
    kept: list = []
    for v in sorted(set(vectors), key=lambda w: (sum(abs(a) for a in w), w)):
        if not any(conformal_leq(h, v) for h in kept):
            kept.append(v)
    return kept


def graver_basis(A: IntMat, config: RunConfig = DEFAULT_CONFIG) -> GraverBasis:
    """Completion procedure for the full basis of A.

    Raises ResourceLimitError when the intermediate set would exceed
    config.basis_cap; never truncates silently.
    """
    kernel = lattice_kernel_basis(A)
    if not kernel:
        return GraverBasis((), A)
    basis: list = []
    for k in kernel:
        for s in (k, tuple(-a for a in k)):
            r = _normal_form(s, basis)
            if any(r):
                basis.append(r)
    pairs = [(i, j) for i in range(len(basis)) for j in range(i, len(basis))]
    head = 0
    while head < len(pairs):
        i, j = pairs[head]
        head += 1
        s = tuple(a + b for a, b in zip(basis[i], basis[j]))
        if not any(s):
            continue
        r = _normal_form(s, basis)
        if not any(r):
            continue
        for new in (r, tuple(-a for a in r)):
            idx = len(basis)
            basis.append(new)
            if len(basis) > config.basis_cap:
                raise ResourceLimitError(
                    f"Graver completion exceeded basis cap {config.basis_cap}")
            pairs.extend((k, idx) for k in range(idx + 1))
    minimal = _minimal_filter(basis)
    return GraverBasis(tuple(sorted(minimal)), A)


def conformal_decompose(g: Sequence[int], basis: GraverBasis) -> list:
    """Write g as a sum of basis elements, each conformal to g.

    Greedy in canonical order.  A nonzero remainder with no conformal
    basis element signals a wrong basis and raises.
    """
    remainder = tuple(g)
    if not any(remainder):
        raise ValueError("cannot decompose the zero vector")
    parts = []
    while any(remainder):
        for h in basis.elements:
            if conformal_leq(h, remainder):
                parts.append(h)
                remainder = vec_sub(remainder, h)
                break
        else:
            raise InternalInconsistencyError(
                f"no conformal basis element for remainder {remainder}; "
                "the basis is not complete for its matrix")
    return sorted(parts)


def _box_kernel_points(A: IntMat, box: int, config: RunConfig) -> list:
    """All nonzero points of [-box, box]^n with Ax = 0, via numpy."""
    n = A.cols
    total = (2 * box + 1) ** n
    if total > config.enum_cap:
        raise ResourceLimitError(
            f"box enumeration of {total} points exceeds cap {config.enum_cap}")
    rng = np.arange(-box, box + 1, dtype=np.int64)
    grids = np.meshgrid(*([rng] * n), indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    if A.rows:
        mat = np.array(A.data, dtype=np.int64)
        # int64 is safe at desk scale; verify to be sure
        if abs(mat).max(initial=0) * box * n >= 2 ** 62:
            raise ResourceLimitError("entries too large for the box oracle")
        mask = (pts @ mat.T == 0).all(axis=1)
        pts = pts[mask]
    pts = pts[np.any(pts != 0, axis=1)]
    return [tuple(int(v) for v in row) for row in pts]


def brute_force_graver(A: IntMat, box: int,
                       config: RunConfig = DEFAULT_CONFIG) -> GraverBasis:
    """Test oracle: enumerate kernel points in the box, filter to the
    conformally minimal ones.  Correct whenever every true basis element
    fits in the box."""
    if box <= 0:
        raise ValueError("box must be positive")
    pts = _box_kernel_points(A, box, config)
    minimal = _minimal_filter(pts)
    return GraverBasis(tuple(sorted(minimal)), A)
