"""Convex integer maximization via linear-IP oracle calls.

The driver projects the edge-direction set onto the objective space,
enumerates the vertices of the resulting zonotope, lifts each vertex
certificate back to a linear objective, and asks the linear oracle once
per vertex.  A convex comparison picks the winner among the projected
optima; the per-query identity cert.z == lifted.x is asserted on every
call.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .config import DEFAULT_CONFIG, RunConfig
from .errors import DimensionMismatchError, InternalInconsistencyError
from .intlinalg import dot
from .ipsolve import (INFEASIBLE, UNBOUNDED, augment_to_optimum,
                      find_feasible)
from .nfold import NFoldRhs, NFoldStencil, nfold_graver
from .zonotope import zonotope_vertices

OPTIMAL_OUTCOME = "optimal"
INFEASIBLE_OUTCOME = "infeasible"
UNBOUNDED_POLYHEDRON = "unbounded-polyhedron"


@dataclass(frozen=True)
class ObjectiveWeights:
    """The d linear forms w_1..w_d, all of the same length."""

    rows: tuple  # tuple of IntVec

    @classmethod
    def make(cls, rows: Sequence[Sequence[int]]) -> "ObjectiveWeights":
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        if not rows:
            raise ValueError("at least one objective row required")
        if len({len(r) for r in rows}) != 1:
            raise DimensionMismatchError("objective rows of differing lengths")
        return cls(rows)

    @property
    def d(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def project(self, x: Sequence[int]) -> tuple:
        return tuple(dot(w, x) for w in self.rows)


class ConvexObjective:
    """Comparison oracle for a convex function on Z^d.  Built-ins carry an
    exact integer evaluator; custom callables only need the order."""

    def compare_leq(self, y: Sequence[int], z: Sequence[int]) -> bool:
        raise NotImplementedError

    def strictly_better(self, y: Sequence[int], z: Sequence[int]) -> bool:
        """True iff c(y) > c(z)."""
        return not self.compare_leq(y, z)


class _EvaluatedObjective(ConvexObjective):
    def evaluate(self, z: Sequence[int]) -> int:
        raise NotImplementedError

    def compare_leq(self, y, z):
        return self.evaluate(y) <= self.evaluate(z)


@dataclass(frozen=True)
class LinearObjective(_EvaluatedObjective):
    coeffs: tuple

    def evaluate(self, z):
        return dot(self.coeffs, z)


class SquaredNormObjective(_EvaluatedObjective):
    def evaluate(self, z):
        return sum(a * a for a in z)


@dataclass(frozen=True)
class MaxLinearObjective(_EvaluatedObjective):
    """Pointwise maximum of finitely many linear forms; convex."""

    rows: tuple

    def evaluate(self, z):
        return max(dot(row, z) for row in self.rows)


@dataclass(frozen=True)
class NegatedObjective(_EvaluatedObjective):
    """Flips the order of an inner objective, for minimization workflows.
    The caller is responsible for the flipped order still being induced
    by a convex function."""

    inner: _EvaluatedObjective

    def evaluate(self, z):
        return -self.inner.evaluate(z)


@dataclass(frozen=True)
class CallbackObjective(ConvexObjective):
    leq: Callable

    def compare_leq(self, y, z):
        return self.leq(y, z)


@dataclass
class SearchStats:
    """Per-run counters, mainly for the oracle-identity audit."""

    oracle_queries: int = 0
    identity_checks: int = 0
    vertices: int = 0


@dataclass(frozen=True)
class ConvexOutcome:
    status: str
    x: Optional[tuple] = None
    z: Optional[tuple] = None
    stats: Optional[SearchStats] = None

    @property
    def is_optimal(self) -> bool:
        return self.status == OPTIMAL_OUTCOME


def project_directions(directions: Sequence[Sequence[int]],
                       weights: ObjectiveWeights) -> list:
    """Projections (w_1.e, .., w_d.e), zero vectors and duplicates
    removed, sorted for determinism."""
    seen = set()
    for e in directions:
        p = weights.project(e)
        if any(p):
            seen.add(p)
    return sorted(seen)


def lift_normal(g: Sequence[int], weights: ObjectiveWeights) -> tuple:
    """The linear form h with h.x == g.(w_1 x, .., w_d x) for every x."""
    if len(g) != weights.d:
        raise DimensionMismatchError("certificate length != objective count")
    n = weights.n
    return tuple(sum(weights.rows[i][j] * g[i] for i in range(weights.d))
                 for j in range(n))


def convex_maximize(lip: Callable, weights: ObjectiveWeights,
                    directions: Sequence[Sequence[int]],
                    objective: ConvexObjective,
                    config: RunConfig = DEFAULT_CONFIG) -> ConvexOutcome:
    """Reduce the convex program to one linear oracle call per zonotope
    vertex.

    `lip` maps a linear objective vector to a SolveOutcome.  `directions`
    must cover all edge-directions of the feasible hull (the n-fold entry
    point supplies a Graver basis).  Any unbounded oracle reply aborts the
    whole search: the polyhedron is unbounded and oracle-presented convex
    functions are hopeless there.
    """
    stats = SearchStats()
    n = weights.n
    probe = lip((0,) * n)
    stats.oracle_queries += 1
    if probe.status == INFEASIBLE:
        return ConvexOutcome(INFEASIBLE_OUTCOME, stats=stats)
    D = project_directions(directions, weights)
    verts = zonotope_vertices(D, dim=weights.d, config=config)
    stats.vertices = len(verts)

    def query(vert):
        h = lift_normal(vert.certificate, weights)
        return lip(h)

    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            replies = list(pool.map(query, verts))
    else:
        replies = [query(v) for v in verts]
    stats.oracle_queries += len(replies)

    best = None  # (z, x)
    for vert, reply in zip(verts, replies):
        if reply.status == UNBOUNDED:
            return ConvexOutcome(UNBOUNDED_POLYHEDRON, stats=stats)
        if reply.status == INFEASIBLE:
            raise InternalInconsistencyError(
                "oracle reported infeasible after a feasible probe")
        x = reply.x
        z = weights.project(x)
        h = lift_normal(vert.certificate, weights)
        if dot(vert.certificate, z) != dot(h, x):
            raise InternalInconsistencyError(
                "projection identity cert.z != lifted.x failed")
        stats.identity_checks += 1
        if best is None:
            best = (z, x)
            continue
        if objective.strictly_better(z, best[0]):
            best = (z, x)
        elif objective.compare_leq(best[0], z) and (z, x) < best:
            # c-equal candidates: smallest (z, x) lexicographically wins
            best = (z, x)
    if best is None:
        raise InternalInconsistencyError("no zonotope vertices enumerated")
    return ConvexOutcome(OPTIMAL_OUTCOME, x=best[1], z=best[0], stats=stats)


def solve_convex_nfold(stencil: NFoldStencil, n: int,
                       weights: ObjectiveWeights, b: NFoldRhs,
                       objective: ConvexObjective,
                       config: RunConfig = DEFAULT_CONFIG) -> ConvexOutcome:
    """Full pipeline: Graver basis of the n-fold matrix as edge-direction
    cover, augmentation as the linear oracle, then the zonotope driver."""
    if weights.n != n * stencil.t:
        raise DimensionMismatchError(
            f"objective rows of length {weights.n}, system has {n * stencil.t} variables")
    basis = nfold_graver(stencil, n, config)
    feas = find_feasible(stencil, n, b, config, basis=basis)
    if feas.status == INFEASIBLE:
        return ConvexOutcome(INFEASIBLE_OUTCOME)
    x0 = feas.x

    def lip(w):
        return augment_to_optimum(x0, basis, w)

    return convex_maximize(lip, weights, basis.elements, objective, config)
