import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_matrix
from gravopt.bruteforce import EnumBudget, enumerate_feasible
from gravopt.errors import ResourceLimitError
from gravopt.graver import (GraverBasis, brute_force_graver,
                            conformal_decompose, conformal_leq, graver_basis)
from gravopt.intlinalg import IntMat, mat_vec, vec_add, vec_sub

small_vecs = st.lists(st.integers(-5, 5), min_size=1, max_size=6).map(tuple)


def test_example_basis_121():
    basis = graver_basis(IntMat(1, 3, ((1, 2, 1),)))
    expected = {(2, -1, 0), (0, -1, 2), (1, 0, -1), (1, -1, 1)}
    assert set(basis) == expected | {tuple(-a for a in v) for v in expected}


def test_example_basis_111():
    basis = graver_basis(IntMat(1, 3, ((1, 1, 1),)))
    expected = {(1, -1, 0), (1, 0, -1), (0, 1, -1)}
    assert set(basis) == expected | {tuple(-a for a in v) for v in expected}


def test_canonical_half_is_deterministic():
    basis = graver_basis(IntMat(1, 3, ((1, 2, 1),)))
    half = basis.canonical_half()
    assert half == tuple(sorted(half))
    assert len(half) * 2 == len(basis)
    for v in half:
        lead = next(a for a in v if a)
        assert lead > 0


@settings(max_examples=200, deadline=None)
@given(small_vecs, small_vecs)
def test_conformal_order_properties(u, v):
    n = min(len(u), len(v))
    u, v = u[:n], v[:n]
    assert conformal_leq(u, u)
    if conformal_leq(u, v) and conformal_leq(v, u):
        assert u == v
    if conformal_leq(u, v):
        # same orthant and componentwise dominated
        assert all(a * b >= 0 and abs(a) <= abs(b) for a, b in zip(u, v))


def test_conformal_order_transitive_sample():
    rng = random.Random(0)
    for _ in range(500):
        n = rng.randint(1, 4)
        u, v, w = (tuple(rng.randint(-3, 3) for _ in range(n))
                   for _ in range(3))
        if conformal_leq(u, v) and conformal_leq(v, w):
            assert conformal_leq(u, w)


def test_oracle_equivalence_sample():
    # the full 200-matrix sweep lives in the acceptance suite
    rng = random.Random(11)
    for _ in range(30):
        A = random_matrix(rng)
        basis = graver_basis(A)
        box = max((abs(a) for v in basis for a in v), default=1)
        if box <= 4:
            oracle = brute_force_graver(A, box)
            assert set(basis) == set(oracle)


def test_every_element_is_kernel_and_minimal():
    rng = random.Random(3)
    for _ in range(20):
        A = random_matrix(rng)
        basis = graver_basis(A)
        elems = set(basis)
        for v in basis:
            assert mat_vec(A, v) == (0,) * A.rows
            assert tuple(-a for a in v) in elems
            for u in basis:
                if u != v:
                    assert not conformal_leq(u, v) or u == v


def test_conformal_decomposition_soundness():
    rng = random.Random(5)
    for _ in range(40):
        A = random_matrix(rng)
        basis = graver_basis(A)
        if not len(basis):
            continue
        elems = list(basis)
        g = (0,) * basis.n
        for _ in range(rng.randint(1, 3)):
            g = vec_add(g, rng.choice(elems))
        if not any(g):
            continue
        parts = conformal_decompose(g, basis)
        total = (0,) * basis.n
        for p in parts:
            assert conformal_leq(p, g)
            assert p in basis
            total = vec_add(total, p)
        assert total == g


def test_edge_direction_coverage_via_feasible_differences():
    # every difference of two feasible points decomposes conformally
    rng = random.Random(9)
    done = 0
    while done < 25:
        A = random_matrix(rng, max_rows=2, max_cols=4, lo=0, hi=3)
        if any(all(v == 0 for v in A.col(j)) for j in range(A.cols)):
            continue  # zero column: unbounded fibers
        x0 = tuple(rng.randint(0, 3) for _ in range(A.cols))
        b = mat_vec(A, x0)
        pts = enumerate_feasible(A, b, EnumBudget(bounds=(6,) * A.cols))
        if len(pts) < 2:
            continue
        basis = graver_basis(A)
        for u, v in itertools.islice(itertools.combinations(pts, 2), 50):
            diff = vec_sub(u, v)
            parts = conformal_decompose(diff, basis)
            assert all(conformal_leq(p, diff) for p in parts)
        done += 1


def test_zero_kernel_matrix_has_empty_basis():
    basis = graver_basis(IntMat.identity(3))
    assert len(basis) == 0
    assert basis.canonical_half() == ()


def test_basis_cap_guard():
    from gravopt.config import RunConfig
    A = IntMat(1, 4, ((1, 2, 3, 4),))
    with pytest.raises(ResourceLimitError):
        graver_basis(A, RunConfig(basis_cap=2))


def test_brute_force_graver_matches_known():
    oracle = brute_force_graver(IntMat(1, 3, ((1, 1, 1),)), box=2)
    expected = {(1, -1, 0), (1, 0, -1), (0, 1, -1)}
    assert set(oracle) == expected | {tuple(-a for a in v) for v in expected}


def test_graver_basis_is_hashable_value_object():
    A = IntMat(1, 3, ((1, 2, 1),))
    assert graver_basis(A) == graver_basis(A)
    assert isinstance(graver_basis(A), GraverBasis)
