"""Exact rational linear algebra: eliminations, kernels, solvers."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from sdga import linalg


def random_matrix(rng, rows, cols, span=4):
    return [[Fraction(rng.randint(-span, span)) for _ in range(cols)]
            for _ in range(rows)]


def test_rref_identity():
    reduced, pivots = linalg.rref(linalg.identity(3))
    assert reduced == linalg.identity(3)
    assert pivots == [0, 1, 2]


def test_rank_of_rank_one_matrix():
    mat = [[1, 2, 3], [2, 4, 6], [-1, -2, -3]]
    mat = [[Fraction(x) for x in row] for row in mat]
    assert linalg.rank(mat) == 1


@pytest.mark.parametrize("seed", range(10))
def test_nullspace_annihilates(seed):
    rng = random.Random(seed)
    rows, cols = rng.randint(1, 5), rng.randint(1, 5)
    mat = random_matrix(rng, rows, cols)
    basis = linalg.nullspace(mat, cols)
    assert len(basis) == cols - linalg.rank(mat)
    for vec in basis:
        assert all(x == 0 for x in linalg.mat_vec(mat, vec))


def test_nullspace_of_zero_row_matrix_needs_explicit_columns():
    """A 0 x n matrix has no rows to infer n from; the kernel is everything."""
    basis = linalg.nullspace([], 3)
    assert len(basis) == 3


@pytest.mark.parametrize("seed", range(10))
def test_solve_reproduces_rhs(seed):
    rng = random.Random(100 + seed)
    rows, cols = rng.randint(1, 5), rng.randint(1, 5)
    mat = random_matrix(rng, rows, cols)
    x = [Fraction(rng.randint(-3, 3)) for _ in range(cols)]
    rhs = linalg.mat_vec(mat, x)
    sol, cert = linalg.solve_with_certificate(mat, rhs)
    assert cert["consistent"]
    assert linalg.mat_vec(mat, sol) == rhs


def test_solve_certificate_on_inconsistent_system():
    mat = [[Fraction(1), Fraction(1)], [Fraction(2), Fraction(2)]]
    sol, cert = linalg.solve_with_certificate(mat, [Fraction(1), Fraction(3)])
    assert sol is None
    assert cert["consistent"] is False
    assert cert["rank"] < cert["rank_augmented"]


def test_row_span_counts_new_directions():
    span = linalg.RowSpan(3)
    assert span.add([Fraction(1), Fraction(0), Fraction(0)])
    assert not span.add([Fraction(2), Fraction(0), Fraction(0)])
    assert span.add([Fraction(0), Fraction(1), Fraction(1)])
    assert span.dim == 2


def test_quotient_representatives():
    image = [[Fraction(1), Fraction(1), Fraction(0)]]
    kernel = [
        [Fraction(1), Fraction(1), Fraction(0)],
        [Fraction(0), Fraction(0), Fraction(1)],
    ]
    reps = linalg.quotient_representatives(kernel, image, 3)
    assert len(reps) == 1


def test_mat_mul_through_zero_dimension_degenerates():
    """Products through a zero-dimensional middle space lose their shape,
    so comparisons must read missing entries as zeros."""
    a = [[]]          # 1 x 0
    b = []            # 0 x 1
    prod = linalg.mat_mul(a, b)
    assert linalg.mats_agree(prod, [[Fraction(0)]])
    assert linalg.mats_agree(prod, [])
    assert not linalg.mats_agree(prod, [[Fraction(1)]])


@pytest.mark.parametrize("seed", range(5))
def test_mats_agree_is_entrywise_equality(seed):
    rng = random.Random(200 + seed)
    mat = random_matrix(rng, 3, 3)
    assert linalg.mats_agree(mat, [row[:] for row in mat])
    bumped = [row[:] for row in mat]
    bumped[1][2] += 1
    assert not linalg.mats_agree(mat, bumped)
