from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from transpoly.errors import ShapeError
from transpoly.exact_linalg import (
    bareiss_determinant,
    feasible_point,
    hermite_basis,
    integer_rank,
    lattice_contains,
    lattice_contains_many,
    nullspace,
    primitive,
)
from transpoly.hilbert_ehrhart import base_lattice
from transpoly.presentation import FamilyParams, family_base


def leibniz(m):
    n = len(m)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        prod = 1
        for r, c in enumerate(perm):
            prod *= m[r][c]
        total += -prod if inv % 2 else prod
    return total


small_ints = st.integers(min_value=-9, max_value=9)


def square(n):
    return st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n)


def test_determinant_examples():
    assert bareiss_determinant([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    assert bareiss_determinant([[2, 1], [1, 2]]) == 3
    assert bareiss_determinant([[0, 1], [1, 0]]) == -1
    assert bareiss_determinant([[1, 2], [2, 4]]) == 0


def test_determinant_rejects_non_square():
    with pytest.raises(ShapeError):
        bareiss_determinant([[1, 2, 3], [4, 5, 6]])


def test_determinant_big_entries_stay_exact():
    big = 10**30
    assert bareiss_determinant([[big, 1], [1, big]]) == big * big - 1


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=5).flatmap(square))
def test_bareiss_matches_leibniz(m):
    assert bareiss_determinant(m) == leibniz(m)


def test_rank_examples():
    assert integer_rank([[0, 0], [0, 0]]) == 0
    assert integer_rank(sorted(family_base(FamilyParams(3, 1, 1)))) == 3
    # J_1..J_i, J_{i+2}..J_n for (7,3,2) lie on the nu hyperplane
    n, i, j = 7, 3, 2
    rows = []
    for k in list(range(1, i + 1)) + list(range(i + 2, n + 1)):
        v = [0] * n
        if k <= i:
            v[k - 1] += n - j
            v[i] += j
        else:
            v[0] += n - j
            v[k - 1] += j
        rows.append(v)
    assert integer_rank(rows) == 6


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=4).flatmap(square))
def test_rank_full_iff_nonzero_det(m):
    assert (integer_rank(m) == len(m)) == (bareiss_determinant(m) != 0)


def test_hermite_examples():
    ident = hermite_basis([(1, 0), (0, 1)])
    assert ident.rows == ((1, 0), (0, 1))
    b = hermite_basis([(2, 0), (0, 2), (1, 1)])
    assert b.rows == ((1, 1), (0, 2))
    assert not lattice_contains(b, (1, 0))
    assert lattice_contains(b, (0, 0))
    assert lattice_contains(b, (3, 5))


def test_family_lattice_is_sum_divisible_by_n():
    lat = base_lattice(family_base(FamilyParams(3, 1, 1)))
    assert lat.rank == 3
    assert abs(lat.determinant()) == 3
    for x in [(1, 1, 1), (3, 0, 0), (-1, 4, 0)]:
        assert lattice_contains(lat, x)
    for x in [(1, 0, 0), (1, 1, 0), (2, 2, 1)]:
        assert not lattice_contains(lat, x)


def test_lattice_dimension_mismatch():
    with pytest.raises(ShapeError):
        lattice_contains(hermite_basis([(1, 0)]), (1, 0, 0))


vectors = st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=1, max_size=5)


@settings(max_examples=60, deadline=None)
@given(vectors, st.lists(small_ints, min_size=3, max_size=3))
def test_hermite_generators_and_combinations_are_members(vecs, coeffs):
    basis = hermite_basis(vecs, dim=3)
    for v in vecs:
        assert lattice_contains(basis, v)
    combo = [sum(c * v[k] for c, v in zip(coeffs, vecs)) for k in range(3)]
    assert lattice_contains(basis, combo)
    # idempotent: the basis rows span the same lattice
    assert hermite_basis(basis.rows, dim=3).rows == basis.rows


@settings(max_examples=40, deadline=None)
@given(vectors, st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=1, max_size=8))
def test_vectorised_membership_agrees(vecs, pts):
    basis = hermite_basis(vecs, dim=3)
    many = lattice_contains_many(basis, np.array(pts, dtype=np.int64))
    assert many.tolist() == [lattice_contains(basis, p) for p in pts]


def test_nullspace_and_primitive():
    ns = nullspace([[1, 1, 1]])
    assert len(ns) == 2
    for v in ns:
        assert sum(v) == 0
    assert primitive([Fraction(2, 3), Fraction(-4, 3), 0]) == (1, -2, 0)


def test_feasible_point():
    # x + y <= 1, x >= 0.5, y >= 0.25 (as -x <= -1/2)
    x = feasible_point([[1, 1], [-1, 0], [0, -1]], [1, Fraction(-1, 2), Fraction(-1, 4)], nvars=2)
    assert x is not None and x[0] + x[1] <= 1 and x[0] >= Fraction(1, 2)
    assert feasible_point([[1, 0], [-1, 0]], [0, -1], nvars=2) is None
    y = feasible_point(a_eq=[[1, 1, 1]], b_eq=[2], nvars=3, nonneg=True)
    assert sum(y) == 2 and min(y) >= 0
