from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffspace.exactla import (
    DimensionMismatch,
    SparseMatrix,
    Subspace,
    annihilator,
    kernel_basis,
    rank,
    rref,
    subspace_intersection,
    subspace_sum,
)

small = st.integers(-3, 3)


@st.composite
def matrices(draw, max_rows=5, max_cols=6):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    data = draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    return SparseMatrix.dense(data)


@st.composite
def subspaces(draw, dim=5):
    vecs = draw(st.lists(st.lists(small, min_size=dim, max_size=dim), max_size=4))
    return Subspace(dim, [dict(enumerate(v)) for v in vecs])


def test_rank_examples():
    assert rank(SparseMatrix.identity(2)) == 2
    assert rank(SparseMatrix(3, 5)) == 0
    assert rank(SparseMatrix.dense([[1, 2, 3], [2, 4, 6], [0, 1, 1]])) == 2


def test_kernel_examples():
    assert kernel_basis(SparseMatrix.identity(3)).dim == 0
    k = kernel_basis(SparseMatrix.dense([[1, 1]]))
    assert k == Subspace(2, [{0: 1, 1: -1}])


def test_sum_and_intersection_of_axes():
    a = Subspace(2, [{0: 1}])
    b = Subspace(2, [{1: 1}])
    assert subspace_sum(a, b).dim == 2
    assert subspace_intersection(a, b).dim == 0
    assert subspace_sum(a, a) == a == subspace_intersection(a, a)


def test_annihilator_of_diagonal():
    assert annihilator(Subspace(2, [{0: 1, 1: 1}])) == Subspace(2, [{0: 1, 1: -1}])


def test_ambient_mismatch():
    with pytest.raises(DimensionMismatch):
        subspace_sum(Subspace.zero(2), Subspace.zero(3))


def test_entries_are_exact_and_clean():
    m = SparseMatrix.dense([[Fraction(1, 3), 0], [0, Fraction(2, 6)]])
    assert m.entries == {(0, 0): Fraction(1, 3), (1, 1): Fraction(1, 3)}
    assert all(isinstance(v, Fraction) for v in m.entries.values())


def test_rref_pivots_increase_and_are_normalized():
    rows = rref([{0: 2, 1: 4, 2: 6}, {1: 1, 2: 1}, {0: 1, 2: 5}])
    pivots = [min(r) for r in rows]
    assert pivots == sorted(pivots)
    assert all(r[p] == 1 for r, p in zip(rows, pivots))
    for r, p in zip(rows, pivots):
        assert all(p not in other for other in rows if other is not r)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_plus_nullity(m):
    assert rank(m) + kernel_basis(m).dim == m.cols


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_of_transpose(m):
    assert rank(m) == rank(m.transpose())


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_vectors_are_killed(m):
    for v in kernel_basis(m).basis:
        assert m.apply(v) == {}


@settings(max_examples=60, deadline=None)
@given(subspaces())
def test_double_annihilator(a):
    assert annihilator(annihilator(a)) == a
    assert annihilator(a).dim == a.ambient_dim - a.dim


@settings(max_examples=60, deadline=None)
@given(subspaces(), subspaces())
def test_dimension_formula(a, b):
    assert a.dim + b.dim == subspace_sum(a, b).dim + subspace_intersection(a, b).dim
    inter = subspace_intersection(a, b)
    assert a.contains_subspace(inter) and b.contains_subspace(inter)
