from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leibext.exactlin import (
    InvariantSubspaceError,
    Mat,
    NotAComplexError,
    Subquotient,
    Subspace,
    column_space,
    kernel_basis,
    rank,
    solve,
    subquotient_dim,
)
from oracles import dense_rank

small = st.integers(min_value=-3, max_value=3)


@st.composite
def matrices(draw, max_rows=6, max_cols=6):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    return Mat.from_dense(rows)


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_rank_matches_dense_oracle(m):
    assert rank(m) == dense_rank(m.to_dense())


@given(matrices())
@settings(max_examples=100, deadline=None)
def test_rank_transpose_and_nullity(m):
    assert rank(m) == rank(m.T)
    k = kernel_basis(m)
    assert k.dim + rank(m) == m.cols
    assert (m @ k.basis).is_zero()


@given(matrices(), st.lists(small, min_size=6, max_size=6))
@settings(max_examples=100, deadline=None)
def test_solve_consistent_systems(a, xs):
    x = Mat.column_vector(xs[: a.cols])
    b = a @ x
    sol = solve(a, b)
    assert sol is not None and a @ sol == b


def test_solve_inconsistent_and_free_variables():
    a = Mat.from_dense([[1, 1], [0, 1]])
    assert solve(a, Mat.column_vector([3, 1])) == Mat.column_vector([2, 1])
    assert solve(Mat.zeros(2, 2), Mat.column_vector([1, 0])) is None
    sol = solve(Mat.from_dense([[1, 1]]), Mat.column_vector([4]))
    assert sol == Mat.column_vector([4, 0])
    with pytest.raises(ValueError):
        solve(a, Mat.column_vector([1, 2, 3]))


def test_rank_of_sum_matrix():
    m = Mat.from_dense([[i + j for j in range(10)] for i in range(10)])
    assert rank(m) == 2


def test_kernel_of_row():
    k = kernel_basis(Mat.from_dense([[1, 2]]))
    assert k.dim == 1
    assert k.contains(Mat.column_vector([-2, 1]))


def test_fractions_stay_exact():
    m = Mat.from_dense([[Fraction(1, 3), Fraction(1, 6)], [Fraction(2, 3), Fraction(1, 3)]])
    assert rank(m) == 1
    assert m.to_dense()[0][0] == Fraction(1, 3)


def test_mat_algebra():
    a = Mat.from_dense([[1, 2], [3, 4]])
    i = Mat.identity(2)
    assert a @ i == a and i @ a == a
    assert (a - a).is_zero()
    assert a.T.T == a
    assert a.trace() == 5
    k = a.kron(i)
    assert k.shape == (4, 4) and k[1, 3] == 2 and k[2, 0] == 3
    assert a.hstack(i).shape == (2, 4) and a.vstack(i).shape == (4, 2)
    assert a.select_columns([1]) == Mat.column_vector([2, 4])
    assert hash(a) == hash(Mat.from_dense([[1, 2], [3, 4]]))


def test_mat_rejects_bad_entries():
    with pytest.raises((ValueError, IndexError)):
        Mat(2, 2, {(2, 0): 1})


def test_subquotient_dim_requires_complex():
    d0 = Mat.from_dense([[1], [0]])
    d1 = Mat.from_dense([[0, 1]])
    assert subquotient_dim(d1, d0) == 0
    with pytest.raises(NotAComplexError):
        subquotient_dim(Mat.from_dense([[1, 0]]), d0)


def test_subquotient_reps_and_coordinates():
    z = Mat.identity(3)
    b = Mat.column_vector([1, 1, 0])
    sq = Subquotient(z, b)
    assert sq.dim == 2
    coords = sq.coordinates(Mat.column_vector([1, 1, 0]))
    assert coords is not None and coords.is_zero()


def test_induced_operator_and_failure():
    sub = Subspace.span(2, [{0: 1}])
    sq = Subquotient(sub.basis)
    upper = Mat.from_dense([[2, 1], [0, 3]])
    assert sq.induced(upper) == Mat.from_dense([[2]])
    with pytest.raises(InvariantSubspaceError):
        sq.induced(Mat.from_dense([[0, 0], [1, 0]]))


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_column_space_contains_columns(m):
    cs = column_space(m)
    assert cs.dim == rank(m)
    for j in range(m.cols):
        assert cs.contains(m.select_columns([j]))


def test_subspace_equality_and_sum():
    a = Subspace.span(3, [{0: 1}, {1: 1}])
    b = Subspace.span(3, [{0: 1, 1: 1}, {0: 1, 1: -1}])
    assert a == b
    assert (a + Subspace.span(3, [{2: 5}])).dim == 3
    assert a.contains_subspace(Subspace.span(3, [{0: 2, 1: 3}]))
