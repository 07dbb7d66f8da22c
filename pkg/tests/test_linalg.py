from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tautilt.linalg import (
    RatMat,
    column_space,
    det,
    int_matrix_inverse_transpose,
    inverse,
    nullspace,
    rank,
    solve,
    sparse_nullspace,
    sparse_rref,
)


def mat(rows):
    return RatMat.from_rows(rows)


def test_matmul_identity():
    a = mat([[1, 2], [3, 4]])
    assert a @ RatMat.identity(2) == a
    assert RatMat.identity(2) @ a == a


def test_matmul_zero_dims():
    a = RatMat.zeros(0, 3)
    b = RatMat.zeros(3, 2)
    assert (a @ b).rows == 0
    assert (a @ b).cols == 2


def test_rank_and_nullspace():
    a = mat([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert rank(a) == 2
    ns = nullspace(a)
    assert ns.cols == 1
    assert (a @ ns).is_zero()


def test_nullspace_full_rank():
    a = mat([[1, 0], [0, 1], [1, 1]])
    assert nullspace(a).cols == 0


def test_nullspace_zero_matrix():
    a = RatMat.zeros(2, 3)
    assert nullspace(a).cols == 3


def test_column_space():
    a = mat([[1, 2], [2, 4], [3, 6]])
    cs = column_space(a)
    assert cs.cols == 1
    # column space basis is canonical: leading entry normalized to 1
    assert cs.data[0][0] == 1


def test_solve_exact():
    a = mat([[2, 1], [1, 3]])
    b = mat([[1], [2]])
    x = solve(a, b)
    assert a @ x == b
    assert x.data[0][0] == Fraction(1, 5)


def test_solve_inconsistent():
    a = mat([[1, 1], [1, 1]])
    b = mat([[1], [2]])
    assert solve(a, b) is None


def test_solve_underdetermined_consistent():
    a = mat([[1, 1]])
    b = mat([[3]])
    x = solve(a, b)
    assert a @ x == b


def test_det_and_inverse():
    a = mat([[1, 2], [3, 4]])
    assert det(a) == -2
    inv = inverse(a)
    assert a @ inv == RatMat.identity(2)
    assert det(RatMat.identity(3)) == 1
    assert det(mat([[1, 2], [2, 4]])) == 0
    assert inverse(mat([[1, 2], [2, 4]])) is None


def test_det_rational_entries():
    a = mat([[Fraction(1, 2), 0], [0, Fraction(2, 3)]])
    assert det(a) == Fraction(1, 3)


def test_int_inverse_transpose():
    g = ((1, 1), (0, -1))
    c = int_matrix_inverse_transpose(g)
    assert c == ((1, 0), (1, -1))


def test_int_inverse_transpose_rejects_nonintegral():
    with pytest.raises(ValueError):
        int_matrix_inverse_transpose(((2, 0), (0, 1)))


def test_sparse_rref_canonical():
    rows = [{0: 2, 1: 4}, {0: 1, 1: 2, 2: 1}]
    rref = sparse_rref(rows, 3)
    assert [c for c, _ in rref] == [0, 2]
    assert rref[0][1] == {0: Fraction(1), 1: Fraction(2)}
    assert rref[1][1] == {2: Fraction(1)}


small_fractions = st.fractions(
    min_value=-4, max_value=4, max_denominator=3
)


@st.composite
def random_matrix(draw):
    r = draw(st.integers(min_value=0, max_value=5))
    c = draw(st.integers(min_value=0, max_value=5))
    data = draw(
        st.lists(
            st.lists(small_fractions, min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        )
    )
    return RatMat(r, c, data)


@given(random_matrix())
@settings(max_examples=60, deadline=None)
def test_rank_nullity(a):
    assert rank(a) + nullspace(a).cols == a.cols


@given(random_matrix())
@settings(max_examples=60, deadline=None)
def test_nullspace_annihilates(a):
    ns = nullspace(a)
    if ns.cols:
        assert (a @ ns).is_zero()


@given(random_matrix())
@settings(max_examples=60, deadline=None)
def test_column_space_rank(a):
    assert column_space(a).cols == rank(a)


def test_sparse_nullspace_vectors():
    rows = [{0: 1, 1: 1}]
    basis = sparse_nullspace(rows, 2)
    assert len(basis) == 1
    assert basis[0] == {1: Fraction(1), 0: Fraction(-1)}
