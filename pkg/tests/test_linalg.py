from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nilident import linalg as la

small = st.integers(-6, 6)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=0, max_size=max_rows))


def test_frac_rejects_float():
    with pytest.raises(TypeError):
        la.frac(0.5)
    assert la.frac("3/4") == Fraction(3, 4)


@pytest.mark.parametrize("m, expected, pivots", [
    ([[1, 0], [0, 1]], [[1, 0], [0, 1]], [0, 1]),
    ([[2, 4], [1, 2]], [[1, 2], [0, 0]], [0]),
    ([[0, 1], [1, 0]], [[1, 0], [0, 1]], [0, 1]),
])
def test_rref_examples(m, expected, pivots):
    r, p = la.rref(m)
    assert r == la.matrix(expected)
    assert p == pivots


@pytest.mark.parametrize("m, expected", [
    ([[1, 2]], [(-2, 1)]),
    ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], []),
    ([[1, 1, 1], [0, 0, 0]], [(-1, 1, 0), (-1, 0, 1)]),
])
def test_kernel_examples(m, expected):
    assert la.kernel_basis(m) == [la.vector(v) for v in expected]


def test_kernel_without_rows():
    assert la.kernel_basis([], ncols=2) == [la.vector((1, 0)), la.vector((0, 1))]


def test_quotient_examples():
    q = la.QuotientMap([(1, 0), (0, 1)])
    assert q.dim == 2 and q((1, 0)) == (1, 0)
    q = la.QuotientMap([(1, 0), (0, 1)], [(0, 1)])
    assert q.dim == 1 and q((0, 1)) == (0,)
    q = la.QuotientMap([(1, 1), (2, 2)])
    assert q.dim == 1 and q((1, 1)) == (1,) and q((2, 2)) == (2,)


def test_quotient_outside_span():
    q = la.QuotientMap([(1, 1)])
    with pytest.raises(la.NotInSpanError, match="not in span"):
        q((1, 0))


def test_quotient_rejects_subspace_outside_space():
    with pytest.raises(la.NotInSpanError):
        la.QuotientMap([(1, 0)], [(0, 1)])


def test_integer_normalize():
    w, k = la.integer_normalize((Fraction(1, 2), Fraction(-3, 4)))
    assert w == (2, -3) and k == 4
    w, k = la.integer_normalize((0, -6, 9))
    assert w == (0, -2, 3) and k == Fraction(1, 3)


def test_solve():
    assert la.solve([[1, 1], [1, -1]], [2, 0]) == (1, 1)
    assert la.solve([[1, 1], [2, 2]], [1, 3]) is None


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rref_properties(m):
    r, piv = la.rref(m)
    assert la.rref(r)[0] == r  # idempotent
    assert len(piv) == la.rank(m)
    for k, j in enumerate(piv):
        assert r[k][j] == 1
        assert all(r[i][j] == 0 for i in range(len(r)) if i != k)
    if m:
        ncols = len(m[0])
        for v in la.kernel_basis(m, ncols):
            assert la.is_zero(la.matvec(m, v))
        assert len(la.kernel_basis(m, ncols)) == ncols - len(piv)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=4),
       st.lists(small, min_size=4, max_size=4))
def test_quotient_is_linear_and_kills_subspace(space, coeffs):
    sub = space[:1]
    q = la.QuotientMap(space, sub, ambient_dim=3)
    assert q.dim == la.rank(space) - la.rank(sub)
    assert la.is_zero(q(sub[0]))
    combo = [0, 0, 0]
    for c, v in zip(coeffs, space):
        combo = la.add(combo, la.scale(c, v))
    expected = [0] * q.dim
    for c, v in zip(coeffs, space):
        expected = la.add(expected, la.scale(c, q(v)))
    assert q(combo) == tuple(expected)
