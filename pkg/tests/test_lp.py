from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nilident import linalg as la
from nilident.lp import Feasible, Infeasible, cone_support, feasible_nonneg, solve_standard


def columns(*vs):
    return la.transpose(vs)


def test_balanced_pair():
    r = feasible_nonneg([[1, -1]], [(0, 1)])
    assert isinstance(r, Feasible) and r.solution == (1, 1)


def test_positive_combination_cannot_vanish():
    r = feasible_nonneg([[1, 0], [0, 1]], [(0, 1)])
    assert isinstance(r, Infeasible) and r.farkas == (1, 0)


def test_three_vectors_summing_to_zero():
    r = feasible_nonneg(columns((1, 0), (-1, 1), (0, -1)), [(1, 1)])
    assert isinstance(r, Feasible) and r.solution == (1, 1, 1)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        solve_standard([[1, 2], [3]], [0, 0])
    with pytest.raises(ValueError):
        solve_standard([[1, 2]], [0, 0])
    with pytest.raises(ValueError):
        feasible_nonneg([[1, 2]], [(5, 1)])


@pytest.mark.parametrize("vectors, survivors, witness", [
    ([(1, 0), (-1, 1), (0, -1)], {0, 1, 2}, (1, 1, 1)),
    ([(1, 0), (0, 1)], set(), (0, 0)),
    ([(1,), (-1,), (2,)], {0, 1, 2}, (1, 3, 1)),
])
def test_cone_support_examples(vectors, survivors, witness):
    cs = cone_support(vectors)
    assert cs.survivors == survivors
    assert cs.witness == witness


vec2 = st.tuples(st.integers(-3, 3), st.integers(-3, 3))


@settings(max_examples=120, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=3),
       st.lists(st.integers(-4, 4), min_size=3, max_size=3))
def test_solve_standard_outcomes_are_certified(a, b):
    b = b[:len(a)]
    r = solve_standard(a, b)
    if isinstance(r, Feasible):
        assert all(x >= 0 for x in r.solution)
        assert la.matvec(a, r.solution) == tuple(Fraction(x) for x in b)
    else:
        y = r.farkas
        assert all(la.dot(y, col) >= 0 for col in la.transpose(a))
        assert la.dot(y, b) < 0


@settings(max_examples=120, deadline=None)
@given(st.lists(vec2, min_size=1, max_size=6))
def test_cone_support_properties(vectors):
    cs = cone_support(vectors)
    n = len(vectors)
    # the witness is a nonnegative solution positive exactly on the survivors
    assert all(x >= 0 for x in cs.witness)
    assert {i for i in range(n) if cs.witness[i] > 0} == cs.survivors
    total = (0, 0)
    for x, v in zip(cs.witness, vectors):
        total = la.add(total, la.scale(x, v))
    assert la.is_zero(total)
    # every non-survivor has a functional nonnegative on all and positive on it
    for i in set(range(n)) - cs.survivors:
        f = cs.farkas[i]
        assert all(la.dot(f, v) >= 0 for v in vectors)
        assert la.dot(f, vectors[i]) > 0
