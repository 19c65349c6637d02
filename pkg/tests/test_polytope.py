from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nilident import linalg as la
from nilident.polytope import (Boundary, HalfSpace, Interior, NotInHullError, SeparatedStrictly,
                               VRep, caratheodory_decompose, classify_origin, in_hull, v_to_h)

TRIANGLE = VRep.of([(1, 0), (-1, 1), (0, -1)])
SEGMENT = VRep.of([(1, 0), (0, 1)])


def hs(normal, offset):
    return HalfSpace(tuple(normal), Fraction(offset))


def test_triangle_facets():
    h = v_to_h(TRIANGLE)
    assert set(h.halfspaces) == {hs((-1, -2), -1), hs((-1, 1), -1), hs((2, 1), -1)}


def test_single_point_gives_equality_pairs():
    h = v_to_h(VRep.of([(0, 0)]))
    assert all(x.offset == 0 for x in h.halfspaces)
    assert h.contains((0, 0))
    for p in [(1, 0), (0, 1), (-1, 0), (0, -1), (1, 1)]:
        assert not h.contains(p)


def test_segment_facets():
    h = set(v_to_h(SEGMENT).halfspaces)
    for x in [hs((1, 1), 1), hs((-1, -1), -1)]:
        assert x in h
    # x >= 0 and y >= 0 may appear in any equivalent form modulo x + y = 1
    for p in [(0, 1), (1, 0), (Fraction(1, 2), Fraction(1, 2))]:
        assert all(x.contains(p) for x in h)
    for p in [(2, -1), (-1, 2), (0, 0), (1, 1)]:
        assert not all(x.contains(p) for x in h)


def test_triangle_membership_matches_lp_oracle():
    h = v_to_h(TRIANGLE)
    third = Fraction(1, 3)
    queries = list(TRIANGLE.points) + [(0, 0), (third, third), (2, 2), (-1, -1), (1, -1), (0, 1)]
    for x in queries:
        assert h.contains(x) == in_hull(TRIANGLE, x)


def test_output_is_sorted_and_integral():
    h = v_to_h(VRep.of([(Fraction(1, 2), 0), (0, Fraction(1, 3)), (-1, -1)]))
    assert list(h.halfspaces) == sorted(h.halfspaces)
    for x in h.halfspaces:
        assert all(isinstance(c, int) for c in x.normal)


def test_classify_origin_examples():
    assert classify_origin(v_to_h(TRIANGLE)) == Interior()
    assert classify_origin(v_to_h(SEGMENT)) == SeparatedStrictly(hs((1, 1), 1))
    assert classify_origin(v_to_h(VRep.of([(1, 0), (-1, 0), (0, 1)]))) == Boundary((hs((0, 1), 0),))


def test_caratheodory_examples():
    assert caratheodory_decompose(VRep.of([(0,), (2,)]), (1,)) == [
        ((0,), Fraction(1, 2)), ((2,), Fraction(1, 2))]
    third = Fraction(1, 3)
    assert caratheodory_decompose(TRIANGLE, (0, 0)) == [(p, third) for p in TRIANGLE.points]
    square = VRep.of([(0, 0), (1, 0), (0, 1), (1, 1)])
    half = (Fraction(1, 2), Fraction(1, 2))
    dec = caratheodory_decompose(square, half)
    assert len(dec) <= 3
    assert sum(c for _, c in dec) == 1 and all(c > 0 for _, c in dec)
    total = (0, 0)
    for p, c in dec:
        total = la.add(total, la.scale(c, p))
    assert total == half


def test_caratheodory_outside_hull():
    with pytest.raises(NotInHullError, match="not in hull") as exc:
        caratheodory_decompose(SEGMENT, (0, 0))
    h = exc.value.halfspace
    assert all(h.contains(p) for p in SEGMENT.points)
    assert not h.contains((0, 0))


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        VRep.of([])
    with pytest.raises(ValueError):
        VRep(2, ((1, 2), (3,)))
    with pytest.raises(ValueError):
        HalfSpace((0, 0), Fraction(1))


def points(dim):
    return st.lists(st.tuples(*[st.integers(-3, 3)] * dim), min_size=1, max_size=6)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3).flatmap(lambda d: st.tuples(st.just(d), points(d),
                                                      st.lists(st.tuples(*[st.integers(-4, 4)] * d),
                                                               max_size=8))))
def test_v_to_h_agrees_with_lp(data):
    d, pts, queries = data
    v = VRep.of(pts)
    h = v_to_h(v)
    assert all(h.contains(p) for p in v.points)
    # every half-space is tight on some point
    for x in h.halfspaces:
        assert min(x.value(p) for p in v.points) == x.offset
    for q in queries:
        assert h.contains(q) == in_hull(v, q)


@settings(max_examples=60, deadline=None)
@given(points(2), st.permutations(range(6)))
def test_v_to_h_ignores_point_order_and_duplicates(pts, perm):
    order = [pts[i] for i in perm if i < len(pts)]
    assert v_to_h(VRep.of(pts)) == v_to_h(VRep.of(order + pts[:1]))


@settings(max_examples=60, deadline=None)
@given(points(3))
def test_classify_origin_consistent_with_lp(pts):
    v = VRep.of(pts)
    origin = classify_origin(v_to_h(v))
    inside = in_hull(v, (0, 0, 0))
    assert isinstance(origin, SeparatedStrictly) == (not inside)
    if isinstance(origin, SeparatedStrictly):
        assert all(origin.witness.value(p) >= origin.witness.offset > 0 for p in v.points)
    if isinstance(origin, Boundary):
        assert origin.active and all(a.offset == 0 for a in origin.active)
