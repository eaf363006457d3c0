from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import fam
from tcbounds.complexes import SimplicialComplex, dimension
from tcbounds.covers import IndexedFamily, orders
from tcbounds.errors import InputError
from tcbounds.nerve import FiniteMetricSpace, extend_same_nerve, nerve_of, nerve_simplices, restrict


def _all_simplices(K: SimplicialComplex) -> set[tuple[int, ...]]:
    return {s for d in range(K.top_dim + 1) for s in K.simplices(d)}


def line(n: int) -> FiniteMetricSpace:
    return FiniteMetricSpace(tuple(range(n)), tuple(tuple(abs(i - j) for j in range(n)) for i in range(n)))


# -- nerve --------------------------------------------------------------------------


def test_nerve_triangle_boundary(triangle_family):
    K = nerve_of(triangle_family)
    assert K.facets == ((0, 1), (0, 2), (1, 2))
    assert _all_simplices(K) == nerve_simplices(triangle_family)


def test_nerve_disjoint_sets():
    assert nerve_of(fam("ab", "a", "b")).facets == ((0,), (1,))


def test_nerve_single_set():
    K = nerve_of(fam("ab", "ab"))
    assert K.facets == ((0,),) and dimension(K) == 0


def test_nerve_empty_set_is_absent():
    K = nerve_of(fam("ab", "ab", "", "b"))
    assert K.facets == ((0, 2),)
    assert 1 not in {v for f in K.facets for v in f}


families = st.integers(1, 7).flatmap(
    lambda g: st.lists(st.frozensets(st.integers(0, g - 1)), min_size=1, max_size=6).map(
        lambda sets: IndexedFamily(tuple(range(g)), tuple(sets))
    )
)


@settings(max_examples=300, deadline=None)
@given(families)
def test_nerve_matches_intersection_enumeration(f):
    assert _all_simplices(nerve_of(f)) == nerve_simplices(f)


@settings(max_examples=300, deadline=None)
@given(families)
def test_nerve_dimension_is_max_order_minus_one(f):
    top = max(orders(f))
    if top == 0:
        assert nerve_of(f).facets == ()
    else:
        assert dimension(nerve_of(f)) + 1 == top


# -- metric spaces ------------------------------------------------------------------


@pytest.mark.parametrize(
    "dist, message",
    [
        (((0, 1), (2, 0)), "symmetric"),
        (((1, 1), (1, 0)), "itself"),
        (((0, 0), (0, 0)), "distinct points"),
        (((0, 1, 5), (1, 0, 1), (5, 1, 0)), "triangle"),
    ],
)
def test_metric_validation(dist, message):
    with pytest.raises(InputError, match=message):
        FiniteMetricSpace(tuple(range(len(dist))), dist)


def test_sup_metric_from_coordinates():
    X = FiniteMetricSpace.from_coordinates([(0, 0), (3, 1), (1, 4)])
    assert X.dist[0][1] == 3 and X.dist[1][2] == 3 and X.dist[0][2] == 4


# -- same-nerve extension ----------------------------------------------------------


def test_extend_line_example():
    rel = IndexedFamily.from_ids([0, 1, 3], [[0, 1], [1, 3]])
    V = extend_same_nerve(line(4), [0, 1, 3], rel)
    assert [set(V.ids(k)) for k in range(2)] == [{0, 1}, {1, 2, 3}]
    assert nerve_of(V) == nerve_of(rel) == SimplicialComplex(2, ((0, 1),))


def test_extend_whole_space_is_identity():
    rel = IndexedFamily.from_ids([0, 1, 2, 3], [[0, 1], [2, 3]])
    V = extend_same_nerve(line(4), [0, 1, 2, 3], rel)
    assert V.sets == rel.sets


def test_extend_two_points():
    X = FiniteMetricSpace((0, 2), ((0, 2), (2, 0)))
    rel = IndexedFamily.from_ids([0, 2], [[0], [2]])
    V = extend_same_nerve(X, [0, 2], rel)
    assert [set(V.ids(k)) for k in range(2)] == [{0}, {2}]
    assert nerve_of(V).facets == ((0,), (1,))


def test_extend_full_set_gets_whole_space():
    rel = IndexedFamily.from_ids([0, 1], [[0, 1], [1]])
    V = extend_same_nerve(line(4), [0, 1], rel)
    assert V.sets[0] == V.ground


def test_extend_empty_relative_set_stays_empty():
    rel = IndexedFamily.from_ids([0, 1], [[0, 1], []])
    assert extend_same_nerve(line(3), [0, 1], rel).sets[1] == frozenset()


def test_extend_rejects_non_cover():
    rel = IndexedFamily.from_ids([0, 1], [[0]])
    with pytest.raises(InputError, match="does not cover"):
        extend_same_nerve(line(3), [0, 1], rel)


def test_extend_rejects_wrong_subset():
    rel = IndexedFamily.from_ids([0, 1], [[0, 1]])
    with pytest.raises(InputError, match="exactly the given subset"):
        extend_same_nerve(line(3), [0, 2], rel)


def test_extend_float_distances_are_exact():
    # ball radius 0.5 is open, so the point at distance 0.5 stays out
    X = FiniteMetricSpace((0, 1, 2), ((0.0, 0.5, 1.0), (0.5, 0.0, 0.5), (1.0, 0.5, 0.0)))
    rel = IndexedFamily.from_ids([0, 2], [[0], [2]])
    V = extend_same_nerve(X, [0, 2], rel)
    assert V.sets == (frozenset({0}), frozenset({2}))


@st.composite
def relative_covers(draw):
    n = draw(st.integers(1, 12))
    coords = draw(st.lists(st.tuples(st.integers(-20, 20), st.integers(-20, 20)),
                           min_size=n, max_size=n, unique=True))
    X = FiniteMetricSpace.from_coordinates(coords)
    A = sorted(draw(st.sets(st.integers(0, n - 1), min_size=1)))
    m = draw(st.integers(1, 5))
    sets = [set() for _ in range(m)]
    for a in A:
        for k in draw(st.sets(st.integers(0, m - 1), min_size=1)):
            sets[k].add(a)
    return X, A, IndexedFamily.from_ids(A, [sorted(s) for s in sets])


@settings(max_examples=300, deadline=None)
@given(relative_covers())
def test_extension_properties(case):
    X, A, rel = case
    V = extend_same_nerve(X, A, rel)
    assert restrict(V, A).sets == rel.sets
    assert _all_simplices(nerve_of(V)) == _all_simplices(nerve_of(rel))
    for k in range(len(rel)):
        assert set(rel.ids(k)) <= set(V.ids(k))


def test_radius_is_half_the_gap():
    X = FiniteMetricSpace((0, 1, 2), ((0, 3, 3), (3, 0, 3), (3, 3, 0)))
    rel = IndexedFamily.from_ids([0, 1], [[0], [1]])
    V = extend_same_nerve(X, [0, 1], rel)
    # radius 3/2 < 3 keeps point 2 out of both sets
    assert V.sets == (frozenset({0}), frozenset({1}))
