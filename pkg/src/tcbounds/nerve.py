"""Nerves of finite families and same-nerve extension of relative covers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from numbers import Real
from typing import Hashable, Iterable, Sequence

from .complexes import SimplicialComplex
from .covers import IndexedFamily, orders
from .errors import InputError


@dataclass(frozen=True)
class FiniteMetricSpace:
    """Points with an exact distance matrix.

    Distances are ``Fraction`` or ``int`` (compared exactly) or ``float``
    (compared bit-exactly, no tolerance).
    """

    points: tuple[Hashable, ...]
    dist: tuple[tuple[Real, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.points)
        if n == 0:
            raise InputError("metric space must have at least one point")
        if len(set(self.points)) != n:
            raise InputError("point identifiers must be pairwise distinct")
        if len(self.dist) != n or any(len(row) != n for row in self.dist):
            raise InputError(f"distance matrix must be {n} x {n}")
        d = self.dist
        for i in range(n):
            if d[i][i] != 0:
                raise InputError(f"d({self.points[i]!r}, itself) must be 0")
            for j in range(i + 1, n):
                if d[i][j] != d[j][i]:
                    raise InputError(f"distance between points {i} and {j} is not symmetric")
                if not d[i][j] > 0:
                    raise InputError(f"distinct points {i} and {j} are at distance {d[i][j]}")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if d[i][k] > d[i][j] + d[j][k]:
                        raise InputError(f"triangle inequality fails for points {i}, {j}, {k}")

    @classmethod
    def from_coordinates(cls, coords: Sequence[Sequence[int]], points: Sequence[Hashable] | None = None) -> FiniteMetricSpace:
        """Integer points under the sup metric (exact integer distances)."""
        pts = tuple(points) if points is not None else tuple(range(len(coords)))
        dist = tuple(
            tuple(max((abs(a - b) for a, b in zip(p, q)), default=0) for q in coords)
            for p in coords
        )
        return cls(pts, dist)

    def index_of(self, point: Hashable) -> int:
        try:
            return self.points.index(point)
        except ValueError:
            raise InputError(f"unknown point {point!r}") from None


def nerve_of(family: IndexedFamily) -> SimplicialComplex:
    """Nerve on the index set of ``family``.

    A subfamily spans a simplex iff its members share a point, so the facets
    are the maximal "membership profiles" of individual points. Indices of
    empty sets appear in no simplex.
    """
    profiles = [set() for _ in family.points]
    for k, s in enumerate(family.sets):
        for i in s:
            profiles[i].add(k)
    return SimplicialComplex.from_simplices(len(family.sets), profiles)


def nerve_simplices(family: IndexedFamily) -> set[tuple[int, ...]]:
    """Every simplex of the nerve by direct enumeration of nonempty intersections."""
    out = set()
    m = len(family.sets)
    for r in range(1, m + 1):
        for idx in combinations(range(m), r):
            if frozenset.intersection(*(family.sets[i] for i in idx)):
                out.add(idx)
    return out


def _radius(space: FiniteMetricSpace, a: int, outside: Iterable[int]):
    """Half the distance from ``a`` to ``outside``; infinite when ``outside`` is empty."""
    d = min((space.dist[a][b] for b in outside), default=math.inf)
    if d == math.inf:
        return d
    return d / 2 if isinstance(d, float) else Fraction(d) / 2


def extend_same_nerve(
    space: FiniteMetricSpace, subset: Sequence[Hashable], rel_family: IndexedFamily
) -> IndexedFamily:
    """Extend a cover of ``subset`` to sets of the whole space with the same nerve.

    Set i becomes the union of open balls ``B(a, d(a, A - V'_i) / 2)`` over its
    points a. Returns a family over ``space.points`` with ``V_i`` restricting to
    the i-th relative set on ``subset`` and tags carried over.
    """
    a_idx = [space.index_of(p) for p in subset]
    if len(set(a_idx)) != len(a_idx):
        raise InputError("subset lists a point twice")
    if set(rel_family.points) != set(subset):
        raise InputError("relative family must be defined over exactly the given subset")
    uncovered = [rel_family.points[i] for i, c in enumerate(orders(rel_family)) if c == 0]
    if uncovered:
        raise InputError(f"relative family does not cover the subset: {uncovered[0]!r} is missing")

    to_space = [space.index_of(p) for p in rel_family.points]
    n = len(space.points)
    a_set = set(a_idx)
    sets = []
    for rel in rel_family.sets:
        inside = {to_space[i] for i in rel}
        outside = a_set - inside
        v = set()
        for a in inside:
            r = _radius(space, a, outside)
            v.update(x for x in range(n) if space.dist[a][x] < r)
        sets.append(frozenset(v))
    return IndexedFamily(space.points, tuple(sets), rel_family.tags)


def restrict(family: IndexedFamily, subset: Sequence[Hashable]) -> IndexedFamily:
    """Trace of ``family`` on ``subset`` (a family over ``subset``)."""
    idx = [family.index_of(p) for p in subset]
    local = {g: i for i, g in enumerate(idx)}
    return IndexedFamily(
        tuple(subset),
        tuple(frozenset(local[g] for g in s if g in local) for s in family.sets),
        family.tags,
    )
