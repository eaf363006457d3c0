"""Exact k-cover calculus on finite ground sets.

A family of subsets is a *k-cover* when every k of its members already cover
the ground set. On a finite set this is decided either by brute force over all
k-element subfamilies or by the order criterion: a family of m sets is a
k-cover iff every point lies in at least m - k + 1 of them.

Everything here works on point *indices*; point identifiers only matter at the
edges (construction helpers and serialization).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Any, Hashable, Iterable, Sequence

from .errors import InputError

Point = Hashable


@dataclass(frozen=True)
class Witness:
    """One piece of a disjoint-union decomposition: ``piece`` is taken from set ``origin``."""

    piece: frozenset[int]
    origin: int


@dataclass(frozen=True)
class IndexedFamily:
    """Ordered list of subsets of a finite ground set.

    Attributes:
        points: ground set identifiers, pairwise distinct, nonempty.
        sets: each member as a frozenset of point indices.
        tags: optional opaque deformability label per set (``None`` = absent).
        witnesses: optional per-set decomposition into ``Witness`` pieces;
            ``None`` entries mean the set carries no decomposition.
    """

    points: tuple[Point, ...]
    sets: tuple[frozenset[int], ...]
    tags: tuple[Any, ...] | None = None
    witnesses: tuple[tuple[Witness, ...] | None, ...] | None = None
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if not self.points:
            raise InputError("ground set must be nonempty")
        index = {p: i for i, p in enumerate(self.points)}
        if len(index) != len(self.points):
            raise InputError("ground set identifiers must be pairwise distinct")
        object.__setattr__(self, "_index", index)
        n = len(self.points)
        for k, s in enumerate(self.sets):
            if any(not (isinstance(i, int) and 0 <= i < n) for i in s):
                raise InputError(f"set {k} contains an index outside the ground set")
        if self.tags is not None and len(self.tags) != len(self.sets):
            raise InputError(
                f"{len(self.tags)} tags given for {len(self.sets)} sets"
            )
        if self.witnesses is not None and len(self.witnesses) != len(self.sets):
            raise InputError(
                f"{len(self.witnesses)} witness entries given for {len(self.sets)} sets"
            )

    @classmethod
    def from_ids(
        cls,
        points: Iterable[Point],
        sets: Iterable[Iterable[Point]],
        tags: Sequence[Any] | None = None,
    ) -> IndexedFamily:
        """Build a family from point identifiers rather than indices."""
        points = tuple(points)
        index = {p: i for i, p in enumerate(points)}
        converted = []
        for k, s in enumerate(sets):
            members = set()
            for p in s:
                if p not in index:
                    raise InputError(f"set {k} mentions unknown point {p!r}")
                members.add(index[p])
            converted.append(frozenset(members))
        return cls(points, tuple(converted), None if tags is None else tuple(tags))

    def __len__(self) -> int:
        return len(self.sets)

    def index_of(self, point: Point) -> int:
        try:
            return self._index[point]
        except (KeyError, TypeError):
            raise InputError(f"unknown point {point!r}") from None

    def ids(self, k: int) -> list[Point]:
        """Identifiers of set ``k`` in ground order."""
        return [self.points[i] for i in sorted(self.sets[k])]

    @property
    def ground(self) -> frozenset[int]:
        return frozenset(range(len(self.points)))


@dataclass(frozen=True)
class PermutationAction:
    """A finite group acting on the ground set, given by generating permutations.

    Each generator is an image tuple: point ``i`` is sent to ``generator[i]``.
    """

    points: tuple[Point, ...]
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.points)
        if n == 0:
            raise InputError("ground set must be nonempty")
        if len(set(self.points)) != n:
            raise InputError("ground set identifiers must be pairwise distinct")
        for j, g in enumerate(self.generators):
            if len(g) != n or sorted(g) != list(range(n)):
                raise InputError(f"generator {j} is not a bijection of the ground set")

    @classmethod
    def from_ids(
        cls, points: Iterable[Point], generators: Iterable[Sequence[Point]]
    ) -> PermutationAction:
        points = tuple(points)
        index = {p: i for i, p in enumerate(points)}
        gens = []
        for j, images in enumerate(generators):
            try:
                gens.append(tuple(index[p] for p in images))
            except KeyError as exc:
                raise InputError(f"generator {j} mentions unknown point {exc.args[0]!r}") from None
        return cls(points, tuple(gens))

    @classmethod
    def trivial(cls, points: Iterable[Point]) -> PermutationAction:
        return cls(tuple(points), ())

    def image(self, g: Sequence[int], subset: Iterable[int]) -> frozenset[int]:
        return frozenset(g[i] for i in subset)

    def elements(self, limit: int | None = None) -> list[tuple[int, ...]]:
        """All group elements by closure under the generators.

        Raises:
            InputError: if ``limit`` is given and the group is larger.
        """
        identity = tuple(range(len(self.points)))
        seen = {identity}
        queue = deque([identity])
        while queue:
            h = queue.popleft()
            for g in self.generators:
                gh = tuple(g[h[i]] for i in range(len(h)))
                if gh not in seen:
                    seen.add(gh)
                    if limit is not None and len(seen) > limit:
                        raise InputError(f"group order exceeds {limit}")
                    queue.append(gh)
        return sorted(seen)

    def order(self) -> int:
        return len(self.elements())

    def orbits(self) -> list[frozenset[int]]:
        """Orbits of the action, ordered by smallest member."""
        parent = list(range(len(self.points)))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for g in self.generators:
            for i, j in enumerate(g):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
        groups: dict[int, set[int]] = {}
        for i in range(len(self.points)):
            groups.setdefault(find(i), set()).add(i)
        return [frozenset(groups[r]) for r in sorted(groups)]


def _check_same_ground(family: IndexedFamily, action: PermutationAction) -> None:
    if family.points != action.points:
        raise InputError("action and family are defined over different ground sets")


def order_at(family: IndexedFamily, point: Point) -> int:
    """Number of members of ``family`` containing ``point`` (given by identifier)."""
    i = family.index_of(point)
    return sum(1 for s in family.sets if i in s)


def orders(family: IndexedFamily) -> list[int]:
    """Order at every point, indexed like ``family.points``."""
    counts = [0] * len(family.points)
    for s in family.sets:
        for i in s:
            counts[i] += 1
    return counts


def min_order(family: IndexedFamily) -> int:
    return min(orders(family))


def covers(family: IndexedFamily) -> bool:
    """True iff the union of all members is the whole ground set."""
    return min_order(family) >= 1


def _check_k(family: IndexedFamily, k: int) -> None:
    if not isinstance(k, int) or not 1 <= k <= len(family.sets):
        raise InputError(f"k must satisfy 1 <= k <= {len(family.sets)}, got {k!r}")


def is_k_cover_oracle(family: IndexedFamily, k: int) -> bool:
    """Brute-force check: every k-element subfamily has union equal to the ground set."""
    _check_k(family, k)
    ground = family.ground
    for chosen in combinations(family.sets, k):
        if frozenset().union(*chosen) != ground:
            return False
    return True


def is_k_cover_fast(family: IndexedFamily, k: int) -> bool:
    """Order criterion: m sets form a k-cover iff the minimal order is >= m - k + 1."""
    _check_k(family, k)
    return min_order(family) >= len(family.sets) - k + 1


def is_invariant(family: IndexedFamily, action: PermutationAction) -> bool:
    """True iff every member is mapped onto itself by every generator."""
    _check_same_ground(family, action)
    return _first_non_invariant(family, action) is None


def _first_non_invariant(family, action):
    for k, s in enumerate(family.sets):
        for j, g in enumerate(action.generators):
            if action.image(g, s) != s:
                return k, j
    return None


def find_witness_violation(family: IndexedFamily) -> str | None:
    """Describe the first broken witness invariant, or return ``None``."""
    if family.witnesses is None:
        return None
    for k, pieces in enumerate(family.witnesses):
        if pieces is None:
            continue
        union: set[int] = set()
        for p, w in enumerate(pieces):
            if not 0 <= w.origin < k:
                return f"set {k}, piece {p}: origin {w.origin} is not an earlier index"
            if not w.piece <= family.sets[w.origin]:
                return f"set {k}, piece {p}: piece is not contained in set {w.origin}"
            if union & w.piece:
                return f"set {k}, piece {p}: overlaps an earlier piece"
            union |= w.piece
        if union != family.sets[k]:
            return f"set {k}: pieces do not union to the set"
    return None


def verify_witnesses(family: IndexedFamily) -> bool:
    return find_witness_violation(family) is None


def ostrand_extend(
    family: IndexedFamily,
    n: int,
    m: int,
    action: PermutationAction | None = None,
) -> IndexedFamily:
    """Extend a cover by n+1 sets to an (n+1)-cover by m+1 sets.

    Each step looks at the points of minimal order ``s - n`` (``s`` = current
    size). If there are none, the family is already an n-cover and a copy of the
    first set is appended. Otherwise the low-order points are split by first
    original set containing them, and the union of those disjoint pieces is
    appended. Appended sets carry the decomposition as witnesses; when the input
    carries tags, an appended set is tagged by the tuple of its pieces' origin
    tags.

    If ``action`` is given, the input must be invariant and so is every
    appended set (low-order points form an invariant set).
    """
    if not isinstance(n, int) or n < 0:
        raise InputError(f"n must be a nonnegative integer, got {n!r}")
    if not isinstance(m, int) or m < n:
        raise InputError(f"m must be an integer >= n = {n}, got {m!r}")
    if len(family.sets) != n + 1:
        raise InputError(f"expected exactly n+1 = {n + 1} sets, got {len(family.sets)}")
    counts = orders(family)
    for i, c in enumerate(counts):
        if c == 0:
            raise InputError(f"input is not a cover: point {family.points[i]!r} is uncovered")
    if action is not None:
        _check_same_ground(family, action)
        bad = _first_non_invariant(family, action)
        if bad is not None:
            raise InputError(f"set {bad[0]} is not invariant under generator {bad[1]}")

    originals = family.sets
    sets = list(originals)
    witnesses = list(family.witnesses) if family.witnesses is not None else [None] * len(sets)
    tags = list(family.tags) if family.tags is not None else None

    for s in range(n + 1, m + 1):
        low = frozenset(i for i, c in enumerate(counts) if c == s - n)
        if not low:
            pieces = (Witness(originals[0], 0),)
        else:
            pieces = []
            seen: frozenset[int] = frozenset()
            for i, u in enumerate(originals):
                f = (low & u) - seen
                seen |= u
                if f:
                    pieces.append(Witness(f, i))
            pieces = tuple(pieces)
            assert frozenset().union(*(w.piece for w in pieces)) == low
        new = frozenset().union(*(w.piece for w in pieces))
        sets.append(new)
        witnesses.append(pieces)
        if tags is not None:
            tags.append(tuple(tags[w.origin] for w in pieces))
        for i in new:
            counts[i] += 1
        assert min(counts) >= len(sets) - n

    return IndexedFamily(
        family.points,
        tuple(sets),
        None if tags is None else tuple(tags),
        tuple(witnesses),
    )


def diagonal_product(fam_a: IndexedFamily, fam_b: IndexedFamily) -> IndexedFamily:
    """The family ``A_k x B_k`` over the product ground set, without preconditions.

    Product points are pairs ``(a, b)`` in row-major order.
    """
    if len(fam_a.sets) != len(fam_b.sets):
        raise InputError(
            f"families have different lengths {len(fam_a.sets)} and {len(fam_b.sets)}"
        )
    nb = len(fam_b.points)
    points = tuple(product(fam_a.points, fam_b.points))
    sets = tuple(
        frozenset(i * nb + j for i in sa for j in sb)
        for sa, sb in zip(fam_a.sets, fam_b.sets)
    )
    tags = None
    if fam_a.tags is not None or fam_b.tags is not None:
        ta = fam_a.tags or (None,) * len(sets)
        tb = fam_b.tags or (None,) * len(sets)
        tags = tuple(zip(ta, tb))
    return IndexedFamily(points, sets, tags)


def product_cover(fam_a: IndexedFamily, n: int, fam_b: IndexedFamily, m: int) -> IndexedFamily:
    """Diagonal product of an (n+1)-cover and an (m+1)-cover of equal length s > n + m.

    Every product point (a, b) is then covered: a lies in at least s - n of the
    A-sets and b in at least s - m of the B-sets, and s - n + s - m > s forces a
    shared index.
    """
    if len(fam_a.sets) != len(fam_b.sets):
        raise InputError(
            f"length mismatch: {len(fam_a.sets)} sets vs {len(fam_b.sets)} sets"
        )
    s = len(fam_a.sets)
    if not isinstance(n, int) or not isinstance(m, int) or n < 0 or m < 0:
        raise InputError("n and m must be nonnegative integers")
    if s <= n + m:
        raise InputError(f"length s = {s} must exceed n + m = {n + m}")
    if not is_k_cover_fast(fam_a, n + 1):
        raise InputError(f"first family is not an {n + 1}-cover")
    if not is_k_cover_fast(fam_b, m + 1):
        raise InputError(f"second family is not an {m + 1}-cover")
    return diagonal_product(fam_a, fam_b)
