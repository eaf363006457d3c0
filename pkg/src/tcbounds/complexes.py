"""Finite simplicial complexes and their cohomology ring over Z/2.

The cohomology ring is only ever used as a source of lower bounds: the
zero-divisor cup length of H*(X; Z/2) bounds TC(X) from below, which lets the
bound engine sandwich its upper bounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from typing import Hashable, Iterable, Sequence

from . import gf2
from .errors import InputError

Simplex = tuple[int, ...]


@dataclass(frozen=True)
class SimplicialComplex:
    """Abstract simplicial complex given by its facets.

    ``vertex_count`` fixes the label range ``0 .. vertex_count - 1``; the
    simplices are exactly the faces of the listed facets, so a label that
    appears in no facet is not a vertex of the complex.
    """

    vertex_count: int
    facets: tuple[Simplex, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.vertex_count, int) or self.vertex_count < 0:
            raise InputError("vertex count must be a nonnegative integer")
        for f in self.facets:
            if not f or any(not isinstance(v, int) for v in f):
                raise InputError(f"facet {list(f)} is empty or has non-integer entries")
            if any(b <= a for a, b in zip(f, f[1:])):
                raise InputError(f"facet {list(f)} is not strictly ascending")
            if f[0] < 0 or f[-1] >= self.vertex_count:
                raise InputError(f"facet {list(f)} uses a vertex outside 0..{self.vertex_count - 1}")
        fs = [frozenset(f) for f in self.facets]
        if len(set(fs)) != len(fs):
            raise InputError("duplicate facet")
        for a, b in combinations(fs, 2):
            if a < b or b < a:
                raise InputError("a facet is contained in another facet")

    @classmethod
    def from_simplices(cls, vertex_count: int, simplices: Iterable[Iterable[int]]) -> SimplicialComplex:
        """Build a complex from any generating simplices, keeping only maximal ones."""
        cands = sorted({tuple(sorted(set(s))) for s in simplices if s}, key=lambda s: (-len(s), s))
        kept: list[Simplex] = []
        for s in cands:
            ss = set(s)
            if not any(ss <= set(k) for k in kept):
                kept.append(s)
        return cls(vertex_count, tuple(sorted(kept)))

    def relabel(self, perm: Sequence[int]) -> SimplicialComplex:
        """Complex with vertex ``v`` renamed to ``perm[v]``."""
        return SimplicialComplex(
            self.vertex_count, tuple(sorted(tuple(sorted(perm[v] for v in f)) for f in self.facets))
        )

    @cached_property
    def _faces(self) -> list[list[Simplex]]:
        by_dim: dict[int, set[Simplex]] = {}
        for f in self.facets:
            for r in range(1, len(f) + 1):
                by_dim.setdefault(r - 1, set()).update(combinations(f, r))
        top = max(by_dim, default=-1)
        return [sorted(by_dim.get(d, ())) for d in range(top + 1)]

    def simplices(self, d: int) -> list[Simplex]:
        """All d-simplices in lexicographic order."""
        faces = self._faces
        return faces[d] if 0 <= d < len(faces) else []

    @property
    def top_dim(self) -> int:
        return len(self._faces) - 1


def dimension(K: SimplicialComplex) -> int:
    if not K.facets:
        raise InputError("the empty complex has no dimension")
    return max(len(f) for f in K.facets) - 1


def euler_characteristic(K: SimplicialComplex) -> int:
    return sum((-1) ** d * len(K.simplices(d)) for d in range(K.top_dim + 1))


def _coboundary_images(K: SimplicialComplex, d: int) -> list[int]:
    """Coboundary of each basis d-cochain, as bit sets over (d+1)-simplices."""
    lower = {s: i for i, s in enumerate(K.simplices(d))}
    images = [0] * len(lower)
    for j, t in enumerate(K.simplices(d + 1)):
        for r in range(len(t)):
            images[lower[t[:r] + t[r + 1:]]] |= 1 << j
    return images


def boundary_rank(K: SimplicialComplex, d: int) -> int:
    """Rank of the boundary map from d-chains to (d-1)-chains (transpose of the coboundary)."""
    if d <= 0:
        return 0
    return gf2.rank(_coboundary_images(K, d - 1))


def betti_z2(K: SimplicialComplex) -> list[int]:
    """Z/2 Betti numbers ``b_0 .. b_top``."""
    top = K.top_dim
    ranks = [boundary_rank(K, d) for d in range(top + 2)]
    return [len(K.simplices(d)) - ranks[d] - ranks[d + 1] for d in range(top + 1)]


Label = Hashable


@dataclass
class RingPresentation:
    """Graded-commutative Z/2-algebra given by a basis and a multiplication table.

    Elements are frozensets of basis labels (a Z/2-linear combination).
    ``table[(x, y)]`` is the product of basis elements ``x`` and ``y``; missing
    entries are zero.
    """

    basis: tuple[tuple[Label, ...], ...]
    table: dict[tuple[Label, Label], frozenset]
    unit: Label
    _degree: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        self._degree = {x: d for d, labels in enumerate(self.basis) for x in labels}
        if len(self._degree) != sum(len(b) for b in self.basis):
            raise InputError("basis labels must be distinct")
        if not self.basis or self.unit not in self.basis[0]:
            raise InputError("unit must be a degree-0 basis element")

    def degree(self, x: Label) -> int:
        return self._degree[x]

    @property
    def labels(self) -> list[Label]:
        return [x for b in self.basis for x in b]

    @property
    def top_degree(self) -> int:
        return max((d for d, b in enumerate(self.basis) if b), default=0)

    def mul(self, a: Iterable[Label], b: Iterable[Label]) -> frozenset:
        out: set = set()
        b = list(b)
        for x in a:
            for y in b:
                out ^= self.table.get((x, y), frozenset())
        return frozenset(out)

    def check(self) -> list[str]:
        """Table-level ring axioms; returns a list of violations (empty if none)."""
        problems = []
        labels = self.labels
        one = frozenset([self.unit])
        for x in labels:
            e = frozenset([x])
            if self.mul(one, e) != e or self.mul(e, one) != e:
                problems.append(f"unit does not act as identity on {x!r}")
        for x, y in product(labels, repeat=2):
            xy = self.table.get((x, y), frozenset())
            if xy != self.table.get((y, x), frozenset()):
                problems.append(f"{x!r}*{y!r} is not commutative")
            for z in xy:
                if self.degree(z) != self.degree(x) + self.degree(y):
                    problems.append(f"{x!r}*{y!r} is not homogeneous of the expected degree")
        for x, y, z in product(labels, repeat=3):
            ex, ey, ez = frozenset([x]), frozenset([y]), frozenset([z])
            if self.mul(self.mul(ex, ey), ez) != self.mul(ex, self.mul(ey, ez)):
                problems.append(f"({x!r}*{y!r})*{z!r} is not associative")
        return problems


def _cup(K: SimplicialComplex, p: int, f: int, q: int, g: int) -> int:
    """Cup product of cochains: (f u g)(v0..v_{p+q}) = f(v0..vp) g(vp..v_{p+q})."""
    lower_p = {s: i for i, s in enumerate(K.simplices(p))}
    lower_q = {s: i for i, s in enumerate(K.simplices(q))}
    out = 0
    for j, t in enumerate(K.simplices(p + q)):
        if f >> lower_p[t[: p + 1]] & 1 and g >> lower_q[t[p:]] & 1:
            out |= 1 << j
    return out


def _label(d: int, j: int) -> str:
    return "1" if (d, j) == (0, 0) else f"x{d}_{j}"


def cohomology_ring_z2(K: SimplicialComplex) -> RingPresentation:
    """H*(K; Z/2) with the simplicial cup product.

    Degree-d classes are represented by cocycles chosen by lowest-index
    pivoting after coboundaries; in degree 0 the constant cocycle comes first
    so that it is the unit ``"1"``. Other classes are labelled ``x{d}_{j}``.
    """
    if not K.facets:
        raise InputError("cohomology of the empty complex is not supported")
    top = K.top_dim
    reps: list[list[int]] = []
    reducers: list[gf2.Reducer] = []
    for d in range(top + 1):
        red = gf2.Reducer()
        if d > 0:
            for b in _coboundary_images(K, d - 1):
                red.insert(b)
        cocycles = gf2.kernel(_coboundary_images(K, d))
        if d == 0:
            cocycles = [(1 << len(K.simplices(0))) - 1] + cocycles
        chosen = []
        for z in cocycles:
            if red.insert(z, 1 << len(chosen)):
                chosen.append(z)
        reps.append(chosen)
        reducers.append(red)

    basis = tuple(tuple(_label(d, j) for j in range(len(reps[d]))) for d in range(top + 1))
    table: dict[tuple[str, str], frozenset] = {}
    for p, q in product(range(top + 1), repeat=2):
        if p + q > top:
            continue
        for i, f in enumerate(reps[p]):
            for j, g in enumerate(reps[q]):
                c = _cup(K, p, f, q, g)
                if not c:
                    continue
                residual, coords = reducers[p + q].reduce(c)
                assert residual == 0, "cup product of cocycles must be a cocycle"
                if coords:
                    table[(_label(p, i), _label(q, j))] = frozenset(
                        _label(p + q, k) for k in gf2.bits(coords)
                    )
    return RingPresentation(basis, table, "1")


def ring_to_dict(R: RingPresentation) -> dict:
    """Plain-data view of a ring with string labels (for JSON output)."""
    return {
        "basis": [list(map(str, b)) for b in R.basis],
        "unit": str(R.unit),
        "products": [
            [str(x), str(y), sorted(map(str, v))]
            for (x, y), v in sorted(R.table.items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1])))
            if v
        ],
    }


def tensor_square(R: RingPresentation) -> RingPresentation:
    """R (x) R with basis pairs ``(x, y)`` and (x(x)y)(x'(x)y') = xx' (x) yy'.

    Over Z/2 the Koszul sign is invisible.
    """
    top = R.top_degree
    basis = []
    for t in range(2 * top + 1):
        basis.append(tuple(
            (x, y)
            for p in range(max(0, t - top), min(t, top) + 1)
            for x in (R.basis[p] if p < len(R.basis) else ())
            for y in (R.basis[t - p] if t - p < len(R.basis) else ())
        ))
    labels = R.labels
    table = {}
    for x, y, x2, y2 in product(labels, repeat=4):
        left = R.table.get((x, x2))
        right = R.table.get((y, y2))
        if left and right:
            table[((x, y), (x2, y2))] = frozenset(product(left, right))
    return RingPresentation(tuple(basis), table, (R.unit, R.unit))


def zero_divisors(R: RingPresentation) -> list[frozenset]:
    """Basis of the positive-degree part of ker(R (x) R -> R), degree by degree."""
    out = []
    for t in range(1, 2 * R.top_degree + 1):
        domain = [(x, y) for p in range(t + 1) if p < len(R.basis)
                  for x in R.basis[p] for y in (R.basis[t - p] if t - p < len(R.basis) else ())]
        target = {z: i for i, z in enumerate(R.basis[t])} if t < len(R.basis) else {}
        images = []
        for x, y in domain:
            v = 0
            for z in R.table.get((x, y), ()):
                v ^= 1 << target[z]
            images.append(v)
        for k in gf2.kernel(images):
            out.append(frozenset(domain[i] for i in gf2.bits(k)))
    return out


def zcl_witness(R: RingPresentation, max_factors: int | None = None) -> list[frozenset]:
    """Longest nonzero product of zero-divisor basis elements, as its list of factors.

    The search is exhaustive over products (with repetition) of the basis
    returned by ``zero_divisors``; every factor has positive degree, so products
    longer than twice the top degree vanish and the search terminates.
    """
    T = tensor_square(R)
    zd = zero_divisors(R)
    best: list[frozenset] = []
    # level r: distinct nonzero products of r factors, each with one factor list
    level = {frozenset([T.unit]): []}
    r = 0
    while level and (max_factors is None or r < max_factors):
        nxt: dict[frozenset, list[frozenset]] = {}
        for value, factors in level.items():
            for z in zd:
                prod_ = T.mul(value, z)
                if prod_ and prod_ not in nxt:
                    nxt[prod_] = factors + [z]
        r += 1
        if nxt:
            best = next(iter(nxt.values()))
        level = nxt
    return best


def zero_divisor_cup_length(R: RingPresentation, max_factors: int | None = None) -> int:
    return len(zcl_witness(R, max_factors))
