"""Exit criteria for the package.

Each test carries ``@pytest.mark.criterion(n, label)``; the conftest hook prints
one PASS/FAIL line per criterion at the end of the run. Run alone with

    pytest tests/test_acceptance.py -v
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, permutations

import networkx as nx
import pytest

from conftest import torus7, triangle_boundary, wedge_of_circles
from tcbounds.bounds import INF, RULES, FactBase, Quantity, bounds_for, check_consistency, upper_bounds_from
from tcbounds.catalog import DATA_DIR, load_catalog
from tcbounds.complexes import betti_z2, cohomology_ring_z2, zero_divisor_cup_length
from tcbounds.covers import (
    IndexedFamily,
    PermutationAction,
    covers,
    diagonal_product,
    is_invariant,
    is_k_cover_fast,
    is_k_cover_oracle,
    ostrand_extend,
    product_cover,
    verify_witnesses,
)
from tcbounds.errors import InputError
from tcbounds.formats import load_json, space_from_json
from tcbounds.nerve import FiniteMetricSpace, extend_same_nerve, nerve_of, restrict

SPACES = DATA_DIR / "spaces"


def _space(name: str):
    return space_from_json(load_json(SPACES / name), SPACES)


# -- 1 --------------------------------------------------------------------------------


@pytest.mark.criterion(1, "order criterion: fast check equals brute-force oracle")
def test_order_criterion_equivalence():
    start = time.perf_counter()
    checked = disagreements = 0
    for g in range(1, 6):
        subsets = [frozenset(i for i in range(g) if mask >> i & 1) for mask in range(1 << g)]
        for m in range(1, 5):
            for sets in combinations_with_replacement(subsets, m):
                f = IndexedFamily(tuple(range(g)), sets)
                for k in range(1, m + 1):
                    checked += 1
                    disagreements += is_k_cover_fast(f, k) != is_k_cover_oracle(f, k)
    rng = random.Random(20261016)
    for _ in range(10_000):
        g, m = rng.randint(1, 10), rng.randint(1, 6)
        density = rng.random()
        sets = tuple(frozenset(p for p in range(g) if rng.random() < density) for _ in range(m))
        f = IndexedFamily(tuple(range(g)), sets)
        for k in range(1, m + 1):
            checked += 1
            disagreements += is_k_cover_fast(f, k) != is_k_cover_oracle(f, k)
    elapsed = time.perf_counter() - start
    assert disagreements == 0
    assert elapsed < 60, f"took {elapsed:.1f}s"
    assert checked > 10_000


# -- 2 --------------------------------------------------------------------------------


def _random_action(rng: random.Random, g: int) -> PermutationAction:
    """Random permutation group of order <= 24 on range(g)."""
    while True:
        gens = []
        for _ in range(rng.randint(0, 2)):
            pts = rng.sample(range(g), rng.randint(1, g))
            perm = list(range(g))
            # split the chosen points into cycles of length <= 4
            i = 0
            while i < len(pts):
                cyc = pts[i:i + rng.randint(1, 4)]
                for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                    perm[a] = b
                i += len(cyc)
            gens.append(tuple(perm))
        action = PermutationAction(tuple(range(g)), tuple(gens))
        try:
            action.elements(limit=24)
        except InputError:
            continue
        return action


def _random_invariant_cover(rng: random.Random, action: PermutationAction, n: int) -> IndexedFamily:
    sets = [set() for _ in range(n + 1)]
    for orbit in action.orbits():
        chosen = [i for i in range(n + 1) if rng.random() < 0.4] or [rng.randrange(n + 1)]
        for i in chosen:
            sets[i] |= orbit
    return IndexedFamily(action.points, tuple(frozenset(s) for s in sets), tuple(f"h{i}" for i in range(n + 1)))


@pytest.mark.criterion(2, "Ostrand extension: oracle cover, prefix, witnesses, invariance")
def test_ostrand_extension_random():
    rng = random.Random(2)
    failures = []
    orders_seen = set()
    for trial in range(1000):
        g = rng.randint(1, 12)
        n = rng.randint(0, 3)
        m = rng.randint(n, 10)
        action = _random_action(rng, g)
        elements = action.elements(limit=24)
        orders_seen.add(len(elements))
        f = _random_invariant_cover(rng, action, n)
        out = ostrand_extend(f, n, m, action)
        ok = (
            len(out) == m + 1
            and out.sets[: n + 1] == f.sets
            and is_k_cover_oracle(out, n + 1)
            and verify_witnesses(out)
            and all(frozenset(e[i] for i in s) == s for e in elements for s in out.sets[n + 1:])
            and is_invariant(out, action)
        )
        if not ok:
            failures.append(trial)
    assert failures == []
    assert max(orders_seen) > 1


# -- 3 --------------------------------------------------------------------------------


def _profile_families(s: int, min_size: int, max_points: int):
    """Sets of distinct membership profiles (bitmasks over s indices) of size >= min_size."""
    profiles = [p for p in range(1 << s) if bin(p).count("1") >= min_size]
    for j in range(1, max_points + 1):
        yield from combinations(profiles, j)


def _canonical(profiles: tuple[int, ...], s: int) -> tuple[int, ...]:
    best = None
    for perm in permutations(range(s)):
        image = tuple(sorted(sum(1 << perm[i] for i in range(s) if p >> i & 1) for p in profiles))
        if best is None or image < best:
            best = image
    return best


def _family(profiles: tuple[int, ...], s: int) -> IndexedFamily:
    return IndexedFamily(
        tuple(range(len(profiles))),
        tuple(frozenset(i for i, p in enumerate(profiles) if p >> k & 1) for k in range(s)),
    )


@pytest.mark.criterion(3, "pigeonhole product covers; s = n+m counterexample rejected")
def test_pigeonhole_product_exhaustive():
    # Coverage of (a, b) only depends on the index sets holding a and b, so a
    # family over <= 4 points is a set of <= 4 distinct profiles. Permuting the
    # indices of both families at once preserves coverage, so famA runs over
    # canonical representatives only.
    checked = 0
    for s in range(1, 6):
        for n in range(s):
            m = s - 1 - n
            reps = {_canonical(pa, s) for pa in _profile_families(s, s - n, 4)}
            fams_b = [_family(pb, s) for pb in _profile_families(s, s - m, 4)]
            for pa in sorted(reps):
                fa = _family(pa, s)
                assert is_k_cover_fast(fa, n + 1)
                for fb in fams_b:
                    assert covers(product_cover(fa, n, fb, m)), (pa, fb)
                    checked += 1
    assert checked > 0

    a = IndexedFamily.from_ids([0, 1], [[0], [1]])
    b = IndexedFamily.from_ids(["x", "y"], [["x"], ["y"]])
    with pytest.raises(InputError):
        product_cover(a, 1, b, 1)
    diag = diagonal_product(a, b)
    assert not covers(diag)
    assert not any(diag.index_of((0, "y")) in w for w in diag.sets)


# -- 4 --------------------------------------------------------------------------------


def _graph_metric(rng: random.Random, n: int) -> FiniteMetricSpace:
    """Shortest-path metric of a random connected graph with rational weights."""
    G = nx.random_labeled_tree(n, seed=rng.randrange(2**32))
    if n > 1:
        G.add_edges_from(rng.sample(range(n), 2) for _ in range(rng.randint(0, n)))
    for u, v in G.edges:
        G.edges[u, v]["w"] = Fraction(rng.randint(1, 12), rng.randint(1, 4))
    d = dict(nx.all_pairs_dijkstra_path_length(G, weight="w"))
    return FiniteMetricSpace(tuple(range(n)), tuple(tuple(Fraction(d[i][j]) for j in range(n)) for i in range(n)))


def _random_space(rng: random.Random) -> FiniteMetricSpace:
    n = rng.randint(1, 12)
    if rng.random() < 0.5:
        return _graph_metric(rng, n)
    coords = rng.sample([(x, y) for x in range(8) for y in range(8)], n)
    return FiniteMetricSpace.from_coordinates(coords)


@pytest.mark.criterion(4, "nerve extension: restriction and nerve preserved")
def test_nerve_extension_random():
    rng = random.Random(4)
    failures = []
    for trial in range(1000):
        X = _random_space(rng)
        A = sorted(rng.sample(X.points, rng.randint(1, len(X.points))))
        m = rng.randint(1, 5)
        sets = [set() for _ in range(m)]
        for a in A:
            for k in rng.sample(range(m), rng.randint(1, m)):
                sets[k].add(a)
        rel = IndexedFamily.from_ids(A, [sorted(s) for s in sets])
        V = extend_same_nerve(X, A, rel)
        if restrict(V, A).sets != rel.sets or nerve_of(V) != nerve_of(rel):
            failures.append(trial)
    assert failures == []


# -- 5 --------------------------------------------------------------------------------


@pytest.mark.criterion(5, "cohomology fixtures: Betti numbers and zcl")
def test_cohomology_fixtures():
    start = time.perf_counter()
    got = {}
    for name, K in (("circle", triangle_boundary()), ("wedge2", wedge_of_circles(2)), ("torus", torus7())):
        got[name] = (betti_z2(K), zero_divisor_cup_length(cohomology_ring_z2(K)))
    elapsed = time.perf_counter() - start
    assert got == {"circle": ([1, 1], 1), "wedge2": ([1, 2], 2), "torus": ([1, 2, 1], 2)}
    assert elapsed < 10, f"took {elapsed:.1f}s"


# -- 6 --------------------------------------------------------------------------------


def _tc(report: FactBase, name: str):
    iv = report.interval(Quantity("TC_space", name))
    return iv.lo, iv.hi


@pytest.mark.criterion(6, "engine reproduces torus, wedge and S1vS2 values")
def test_engine_values():
    torus = bounds_for(_space("torus.json"))
    wedge = bounds_for(_space("wedge2circles.json"))
    s1vs2 = bounds_for(_space("s1vs2.json"))
    assert _tc(torus, "torus") == (2, 2)
    assert _tc(wedge, "wedge2circles") == (2, 2)
    assert _tc(s1vs2, "S1vS2") == (2, 3)
    q = Quantity("TC_space", "S1vS2")
    r5 = min(e.hi for e in upper_bounds_from(s1vs2, q, ["R5"]))
    r6 = min(e.hi for e in upper_bounds_from(s1vs2, q, ["R6"]))
    assert r6 < r5


# -- 7 --------------------------------------------------------------------------------


@pytest.mark.criterion(7, "route equivalence: R8 with R10 equals R6")
def test_route_equivalence():
    desc = _space("s1vs2_twisted.json")
    report = bounds_for(desc)
    q = Quantity("TC_space", desc.name)
    via8 = upper_bounds_from(report, q, ["R8"])
    via6 = upper_bounds_from(report, q, ["R6"])
    assert via8 and via6
    assert min(e.hi for e in via8) == min(e.hi for e in via6)
    fiber = desc.structure.fiber.name
    assert any(e.rule == "R10" and e.target.kind == "TCGstar" and e.target.subject.startswith(fiber)
               for e in report.trace)


# -- 8 --------------------------------------------------------------------------------


@pytest.mark.criterion(8, "soundness: zcl below every rule upper bound, traces replay, order-free fixpoints")
def test_engine_soundness():
    rng = random.Random(8)
    entries = load_catalog()
    with_complex = 0
    for entry in entries:
        report = bounds_for(entry.descriptor)
        check_consistency(report)
        check_consistency(FactBase.from_json(report.to_json()))
        for _ in range(5):
            order = list(RULES)
            rng.shuffle(order)
            assert bounds_for(entry.descriptor, order).facts == report.facts
        K = entry.descriptor.complex
        if K is None:
            continue
        with_complex += 1
        zcl = zero_divisor_cup_length(cohomology_ring_z2(K))
        q = Quantity("TC_space", entry.descriptor.name)
        his = [e.hi for e in upper_bounds_from(report, q) if e.rule not in ("assert", "R11")]
        assert all(zcl <= h for h in his), (entry.name, zcl, his)
        assert report.interval(q).hi == INF or zcl <= report.interval(q).hi
    assert with_complex >= 5
