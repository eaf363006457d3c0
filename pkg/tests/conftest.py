from __future__ import annotations

import pytest

from tcbounds.complexes import SimplicialComplex
from tcbounds.covers import IndexedFamily


def fam(points, *sets, tags=None) -> IndexedFamily:
    """Family from point ids, e.g. ``fam("abc", "ab", "bc")``."""
    return IndexedFamily.from_ids(list(points), [list(s) for s in sets], tags)


def triangle_boundary() -> SimplicialComplex:
    return SimplicialComplex(3, ((0, 1), (0, 2), (1, 2)))


def wedge_of_circles(r: int) -> SimplicialComplex:
    facets = []
    for i in range(r):
        a, b = 2 * i + 1, 2 * i + 2
        facets += [(0, a), (0, b), (a, b)]
    return SimplicialComplex.from_simplices(2 * r + 1, facets)


def torus7() -> SimplicialComplex:
    tris = [(i, (i + 1) % 7, (i + 3) % 7) for i in range(7)]
    tris += [(i, (i + 2) % 7, (i + 3) % 7) for i in range(7)]
    return SimplicialComplex.from_simplices(7, tris)


def s1_wedge_s2() -> SimplicialComplex:
    return SimplicialComplex.from_simplices(
        6, [(0, 1), (1, 2), (0, 2), (0, 3, 4), (0, 3, 5), (0, 4, 5), (3, 4, 5)]
    )


def solid_triangle() -> SimplicialComplex:
    return SimplicialComplex(3, ((0, 1, 2),))


@pytest.fixture
def triangle_family() -> IndexedFamily:
    return fam("abc", "ab", "bc", "ac")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, label): acceptance criterion")


_CRITERIA: dict[int, list] = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, label = marker.args
    _CRITERIA[number] = [label, call.excinfo is None]


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        label, ok = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {label}")
