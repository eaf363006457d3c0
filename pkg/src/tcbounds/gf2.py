"""Linear algebra over the two-element field.

Vectors are Python ints used as bit sets (bit j = coordinate j). Pivoting
always uses the lowest set bit so that every basis choice is reproducible.
"""

from __future__ import annotations

from bisect import insort
from typing import Iterable


def low_bit(v: int) -> int:
    return (v & -v).bit_length() - 1


def bits(v: int) -> list[int]:
    out = []
    while v:
        b = v & -v
        out.append(b.bit_length() - 1)
        v ^= b
    return out


class Reducer:
    """Incremental echelon basis with a tag recording how each row was formed.

    ``insert`` adds a vector (if independent) together with a tag; ``reduce``
    returns the residual of a vector and the XOR of the tags of the rows used.
    """

    def __init__(self) -> None:
        self.rows: dict[int, tuple[int, int]] = {}
        self._pivots: list[int] = []

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: int) -> tuple[int, int]:
        # a row with pivot p only touches bits >= p, so one ascending pass suffices
        tag = 0
        for p in self._pivots:
            if v >> p & 1:
                row, t = self.rows[p]
                v ^= row
                tag ^= t
        return v, tag

    def _store(self, residual: int, tag: int) -> None:
        p = low_bit(residual)
        self.rows[p] = (residual, tag)
        insort(self._pivots, p)

    def insert(self, v: int, tag: int = 0) -> bool:
        """Add ``v``; returns False (and stores nothing) if it is already in the span."""
        residual, t = self.reduce(v)
        if not residual:
            return False
        self._store(residual, tag ^ t)
        return True


def rank(vectors: Iterable[int]) -> int:
    r = Reducer()
    return sum(1 for v in vectors if r.insert(v))


def kernel(images: list[int]) -> list[int]:
    """Basis of the kernel of the map sending basis vector j to ``images[j]``.

    Kernel vectors are returned as bit sets over the domain coordinates.
    """
    r = Reducer()
    basis = []
    for j, img in enumerate(images):
        residual, tag = r.reduce(img)
        if residual:
            r._store(residual, tag ^ (1 << j))
        else:
            basis.append(tag ^ (1 << j))
    return basis
