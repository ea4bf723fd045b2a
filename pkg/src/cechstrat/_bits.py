"""Bitmask helpers for vertex subsets.

Simplices on vertices {0, ..., n-1} are represented internally as integer
masks; these helpers convert between masks and sorted vertex tuples.
"""

from __future__ import annotations

from collections.abc import Iterable


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def vertices_of(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def proper_submasks(mask: int):
    """Nonempty proper submasks of ``mask``."""
    sub = (mask - 1) & mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def facet_submasks(mask: int):
    """Submasks obtained by dropping exactly one vertex."""
    m = mask
    while m:
        low = m & -m
        yield mask ^ low
        m ^= low
