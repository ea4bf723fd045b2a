"""Finite abstract simplicial complexes, simplicial maps, and canonical forms.

Vertices are dense integers ``0..n-1``; a complex stores its full simplex
set (downward closed, every vertex present as a singleton).  Canonical
forms are computed by exhaustive relabeling under a configurable vertex
cap, giving keys that agree exactly on isomorphism classes.
"""

from __future__ import annotations

import functools
from collections.abc import Iterable
from dataclasses import dataclass

from . import _kernels
from ._bits import mask_of, proper_submasks, vertices_of

VERTEX_CAP = 8


class CapExceeded(ValueError):
    """Vertex count exceeds the configured brute-force cap."""


def _normalize_simplices(n_vertices: int, simplices) -> tuple[tuple[int, ...], ...]:
    seen = set()
    for s in simplices:
        t = tuple(sorted(set(int(v) for v in s)))
        if not t:
            raise ValueError("empty simplex is not allowed")
        if t[0] < 0 or t[-1] >= n_vertices:
            raise ValueError(f"simplex {t} has a vertex outside 0..{n_vertices - 1}")
        seen.add(t)
    return tuple(sorted(seen, key=lambda t: (len(t), t)))


@dataclass(frozen=True)
class SimplicialComplex:
    """Abstract simplicial complex on vertices ``0..n_vertices-1``.

    ``simplices`` holds every simplex (not just facets), each as a sorted
    vertex tuple, ordered by dimension then vertex order.  Construction
    validates downward closure and the presence of all singletons.
    """

    n_vertices: int
    simplices: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n_vertices < 0:
            raise ValueError("n_vertices must be nonnegative")
        normalized = _normalize_simplices(self.n_vertices, self.simplices)
        object.__setattr__(self, "simplices", normalized)
        present = set(normalized)
        for v in range(self.n_vertices):
            if (v,) not in present:
                raise ValueError(f"vertex {v} is missing its singleton simplex")
        for s in normalized:
            if len(s) > 1:
                for i in range(len(s)):
                    face = s[:i] + s[i + 1 :]
                    if face not in present:
                        raise ValueError(
                            f"not downward closed: {s} present but face {face} missing"
                        )

    @classmethod
    def from_masks(cls, n_vertices: int, masks: Iterable[int]) -> "SimplicialComplex":
        return cls(n_vertices, tuple(vertices_of(m) for m in masks))

    @functools.cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(sorted(mask_of(s) for s in self.simplices))

    @functools.cached_property
    def simplex_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(self.simplices)

    @property
    def dim(self) -> int:
        return max((len(s) for s in self.simplices), default=0) - 1

    def has_simplex(self, vertices: Iterable[int]) -> bool:
        return tuple(sorted(set(vertices))) in self.simplex_set

    def facets(self) -> tuple[tuple[int, ...], ...]:
        """Maximal simplices, in (dimension, vertex order)."""
        masks = set(self.masks)
        maximal = []
        for s in self.simplices:
            m = mask_of(s)
            if not any(other != m and other & m == m for other in masks):
                maximal.append(s)
        return tuple(maximal)

    def to_json_dict(self) -> dict:
        return {"n_vertices": self.n_vertices, "simplices": [list(s) for s in self.simplices]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "SimplicialComplex":
        n = int(data["n_vertices"])
        if n < 1:
            raise ValueError("complex JSON requires n_vertices >= 1")
        return make_complex(n, data["simplices"])


def make_complex(n_vertices: int, generators: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Downward closure of the generators plus all singletons.

    Rejects ``n_vertices == 0`` and generator vertices outside range.
    """
    if n_vertices < 1:
        raise ValueError("a point configuration is nonempty: n_vertices must be >= 1")
    masks = {1 << v for v in range(n_vertices)}
    for gen in generators:
        m = mask_of(set(int(v) for v in gen))
        if m == 0:
            continue
        if m >= (1 << n_vertices) or m < 0:
            raise ValueError(f"generator {sorted(set(gen))} has a vertex outside 0..{n_vertices - 1}")
        masks.add(m)
        masks.update(proper_submasks(m))
    return SimplicialComplex.from_masks(n_vertices, masks)


@dataclass(frozen=True)
class SimplicialMap:
    """Total vertex map between two complexes.

    Simpliciality (every simplex image is a simplex) is the defining
    property checked by :func:`is_simplicial`; the constructor validates
    only totality and range so that candidate maps can be tested.
    """

    source: SimplicialComplex
    target: SimplicialComplex
    vertex_map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertex_map", tuple(int(v) for v in self.vertex_map))
        if len(self.vertex_map) != self.source.n_vertices:
            raise ValueError("vertex_map must assign every source vertex")
        for w in self.vertex_map:
            if w < 0 or w >= self.target.n_vertices:
                raise ValueError(f"vertex image {w} outside 0..{self.target.n_vertices - 1}")

    def image_simplex(self, simplex: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted({self.vertex_map[v] for v in simplex}))

    def is_vertex_surjective(self) -> bool:
        return len(set(self.vertex_map)) == self.target.n_vertices

    def to_json_dict(self) -> dict:
        return {
            "source": self.source.to_json_dict(),
            "target": self.target.to_json_dict(),
            "vertex_map": list(self.vertex_map),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "SimplicialMap":
        return cls(
            SimplicialComplex.from_json_dict(data["source"]),
            SimplicialComplex.from_json_dict(data["target"]),
            tuple(data["vertex_map"]),
        )


def is_simplicial(m: SimplicialMap) -> bool:
    """True iff every source simplex maps onto a target simplex."""
    tgt = m.target.simplex_set
    return all(m.image_simplex(s) in tgt for s in m.source.simplices)


def identity_map(c: SimplicialComplex) -> SimplicialMap:
    return SimplicialMap(c, c, tuple(range(c.n_vertices)))


def compose(f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    """The map ``g after f``; requires ``f.target == g.source``."""
    if f.target != g.source:
        raise ValueError("cannot compose: middle complexes differ")
    return SimplicialMap(f.source, g.target, tuple(g.vertex_map[w] for w in f.vertex_map))


@dataclass(frozen=True)
class IsoClass:
    """Isomorphism class of a complex, held by a canonical representative.

    Two complexes have equal ``key`` exactly when they are isomorphic.
    """

    canonical: SimplicialComplex
    key: bytes

    @property
    def key_hex(self) -> str:
        return self.key.hex()

    @property
    def n_vertices(self) -> int:
        return self.canonical.n_vertices

    def to_json_dict(self) -> dict:
        return {"complex": self.canonical.to_json_dict(), "key": self.key_hex}


@functools.lru_cache(maxsize=65536)
def _canonical_cached(n: int, masks: tuple[int, ...]) -> tuple[tuple[int, ...], bytes]:
    canon = _kernels.canonical_masks(n, masks)
    key = bytes([n]) + b"".join(m.to_bytes(2, "big") for m in canon)
    return canon, key


def canonical_form(c: SimplicialComplex, cap: int = VERTEX_CAP) -> IsoClass:
    """Canonical representative and key under vertex relabeling.

    Brute force over all relabelings; complexes above ``cap`` vertices are
    rejected rather than silently taking factorial time.
    """
    if c.n_vertices > cap:
        raise CapExceeded(f"canonical form needs {c.n_vertices} vertices > cap {cap}")
    canon, key = _canonical_cached(c.n_vertices, c.masks)
    return IsoClass(SimplicialComplex.from_masks(c.n_vertices, canon), key)


def are_isomorphic(a: SimplicialComplex, b: SimplicialComplex, cap: int = VERTEX_CAP) -> bool:
    if a.n_vertices != b.n_vertices:
        return False
    return canonical_form(a, cap).key == canonical_form(b, cap).key
