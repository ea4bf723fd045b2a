"""Cech complexes and filtrations of Euclidean point configurations.

A subset spans a simplex at radius r exactly when its minimum enclosing
ball has radius at most r (closed balls, so boundary contact counts).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _kernels
from ._bits import proper_submasks
from .complexes import SimplicialComplex
from .geometry import EPS_GEO, PointConfig, RanPoint

#: above this many points a dimension cap becomes mandatory (2^n subsets)
UNCAPPED_POINTS = 8


def _subset_size_cap(n_points: int, max_dim: int | None) -> int:
    if max_dim is None:
        if n_points > UNCAPPED_POINTS:
            raise ValueError(
                f"configurations with more than {UNCAPPED_POINTS} points require max_dim"
            )
        return n_points
    if max_dim < 0:
        raise ValueError("max_dim must be >= 0")
    return min(n_points, max_dim + 1)


def subset_radii(config: PointConfig, max_dim: int | None = None) -> list[tuple[int, float]]:
    """(mask, critical radius) for every subset of 2..max_dim+1 points."""
    return _kernels.subset_meb_radii(config.points, _subset_size_cap(len(config), max_dim))


def cech_complex(x: RanPoint, max_dim: int | None = None, eps: float = EPS_GEO) -> SimplicialComplex:
    """Cech complex of a configuration at its radius.

    Vertex i is the i-th configuration point; a subset is a simplex when
    its enclosing-ball radius is at most ``radius + eps``.  An explicit
    downward closure guards against last-ulp rounding of the subset scan.
    """
    n = len(x.config)
    masks = {1 << i for i in range(n)}
    for mask, radius in subset_radii(x.config, max_dim):
        if radius <= x.radius + eps:
            masks.add(mask)
            masks.update(proper_submasks(mask))
    return SimplicialComplex.from_masks(n, masks)


@dataclass(frozen=True)
class Filtration:
    """Nested Cech complexes of one configuration, one per radius interval.

    ``critical_radii[i]`` opens the half-open interval on which
    ``complexes[i]`` is the Cech complex (closed on the left: a simplex is
    present at exactly its critical radius).
    """

    config: PointConfig
    critical_radii: tuple[float, ...]
    complexes: tuple[SimplicialComplex, ...]

    def __post_init__(self):
        if len(self.critical_radii) != len(self.complexes):
            raise ValueError("one complex per critical radius required")
        for a, b in zip(self.complexes, self.complexes[1:]):
            if not set(a.simplices) <= set(b.simplices):
                raise ValueError("filtration complexes must be nested")

    def complex_at(self, r: float) -> SimplicialComplex:
        idx = 0
        for i, c in enumerate(self.critical_radii):
            if c <= r:
                idx = i
            else:
                break
        return self.complexes[idx]

    def to_json_dict(self) -> dict:
        return {
            "points": self.config.to_json_dict(),
            "critical_radii": list(self.critical_radii),
            "complexes": [c.to_json_dict() for c in self.complexes],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Filtration":
        return cls(
            PointConfig.from_json_dict(data["points"]),
            tuple(float(r) for r in data["critical_radii"]),
            tuple(SimplicialComplex.from_json_dict(c) for c in data["complexes"]),
        )


def cech_filtration(config: PointConfig, max_dim: int | None = None,
                    eps: float = EPS_GEO) -> Filtration:
    """All Cech complexes of a configuration, indexed by critical radius.

    Critical radii are the distinct subset enclosing-ball radii (0 included
    for the vertices), deduplicated within ``eps``; each stored complex is
    evaluated at the midpoint of its interval.
    """
    radii = sorted({0.0} | {max(r, 0.0) for _, r in subset_radii(config, max_dim)})
    criticals: list[float] = []
    for r in radii:
        if not criticals or r > criticals[-1] + eps:
            criticals.append(r)
    complexes = []
    for i, c in enumerate(criticals):
        mid = 0.5 * (c + criticals[i + 1]) if i + 1 < len(criticals) else c + 0.5
        complexes.append(cech_complex(RanPoint(config, mid), max_dim, eps))
    return Filtration(config, tuple(criticals), tuple(complexes))


__all__ = [
    "Filtration",
    "cech_complex",
    "cech_filtration",
    "subset_radii",
    "UNCAPPED_POINTS",
]
