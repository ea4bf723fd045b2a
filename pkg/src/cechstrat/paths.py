"""Piecewise-linear paths of point configurations and their zigzags.

A path is a bundle of labeled tracks over shared breakpoints plus a
piecewise-linear radius.  Tracks may merge (and must then stay merged to
the end of the segment), so the induced configuration path is well
defined.  Transition instants are located by scanning and bisection; each
instant gets entrance maps from both neighboring intervals, assembling a
zigzag of vertex-surjective simplicial maps.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

from .cech import Filtration, cech_complex
from .complexes import (
    IsoClass,
    SimplicialComplex,
    SimplicialMap,
    compose,
    identity_map,
    is_simplicial,
)
from .geometry import DELTA_PT, EPS_GEO, PointConfig, RanPoint, sup_distance
from .scposet import dominates
from .strat import StratumLabel, local_map, stratum_label, tilde_r

_BRACKET_FLOOR = 1e-13


@dataclass(frozen=True)
class PLPath:
    """Track bundle: k piecewise-linear maps [0,1] -> R^dim over shared
    breakpoints, plus a piecewise-linear nonnegative radius.

    Tracks that come within the dedupe tolerance inside a segment must
    remain within it until the segment ends (merges are allowed anywhere,
    splits only at breakpoints), keeping the configuration path and its
    track-to-vertex assignment well defined.
    """

    dim: int
    breakpoints: tuple[float, ...]
    tracks: tuple[tuple[tuple[float, ...], ...], ...]
    radius: tuple[float, ...]

    def __post_init__(self):
        bp = tuple(float(t) for t in self.breakpoints)
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(
            self,
            "tracks",
            tuple(tuple(tuple(float(c) for c in p) for p in tr) for tr in self.tracks),
        )
        object.__setattr__(self, "radius", tuple(float(r) for r in self.radius))
        if len(bp) < 2 or bp[0] != 0.0 or bp[-1] != 1.0:
            raise ValueError("breakpoints must run from 0.0 to 1.0")
        if any(a >= b for a, b in zip(bp, bp[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if not self.tracks:
            raise ValueError("at least one track is required")
        for tr in self.tracks:
            if len(tr) != len(bp):
                raise ValueError("each track needs one waypoint per breakpoint")
            for p in tr:
                if len(p) != self.dim:
                    raise ValueError(f"waypoint {p} does not have dimension {self.dim}")
        if len(self.radius) != len(bp):
            raise ValueError("radius needs one value per breakpoint")
        if any(r < 0.0 for r in self.radius):
            raise ValueError("radius must be nonnegative")
        self._check_merge_persistence()

    def _check_merge_persistence(self):
        k = len(self.tracks)
        for seg in range(len(self.breakpoints) - 1):
            for i in range(k):
                for j in range(i + 1, k):
                    a = [self.tracks[i][seg][c] - self.tracks[j][seg][c] for c in range(self.dim)]
                    b = [
                        self.tracks[i][seg + 1][c] - self.tracks[j][seg + 1][c]
                        for c in range(self.dim)
                    ]
                    d_start = math.hypot(*a)
                    d_end = math.hypot(*b)
                    if d_start <= DELTA_PT or d_end <= DELTA_PT:
                        # merged at an endpoint: merging into, out of (only at
                        # the starting breakpoint), or through is fine
                        continue
                    # distance along the segment is convex; its minimum is at
                    # an endpoint or at the projection parameter
                    diff = [bb - aa for aa, bb in zip(a, b)]
                    denom = sum(x * x for x in diff)
                    d_min = min(d_start, d_end)
                    if denom > 0.0:
                        u = -sum(x * y for x, y in zip(a, diff)) / denom
                        if 0.0 < u < 1.0:
                            mid = [aa + u * x for aa, x in zip(a, diff)]
                            d_min = min(d_min, math.hypot(*mid))
                    if d_min <= DELTA_PT:
                        raise ValueError(
                            f"tracks {i} and {j} touch inside segment {seg} but "
                            "separate before its end; merges must persist and "
                            "splits are only allowed at breakpoints"
                        )

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "breakpoints": list(self.breakpoints),
            "tracks": [[list(p) for p in tr] for tr in self.tracks],
            "radius": list(self.radius),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "PLPath":
        return cls(
            int(data["dim"]),
            tuple(data["breakpoints"]),
            tuple(tuple(tuple(p) for p in tr) for tr in data["tracks"]),
            tuple(data["radius"]),
        )


def _evaluate_tracks(path: PLPath, t: float) -> tuple[RanPoint, tuple[int, ...]]:
    """Configuration at time t plus the track -> vertex assignment."""
    if not (0.0 <= t <= 1.0):
        raise ValueError(f"path parameter {t} outside [0, 1]")
    bp = path.breakpoints
    seg = min(bisect.bisect_right(bp, t), len(bp) - 1) - 1
    u = (t - bp[seg]) / (bp[seg + 1] - bp[seg])
    positions = []
    for tr in path.tracks:
        a, b = tr[seg], tr[seg + 1]
        positions.append(tuple(aa + u * (bb - aa) for aa, bb in zip(a, b)))
    radius = path.radius[seg] + u * (path.radius[seg + 1] - path.radius[seg])

    # union-find dedupe of coincident tracks
    parent = list(range(len(positions)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(positions)):
        for j in range(i + 1, len(positions)):
            if math.dist(positions[i], positions[j]) <= DELTA_PT:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    vertex_of_root: dict[int, int] = {}
    points = []
    assignment = []
    for i in range(len(positions)):
        root = find(i)
        if root not in vertex_of_root:
            vertex_of_root[root] = len(points)
            points.append(positions[root])
        assignment.append(vertex_of_root[root])
    return RanPoint(PointConfig(path.dim, tuple(points)), max(radius, 0.0)), tuple(assignment)


def evaluate(path: PLPath, t: float) -> RanPoint:
    """Configuration-radius pair at time t, coincident tracks merged."""
    return _evaluate_tracks(path, t)[0]


def _lower_label(a: StratumLabel, b: StratumLabel):
    """The label dominated by the other, preferring degenerate refinements
    on class ties; None when the two are incomparable."""
    if a.cls.key == b.cls.key:
        if a.degenerate and not b.degenerate:
            return a
        if b.degenerate and not a.degenerate:
            return b
        return a
    a_over_b = dominates(a.cls.canonical, b.cls.canonical) is not None
    b_over_a = dominates(b.cls.canonical, a.cls.canonical) is not None
    if a_over_b and not b_over_a:
        return b
    if b_over_a and not a_over_b:
        return a
    return None


def _resolve(label_fn, lo, hi, l_lo, l_hi):
    """Transition events inside a bracket with differing endpoint labels.

    Bisects toward the boundary; a label distinct from both endpoints
    splits the bracket (sub-resolution stratum), otherwise the jump point
    is taken on the side whose label is dominated by the other (the
    entrance-path convention: the instant carries the lower label).
    """
    while hi - lo > _BRACKET_FLOOR:
        mid = 0.5 * (lo + hi)
        if not (lo < mid < hi):
            break
        l_mid = label_fn(mid)
        if l_mid == l_lo:
            lo = mid
        elif l_mid == l_hi:
            hi = mid
        else:
            return _resolve(label_fn, lo, mid, l_lo, l_mid) + _resolve(
                label_fn, mid, hi, l_mid, l_hi
            )
    low = _lower_label(l_lo, l_hi)
    if low is None:
        raise ValueError(
            "transition between incomparable labels: the instant label "
            "dominates neither side"
        )
    return [(lo, l_lo) if low is l_lo else (hi, l_hi)]


def transitions(path: PLPath, resolution: float, max_dim: int | None = None,
                eps: float = EPS_GEO, cap: int = 8) -> list[tuple[float, StratumLabel]]:
    """Instants where the refined stratum label changes, with the label at
    each instant.

    Scans at steps of at most ``resolution`` (label excursions narrower
    than a step between equal labels can be missed), then bisects each
    change to within ``resolution * 1e-3``.  Every reported transition is
    real: the labels on its two sides differ.
    """
    if resolution <= 0.0:
        raise ValueError("resolution must be positive")
    cache: dict[float, StratumLabel] = {}

    def label_fn(t: float) -> StratumLabel:
        if t not in cache:
            cache[t] = stratum_label(evaluate(path, t), max_dim, eps, cap)
        return cache[t]

    steps = max(1, math.ceil(1.0 / resolution))
    grid = [k / steps for k in range(steps + 1)]
    target = resolution * 1e-3
    events: list[tuple[float, StratumLabel]] = []
    for t0, t1 in zip(grid, grid[1:]):
        l0, l1 = label_fn(t0), label_fn(t1)
        if l0 != l1:
            events.extend(_resolve(label_fn, t0, t1, l0, l1))

    # collapse event clusters inside the localization width: equal labels
    # average out; a dominated neighbor absorbs the higher one (stacked
    # tolerance-band crossings count as one instant at the lowest stratum)
    merged: list[tuple[float, StratumLabel]] = []
    for t, lbl in events:
        if merged and t - merged[-1][0] <= target:
            t0, l0 = merged[-1]
            if l0 == lbl:
                mid = 0.5 * (t0 + t)
                if label_fn(mid) == lbl:
                    merged[-1] = (mid, lbl)
                    continue
            else:
                low = _lower_label(l0, lbl)
                if low is lbl:
                    merged[-1] = (t, lbl)
                    continue
                if low is l0:
                    continue
        merged.append((t, lbl))
    return merged


def _renaming_map(path: PLPath, t_from: float, t_to: float, max_dim, eps) -> SimplicialMap:
    """Vertex renaming induced by following the tracks along a stretch with
    constant label."""
    rp_a, asn_a = _evaluate_tracks(path, t_from)
    rp_b, asn_b = _evaluate_tracks(path, t_to)
    n_a = len(rp_a.config)
    vmap: list[int | None] = [None] * n_a
    for track, v in enumerate(asn_a):
        w = asn_b[track]
        if vmap[v] is None:
            vmap[v] = w
        elif vmap[v] != w:
            raise ValueError(
                f"tracks split between t={t_from} and t={t_to}; label constancy violated"
            )
    if any(v is None for v in vmap):
        raise ValueError("some vertex lost all its tracks; label constancy violated")
    m = SimplicialMap(
        cech_complex(rp_a, max_dim, eps),
        cech_complex(rp_b, max_dim, eps),
        tuple(vmap),  # type: ignore[arg-type]
    )
    if not m.is_vertex_surjective():
        raise ValueError("renaming map is not onto; label constancy violated")
    if not is_simplicial(m):
        raise ValueError("renaming map is not simplicial; label constancy violated")
    return m


def entrance_map(path: PLPath, t_from: float, t_to: float, max_dim: int | None = None,
                 eps: float = EPS_GEO, cap: int = 8, samples: int = 32) -> SimplicialMap:
    """Simplicial map induced by traversing the path from t_from to t_to.

    Requires the refined label to be constant on the half-open stretch
    [t_from, t_to) (spot-checked by sampling); the label may drop at t_to.
    Built as a track renaming along the constant stretch composed with the
    snap map on a terminal stretch inside the safe ball of the endpoint.
    Works in either time direction.
    """
    if not (0.0 <= t_from <= 1.0 and 0.0 <= t_to <= 1.0):
        raise ValueError("path parameters must lie in [0, 1]")
    if t_from == t_to:
        return identity_map(cech_complex(evaluate(path, t_from), max_dim, eps))
    l_from = stratum_label(evaluate(path, t_from), max_dim, eps, cap)
    for k in range(samples):
        t = t_from + (t_to - t_from) * k / samples
        if stratum_label(evaluate(path, t), max_dim, eps, cap) != l_from:
            raise ValueError(
                f"label is not constant on [{t_from}, {t_to}): changes near t={t}"
            )
    l_to = stratum_label(evaluate(path, t_to), max_dim, eps, cap)
    if l_to == l_from:
        return _renaming_map(path, t_from, t_to, max_dim, eps)

    end = evaluate(path, t_to)
    ball = tilde_r(end, max_dim, eps)
    tau = None
    h = t_to - t_from
    for _ in range(80):
        h *= 0.5
        cand = t_to - h
        if cand == t_to:
            break
        if sup_distance(evaluate(path, cand), end) < ball.safe_radius:
            tau = cand
            break
    if tau is None:
        raise ValueError(
            "terminal stretch cannot fit inside the safe ball at the requested resolution"
        )
    renaming = _renaming_map(path, t_from, tau, max_dim, eps)
    return compose(renaming, local_map(evaluate(path, tau), end, max_dim, eps))


@dataclass(frozen=True)
class ZigzagDiagram:
    """Alternating intervals and transition instants along a path.

    For transition k the stored pair of maps points from the two
    neighboring interval complexes into the instant complex; every stored
    map is simplicial and vertex-surjective, so each interval class
    dominates the adjacent transition class.
    """

    times: tuple[float, ...]
    interval_classes: tuple[StratumLabel, ...]
    transition_classes: tuple[StratumLabel, ...]
    maps: tuple[tuple[SimplicialMap, SimplicialMap], ...]

    def __post_init__(self):
        q = len(self.times)
        if len(self.transition_classes) != q or len(self.maps) != q:
            raise ValueError("one transition class and map pair per instant")
        if len(self.interval_classes) != q + 1:
            raise ValueError("need one more interval class than instants")
        for left, right in self.maps:
            for m in (left, right):
                if not is_simplicial(m) or not m.is_vertex_surjective():
                    raise ValueError("zigzag maps must be simplicial and vertex-surjective")

    def to_json_dict(self) -> dict:
        return {
            "times": list(self.times),
            "interval_classes": [lbl.to_json_dict() for lbl in self.interval_classes],
            "transition_classes": [lbl.to_json_dict() for lbl in self.transition_classes],
            "maps": [
                {"left": left.to_json_dict(), "right": right.to_json_dict()}
                for left, right in self.maps
            ],
        }


def zigzag(path: PLPath, resolution: float, max_dim: int | None = None,
           eps: float = EPS_GEO, cap: int = 8) -> ZigzagDiagram:
    """Zigzag of simplicial maps along a path.

    Interval classes are sampled at interval midpoints; each transition
    instant receives entrance maps from both sides.  A transition at an
    endpoint of the path degenerates its outer interval to the instant
    itself (identity map).
    """
    events = transitions(path, resolution, max_dim, eps, cap)
    times = [t for t, _ in events]
    bounds = [0.0] + times + [1.0]
    interval_classes: list[StratumLabel] = []
    mids: list[float | None] = []
    for a, b in zip(bounds, bounds[1:]):
        if b - a > 2.0 * _BRACKET_FLOOR:
            mid = 0.5 * (a + b)
            mids.append(mid)
            interval_classes.append(stratum_label(evaluate(path, mid), max_dim, eps, cap))
        else:
            mids.append(None)
            # zero-width outer interval: the instant is the whole interval
            idx = len(interval_classes)
            lbl = events[idx][1] if idx < len(events) else events[-1][1]
            interval_classes.append(lbl)
    map_pairs = []
    for k, (t_star, lbl) in enumerate(events):
        if mids[k] is None:
            left = identity_map(cech_complex(evaluate(path, t_star), max_dim, eps))
        else:
            left = entrance_map(path, mids[k], t_star, max_dim, eps, cap)
        if mids[k + 1] is None:
            right = identity_map(cech_complex(evaluate(path, t_star), max_dim, eps))
        else:
            right = entrance_map(path, mids[k + 1], t_star, max_dim, eps, cap)
        map_pairs.append((left, right))
    return ZigzagDiagram(
        tuple(times),
        tuple(interval_classes),
        tuple(lbl for _, lbl in events),
        tuple(map_pairs),
    )


@dataclass(frozen=True)
class ChainFiltration:
    """Totally ordered class sequence with vertex-bijective connecting maps."""

    classes: tuple[IsoClass, ...]
    maps: tuple[SimplicialMap, ...]


def as_filtration(z: ZigzagDiagram) -> ChainFiltration | None:
    """Reads a zigzag as a filtration of one complex when possible.

    Succeeds when every interval and transition class has the same vertex
    count (no merges) and the classes are pairwise comparable; the chain
    runs from the most dominant class downward with vertex-bijective
    witnesses.  Returns None otherwise.
    """
    labels = [z.interval_classes[0]]
    for k in range(len(z.times)):
        labels.append(z.transition_classes[k])
        labels.append(z.interval_classes[k + 1])
    classes = {lbl.cls.key: lbl.cls for lbl in labels}
    counts = {cls.n_vertices for cls in classes.values()}
    if len(counts) != 1:
        return None
    distinct = list(classes.values())
    order: dict[tuple[bytes, bytes], bool] = {}
    for a in distinct:
        for b in distinct:
            if a.key != b.key:
                order[(a.key, b.key)] = dominates(a.canonical, b.canonical) is not None
    for a in distinct:
        for b in distinct:
            if a.key != b.key and not order[(a.key, b.key)] and not order[(b.key, a.key)]:
                return None
    distinct.sort(key=lambda c: sum(order[(c.key, other.key)] for other in distinct if other.key != c.key), reverse=True)
    maps = []
    for hi, lo in zip(distinct, distinct[1:]):
        witness = dominates(hi.canonical, lo.canonical)
        if witness is None or len(set(witness.vertex_map)) != lo.n_vertices:
            return None
        maps.append(witness)
    return ChainFiltration(tuple(distinct), tuple(maps))


def cech_path(config: PointConfig, t_max: float, tol: float = 1e-6) -> PLPath:
    """Stationary-configuration path whose radius grows like t/(1-t).

    The radius is a piecewise-linear approximation with interpolation
    error at most ``tol`` up to time ``t_max`` (< 1) and is held constant
    afterwards, so the label sequence up to ``t_max`` matches the
    filtration of the configuration below radius ``t_max/(1-t_max)``.
    """
    if not (0.0 < t_max < 1.0):
        raise ValueError("t_max must lie strictly between 0 and 1")
    ts = [0.0]
    while ts[-1] < t_max:
        t = ts[-1]
        # within [t, t+h]: curvature of t/(1-t) is 2/(1-t)^3, interp error
        # is at most curvature * h^2 / 8 evaluated at the far end
        h = 2.0 * math.sqrt(tol) * (1.0 - t) ** 1.5
        h = 2.0 * math.sqrt(tol) * max(1.0 - (t + h), 1.0 - t_max) ** 1.5
        ts.append(min(t + max(h, 1e-9), t_max))
    radii = [t / (1.0 - t) for t in ts]
    if ts[-1] < 1.0:
        ts.append(1.0)
        radii.append(radii[-1])
    tracks = tuple(tuple(p for _ in ts) for p in config.points)
    return PLPath(config.dim, tuple(ts), tracks, tuple(radii))


def reversed_path(path: PLPath) -> PLPath:
    """The same path traversed backwards."""
    bp = tuple(1.0 - t for t in reversed(path.breakpoints))
    tracks = tuple(tuple(reversed(tr)) for tr in path.tracks)
    return PLPath(path.dim, bp, tracks, tuple(reversed(path.radius)))
