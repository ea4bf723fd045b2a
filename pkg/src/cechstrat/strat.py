"""Stratum labels and the neighborhood radii that make them continuous.

For a configuration-radius pair x, every point within ``safe_radius(x)``
in the sup-norm has a Cech complex that dominates the complex at x, and
:func:`local_map` constructs the witnessing vertex-surjective simplicial
map by snapping each perturbed point to the configuration point whose
small ball contains it.  Labels carry a degeneracy refinement (which
subsets sit exactly at their critical radius) so that boundary strata can
be split off; :func:`frontier_check` probes closure relations between two
strata by Monte Carlo sampling.
"""

from __future__ import annotations

import math
import random
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import Literal

from ._bits import vertices_of
from .cech import cech_complex, subset_radii
from .complexes import IsoClass, SimplicialMap, canonical_form, is_simplicial
from .geometry import EPS_GEO, PointConfig, RanPoint, sup_distance

Case = Literal["generic", "boundary"]


def r1(config: PointConfig) -> float:
    """Smallest pairwise distance; +inf for singletons (empty minimum)."""
    pts = config.points
    if len(pts) < 2:
        return math.inf
    return min(
        math.dist(pts[i], pts[j])
        for i in range(len(pts))
        for j in range(i + 1, len(pts))
    )


def r2(config: PointConfig, r: float, max_dim: int | None = None) -> float:
    """Twice the smallest absolute radius slack over multi-point subsets.

    Perturbations smaller than half this value cannot create or destroy a
    simplex among the configuration points.  Zero at a critical radius.
    """
    if len(config) < 2:
        raise ValueError("r2 requires at least two points")
    return min(
        (2.0 * abs(r - radius) for _, radius in subset_radii(config, max_dim)),
        default=math.inf,
    )


def r2_prime(config: PointConfig, r: float, max_dim: int | None = None,
             eps: float = EPS_GEO) -> float:
    """Like :func:`r2` but ignoring subsets already at their critical radius.

    +inf when every multi-point subset is critical (empty minimum).
    """
    if len(config) < 2:
        raise ValueError("r2_prime requires at least two points")
    slacks = [
        2.0 * abs(r - radius)
        for _, radius in subset_radii(config, max_dim)
        if abs(r - radius) > eps
    ]
    return min(slacks) if slacks else math.inf


@dataclass(frozen=True)
class SafeBall:
    """Sup-norm ball around ``center`` inside which every stratum label
    dominates the center's label.  ``safe_radius`` is a quarter of the
    underlying separation value ``r_tilde``."""

    center: RanPoint
    r_tilde: float
    safe_radius: float
    case: Case

    def __post_init__(self):
        if not (self.safe_radius > 0.0):
            raise ValueError("safe radius must be positive")
        if abs(self.safe_radius - self.r_tilde / 4.0) > 1e-15 * max(1.0, self.r_tilde):
            raise ValueError("safe_radius must equal r_tilde / 4")


def tilde_r(x: RanPoint, max_dim: int | None = None, eps: float = EPS_GEO) -> SafeBall:
    """Separation radius of a configuration-radius pair.

    Generic case: the smaller of the pairwise gap and the simplex slack.
    Boundary case (some subset exactly critical): the critical subsets are
    exempted from the slack minimum.  Singletons admit any perturbation
    radius, so they get 4*r (or 1 when r = 0) as a convention.
    """
    config, r = x.config, x.radius
    if len(config) == 1:
        rt = 4.0 * r if r > 0.0 else 1.0
        return SafeBall(x, rt, rt / 4.0, "generic")
    gap = r1(config)
    slack_all = math.inf
    slack_nondeg = math.inf
    degenerate = False
    for _, radius in subset_radii(config, max_dim):
        s = abs(r - radius)
        slack_all = min(slack_all, 2.0 * s)
        if s > eps:
            slack_nondeg = min(slack_nondeg, 2.0 * s)
        else:
            degenerate = True
    if degenerate:
        rt = min(gap, slack_nondeg)
        case: Case = "boundary"
    else:
        rt = min(gap, slack_all)
        case = "generic"
    return SafeBall(x, rt, rt / 4.0, case)


def local_map(source: RanPoint, target: RanPoint, max_dim: int | None = None,
              eps: float = EPS_GEO) -> SimplicialMap:
    """Vertex-surjective simplicial map from the source complex onto the
    target complex, defined whenever the source lies strictly inside the
    target's safe ball.

    Each source point falls in exactly one of the disjoint open balls of
    radius ``r_tilde/4`` around the target points and is mapped there.
    Raises when the points are too far apart (the caller must subdivide).
    """
    ball = tilde_r(target, max_dim, eps)
    dist = sup_distance(source, target)
    if not (dist < ball.safe_radius):
        raise ValueError(
            f"sup distance {dist} is not strictly inside the safe radius "
            f"{ball.safe_radius}; subdivide the step"
        )
    tgt_pts = target.config.points
    vertex_map = []
    for q in source.config.points:
        hits = [i for i, p in enumerate(tgt_pts) if math.dist(q, p) < ball.safe_radius]
        if len(hits) != 1:
            raise RuntimeError(
                f"point {q} lies in {len(hits)} of the disjoint snap balls; "
                "safe-ball construction violated"
            )
        vertex_map.append(hits[0])
    m = SimplicialMap(
        cech_complex(source, max_dim, eps),
        cech_complex(target, max_dim, eps),
        tuple(vertex_map),
    )
    if not is_simplicial(m):
        raise RuntimeError("local map failed simpliciality validation")
    if not m.is_vertex_surjective():
        raise RuntimeError("local map failed vertex-surjectivity validation")
    return m


@dataclass(frozen=True)
class StratumLabel:
    """Refined stratum label: the complex class plus which multi-point
    subsets sit exactly at their critical radius.

    The coarse label is ``cls`` alone; the whole-configuration refinement
    is recoverable via :attr:`whole_config_degenerate`.
    """

    cls: IsoClass
    degenerate: bool
    degenerate_subsets: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.degenerate != bool(self.degenerate_subsets):
            raise ValueError("degenerate flag must match degenerate_subsets")

    @property
    def whole_config_degenerate(self) -> bool:
        n = self.cls.n_vertices
        return tuple(range(n)) in self.degenerate_subsets

    def to_json_dict(self) -> dict:
        return {
            "class": self.cls.canonical.to_json_dict(),
            "key": self.cls.key_hex,
            "degenerate": self.degenerate,
            "degenerate_subsets": [list(s) for s in self.degenerate_subsets],
        }


def stratum_label(x: RanPoint, max_dim: int | None = None, eps: float = EPS_GEO,
                  cap: int = 8) -> StratumLabel:
    """Class of the Cech complex at x plus the degeneracy refinement."""
    cls = canonical_form(cech_complex(x, max_dim, eps), cap=cap)
    degenerate = sorted(
        (vertices_of(mask) for mask, radius in subset_radii(x.config, max_dim)
         if abs(x.radius - radius) <= eps),
        key=lambda t: (len(t), t),
    )
    return StratumLabel(cls, bool(degenerate), tuple(degenerate))


# --------------------------------------------------------------------------
# Monte-Carlo frontier checking


@dataclass(frozen=True)
class ParametricFamily:
    """Sampling window into the space of configuration-radius pairs.

    ``realize`` maps a parameter vector from the box [lower, upper] to a
    RanPoint; ``anchors`` are parameter points always tried as boundary
    witness candidates (random sampling almost surely misses measure-zero
    boundary strata).  Probe steps in parameter space are taken at the
    probe radius times ``param_scale``, assuming roughly unit Lipschitz
    realization per coordinate.
    """

    lower: tuple[float, ...]
    upper: tuple[float, ...]
    realize: Callable[[tuple[float, ...]], RanPoint]
    anchors: tuple[tuple[float, ...], ...] = ()
    param_scale: float = 1.0

    def sample(self, rng: random.Random) -> tuple[float, ...]:
        return tuple(rng.uniform(lo, hi) for lo, hi in zip(self.lower, self.upper))

    def clip(self, theta: Sequence[float]) -> tuple[float, ...]:
        return tuple(
            min(max(t, lo), hi) for t, lo, hi in zip(theta, self.lower, self.upper)
        )


@dataclass(frozen=True)
class FrontierReport:
    """Outcome of a sampled frontier-condition check for a stratum pair."""

    label_a: StratumLabel
    label_b: StratumLabel
    verdict: Literal["violated", "satisfied-at-budget", "inconclusive"]
    refined: bool
    samples_a: int
    samples_b: int
    boundary_witness: RanPoint | None = None
    interior_witness: RanPoint | None = None
    note: str = ""
    params: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        witnesses = {}
        if self.boundary_witness is not None:
            witnesses["boundary"] = self.boundary_witness.to_json_dict()
        if self.interior_witness is not None:
            witnesses["interior"] = self.interior_witness.to_json_dict()
        return {
            "pair": [self.label_a.to_json_dict(), self.label_b.to_json_dict()],
            "verdict": self.verdict,
            "refined": self.refined,
            "samples": {"a": self.samples_a, "b": self.samples_b},
            "witnesses": witnesses,
            "note": self.note,
            "params": dict(self.params),
        }


def _label_matches(label: StratumLabel, ref: StratumLabel, refined: bool) -> bool:
    if label.cls.key != ref.cls.key:
        return False
    return label.degenerate == ref.degenerate if refined else True


def _probe_near(family: ParametricFamily, theta: tuple[float, ...], center: RanPoint,
                radius: float, rng: random.Random, attempts: int,
                max_dim, eps) -> list[StratumLabel]:
    """Labels of family points sampled within the sup-ball around ``center``."""
    out = []
    step = radius * family.param_scale
    for _ in range(attempts):
        cand = family.clip(tuple(t + rng.uniform(-step, step) for t in theta))
        try:
            y = family.realize(cand)
        except ValueError:
            continue
        if sup_distance(y, center) < radius:
            out.append(stratum_label(y, max_dim, eps))
    return out


def frontier_check(
    family: ParametricFamily,
    label_a: StratumLabel,
    label_b: StratumLabel,
    n_samples: int = 2000,
    probe_radius: float = 0.05,
    refined: bool = False,
    levels: int = 8,
    probes_per_level: int = 60,
    seed: int = 0,
    max_dim: int | None = None,
    eps: float = EPS_GEO,
) -> FrontierReport:
    """Monte-Carlo check of the frontier condition for a stratum pair.

    Looks for (i) a boundary witness: a stratum-b point whose shrinking
    sup-balls all contain stratum-a points, i.e. evidence it lies in the
    closure of stratum a; and (ii) an interior witness: a stratum-b point
    whose probe ball contains no stratum-a point.  Both found means the
    closure of stratum a meets stratum b without containing it: verdict
    "violated".  Sampling that cannot populate the strata at all yields
    "inconclusive" rather than a pass.
    """
    rng = random.Random(seed)
    params = {
        "n_samples": n_samples,
        "probe_radius": probe_radius,
        "levels": levels,
        "probes_per_level": probes_per_level,
        "seed": seed,
    }

    def report(verdict, note="", boundary=None, interior=None, na=0, nb=0):
        return FrontierReport(
            label_a, label_b, verdict, refined, na, nb,
            boundary_witness=boundary, interior_witness=interior,
            note=note, params=params,
        )

    if _label_matches(label_a, label_b, refined):
        return report("satisfied-at-budget", note="identical labels: condition is trivial")

    from .scposet import dominates  # local import: scposet builds on complexes only

    if label_a.cls.key != label_b.cls.key:
        if dominates(label_a.cls.canonical, label_b.cls.canonical) is None:
            return report(
                "satisfied-at-budget",
                note="stratum b is not below stratum a: condition is vacuous",
            )

    samples: list[tuple[tuple[float, ...], RanPoint, StratumLabel]] = []
    for _ in range(n_samples):
        theta = family.sample(rng)
        try:
            point = family.realize(theta)
        except ValueError:
            continue
        samples.append((theta, point, stratum_label(point, max_dim, eps)))
    a_hits = [s for s in samples if _label_matches(s[2], label_a, refined)]
    b_hits = [s for s in samples if _label_matches(s[2], label_b, refined)]
    if not a_hits or not b_hits:
        return report(
            "inconclusive",
            note="sampling budget exhausted without populating both strata",
            na=len(a_hits), nb=len(b_hits),
        )

    # Boundary candidates: anchors first, then raw b-samples.  Probing is
    # centered on the candidate's own parameters, so candidates must be
    # family points; boundary strata have measure zero, which is what the
    # anchors are for (uniform sampling almost surely misses them).
    candidates: list[tuple[tuple[float, ...], RanPoint]] = []
    for theta in family.anchors:
        try:
            point = family.realize(theta)
        except ValueError:
            continue
        if _label_matches(stratum_label(point, max_dim, eps), label_b, refined):
            candidates.append((theta, point))
    for theta, point, _ in b_hits[:40]:
        candidates.append((theta, point))

    boundary_witness = None
    for theta, z in candidates:
        ok = True
        for k in range(levels):
            rho = probe_radius * (4.0 ** (-k))
            found = any(
                _label_matches(lbl, label_a, refined)
                for lbl in _probe_near(family, theta, z, rho, rng,
                                       probes_per_level, max_dim, eps)
            )
            if not found:
                ok = False
                break
        if ok:
            boundary_witness = z
            break

    interior_witness = None
    for theta, z, _ in b_hits:
        labels = _probe_near(family, theta, z, probe_radius, rng,
                             probes_per_level, max_dim, eps)
        if len(labels) < probes_per_level // 2:
            continue
        if not any(_label_matches(lbl, label_a, refined) for lbl in labels):
            interior_witness = z
            break

    if boundary_witness is not None and interior_witness is not None:
        return report(
            "violated",
            note="closure of stratum a meets stratum b without containing it",
            boundary=boundary_witness, interior=interior_witness,
            na=len(a_hits), nb=len(b_hits),
        )
    if boundary_witness is None:
        note = "no stratum-b point adjacent to stratum a was found"
    else:
        note = "every probed stratum-b point had stratum-a points nearby"
    return report(
        "satisfied-at-budget", note=note,
        boundary=boundary_witness, interior=interior_witness,
        na=len(a_hits), nb=len(b_hits),
    )


def two_point_line_family() -> ParametricFamily:
    """Configurations {0, x} on the line with a free radius.

    The standard demonstration family: the two-point stratum accumulates
    on the edge stratum at the critical radius x/2, where the coarse
    labeling fails the frontier condition.
    """

    def realize(theta: tuple[float, ...]) -> RanPoint:
        x, r = theta
        return RanPoint(PointConfig(1, ((0.0,), (x,))), r)

    return ParametricFamily(
        lower=(0.7, 0.2),
        upper=(1.3, 0.9),
        realize=realize,
        anchors=((1.0, 0.5), (1.0, 0.6)),
    )
