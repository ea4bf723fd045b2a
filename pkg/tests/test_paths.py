import json
import math
import random

import pytest

from cechstrat import (
    PLPath,
    PointConfig,
    RanPoint,
    ZigzagDiagram,
    as_filtration,
    canonical_form,
    cech_filtration,
    cech_path,
    compose,
    dominates,
    entrance_map,
    evaluate,
    is_simplicial,
    stratum_label,
    transitions,
    zigzag,
)
from cechstrat.paths import reversed_path

SQRT3 = math.sqrt(3.0)


def ramp_path():
    """Two fixed points on the line, radius running 0 to 1."""
    return PLPath(1, (0.0, 1.0), (((0.0,), (0.0,)), ((1.0,), (1.0,))), (0.0, 1.0))


def merge_path():
    """Second track moves onto the first by t = 1, radius 0."""
    return PLPath(1, (0.0, 1.0), (((0.0,), (0.0,)), ((1.0,), (0.0,))), (0.0, 0.0))


def constant_path():
    return PLPath(1, (0.0, 1.0), (((0.0,), (0.0,)), ((1.0,), (1.0,))), (0.2, 0.2))


def triangle_config():
    return PointConfig(2, ((0.0, 0.0), (1.0, 0.0), (0.5, SQRT3 / 2)))


class TestPLPathValidation:
    def test_breakpoints_must_span_unit_interval(self):
        with pytest.raises(ValueError):
            PLPath(1, (0.0, 0.5), (((0.0,), (0.0,)),), (0.0, 0.0))

    def test_breakpoints_strictly_increasing(self):
        with pytest.raises(ValueError):
            PLPath(1, (0.0, 0.5, 0.5, 1.0), (((0.0,),) * 4,), (0.0,) * 4)

    def test_radius_nonnegative(self):
        with pytest.raises(ValueError):
            PLPath(1, (0.0, 1.0), (((0.0,), (0.0,)),), (0.1, -0.1))

    def test_waypoint_counts(self):
        with pytest.raises(ValueError):
            PLPath(1, (0.0, 1.0), (((0.0,),),), (0.0, 0.0))

    def test_split_inside_segment_rejected(self):
        # tracks meet at the segment midpoint and separate again
        with pytest.raises(ValueError, match="split"):
            PLPath(
                1,
                (0.0, 1.0),
                (((0.0,), (1.0,)), ((1.0,), (0.0,))),
                (0.0, 0.0),
            )

    def test_split_at_breakpoint_allowed(self):
        p = PLPath(
            1,
            (0.0, 0.5, 1.0),
            (((0.0,), (0.0,), (0.0,)), ((1.0,), (0.0,), (1.0,))),
            (0.0, 0.0, 0.0),
        )
        assert len(evaluate(p, 0.5).config) == 1
        assert len(evaluate(p, 0.75).config) == 2


class TestEvaluate:
    def test_breakpoint_values(self):
        p = ramp_path()
        x = evaluate(p, 0.0)
        assert x.config.points == ((0.0,), (1.0,)) and x.radius == 0.0
        y = evaluate(p, 1.0)
        assert y.radius == 1.0

    def test_merge_at_endpoint(self):
        x = evaluate(merge_path(), 1.0)
        assert x.config.points == ((0.0,),)

    def test_linear_interpolation(self):
        p = merge_path()
        x = evaluate(p, 0.5)
        assert x.config.points == ((0.0,), (0.5,))

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            evaluate(ramp_path(), 1.5)


class TestTransitions:
    def test_constant_path_has_none(self):
        assert transitions(constant_path(), 0.01) == []

    def test_radius_ramp_single_transition(self, named_classes):
        events = transitions(ramp_path(), 0.01)
        assert len(events) == 1
        t_star, lbl = events[0]
        assert t_star == pytest.approx(0.5, abs=1e-5)
        assert lbl.cls.key == named_classes["edge"].key
        assert lbl.degenerate
        before = stratum_label(evaluate(ramp_path(), t_star - 1e-3))
        after = stratum_label(evaluate(ramp_path(), t_star + 1e-3))
        assert before.cls.key == named_classes["two_points"].key
        assert after.cls.key == named_classes["edge"].key

    def test_triangle_growth_path_instants(self):
        # radius t/(1-t) crosses 0.5 at t = 1/3 and 1/sqrt(3) at
        # t = 1/(1+sqrt(3))
        path = cech_path(triangle_config(), 0.9)
        events = transitions(path, 0.01)
        assert len(events) == 2
        assert events[0][0] == pytest.approx(1.0 / 3.0, abs=1e-5)
        assert events[1][0] == pytest.approx(1.0 / (1.0 + SQRT3), abs=1e-5)

    def test_merge_transition_at_endpoint(self, named_classes):
        events = transitions(merge_path(), 0.01)
        assert len(events) == 1
        t_star, lbl = events[0]
        assert t_star == pytest.approx(1.0, abs=1e-6)
        assert lbl.cls.key == named_classes["point"].key

    def test_resolution_validation(self):
        with pytest.raises(ValueError):
            transitions(ramp_path(), 0.0)


class TestEntranceMap:
    def test_constant_label_renaming(self):
        p = constant_path()
        m = entrance_map(p, 0.1, 0.9)
        assert m.vertex_map == (0, 1)
        assert is_simplicial(m) and m.is_vertex_surjective()

    def test_merge_sends_both_to_one(self):
        m = entrance_map(merge_path(), 0.0, 1.0)
        assert m.vertex_map == (0, 0)
        assert m.target.n_vertices == 1

    def test_ramp_onto_edge(self, named_classes):
        p = PLPath(1, (0.0, 1.0), (((0.0,), (0.0,)), ((1.0,), (1.0,))), (0.4, 0.5))
        m = entrance_map(p, 0.0, 1.0)
        assert m.vertex_map == (0, 1)
        assert canonical_form(m.source).key == named_classes["two_points"].key
        assert canonical_form(m.target).key == named_classes["edge"].key
        assert is_simplicial(m) and m.is_vertex_surjective()

    def test_concatenation_functoriality(self):
        p = constant_path()
        whole = entrance_map(p, 0.1, 0.8)
        first = entrance_map(p, 0.1, 0.4)
        second = entrance_map(p, 0.4, 0.8)
        assert compose(first, second) == whole

    def test_constancy_violation_detected(self):
        with pytest.raises(ValueError, match="constant"):
            entrance_map(ramp_path(), 0.1, 0.9)

    def test_reverse_direction(self, named_classes):
        p = ramp_path()
        m = entrance_map(p, 0.75, 0.5)  # backwards into the instant
        assert canonical_form(m.source).key == named_classes["edge"].key
        assert canonical_form(m.target).key == named_classes["edge"].key


class TestZigzag:
    def test_constant_path(self):
        z = zigzag(constant_path(), 0.01)
        assert z.times == ()
        assert len(z.interval_classes) == 1
        assert z.maps == ()

    def test_radius_ramp_structure(self, named_classes):
        z = zigzag(ramp_path(), 0.01)
        assert len(z.times) == 1
        assert [lbl.cls.key for lbl in z.interval_classes] == [
            named_classes["two_points"].key,
            named_classes["edge"].key,
        ]
        assert z.transition_classes[0].cls.key == named_classes["edge"].key
        left, right = z.maps[0]
        assert left.vertex_map == (0, 1)
        # right map comes from inside the edge stratum: identity renaming
        assert right.vertex_map == (0, 1)
        assert right.source.simplex_set == right.target.simplex_set

    def test_triangle_growth_two_transitions(self, named_classes):
        z = zigzag(cech_path(triangle_config(), 0.9), 0.01)
        keys = [lbl.cls.key for lbl in z.interval_classes]
        assert keys == [
            named_classes["discrete3"].key,
            named_classes["cycle3"].key,
            named_classes["filled3"].key,
        ]
        tkeys = [lbl.cls.key for lbl in z.transition_classes]
        assert tkeys == [named_classes["cycle3"].key, named_classes["filled3"].key]

    def test_all_maps_validate(self):
        z = zigzag(cech_path(triangle_config(), 0.9), 0.01)
        for (left, right), tlbl in zip(z.maps, z.transition_classes):
            for m in (left, right):
                assert is_simplicial(m) and m.is_vertex_surjective()
                assert canonical_form(m.target).key == tlbl.cls.key

    def test_side_classes_dominate_transition(self):
        z = zigzag(ramp_path(), 0.01)
        for k, tlbl in enumerate(z.transition_classes):
            for side in (z.interval_classes[k], z.interval_classes[k + 1]):
                assert dominates(side.cls.canonical, tlbl.cls.canonical) is not None

    def test_reversal_reflects_times_and_classes(self):
        p = ramp_path()
        z = zigzag(p, 0.01)
        zr = zigzag(reversed_path(p), 0.01)
        assert len(z.times) == len(zr.times)
        for t, tr in zip(z.times, reversed(zr.times)):
            assert tr == pytest.approx(1.0 - t, abs=1e-5)
        assert [l.cls.key for l in zr.interval_classes] == [
            l.cls.key for l in reversed(z.interval_classes)
        ]

    def test_merge_at_endpoint_zero_width_interval(self, named_classes):
        z = zigzag(merge_path(), 0.01)
        assert len(z.times) == 1
        assert z.interval_classes[-1].cls.key == named_classes["point"].key
        left, right = z.maps[0]
        assert left.vertex_map == (0, 0)
        assert right.vertex_map == (0,)  # identity at the merged endpoint

    def test_start_at_critical_radius(self, named_classes):
        # the degenerate stratum occupies a tolerance-band sliver at t = 0;
        # the zigzag exits it immediately
        p = PLPath(1, (0.0, 1.0), (((0.0,), (0.0,)), ((1.0,), (1.0,))), (0.5, 0.9))
        z = zigzag(p, 0.01)
        assert len(z.times) == 1
        assert z.times[0] < 1e-6
        assert z.interval_classes[0].degenerate
        assert all(lbl.cls.key == named_classes["edge"].key for lbl in z.interval_classes)
        for left, right in z.maps:
            assert is_simplicial(left) and is_simplicial(right)

    def test_oscillating_radius_alternates(self, named_classes):
        p = PLPath(
            1,
            (0.0, 0.25, 0.5, 0.75, 1.0),
            (((0.0,),) * 5, ((1.0,),) * 5),
            (0.3, 0.7, 0.3, 0.7, 0.3),
        )
        z = zigzag(p, 0.01)
        assert [round(t, 6) for t in z.times] == [0.125, 0.375, 0.625, 0.875]
        assert [lbl.cls.key for lbl in z.interval_classes] == [
            named_classes[k].key
            for k in ("two_points", "edge", "two_points", "edge", "two_points")
        ]
        assert all(lbl.degenerate for lbl in z.transition_classes)
        # both classes appear, totally ordered: still reads as a filtration
        chain = as_filtration(z)
        assert chain is not None
        assert [c.key for c in chain.classes] == [
            named_classes["two_points"].key,
            named_classes["edge"].key,
        ]


class TestMovingTracks:
    def test_approaching_points_in_plane(self, named_classes):
        # second point slides from (1,0) to (0.4,0) at radius 0.3: the edge
        # forms when the gap 1 - 0.6 t reaches 0.6, at t = 2/3
        p = PLPath(
            2,
            (0.0, 1.0),
            ((((0.0, 0.0)), (0.0, 0.0)), ((1.0, 0.0), (0.4, 0.0))),
            (0.3, 0.3),
        )
        z = zigzag(p, 0.01)
        assert len(z.times) == 1
        assert z.times[0] == pytest.approx(2.0 / 3.0, abs=1e-5)
        assert [lbl.cls.key for lbl in z.interval_classes] == [
            named_classes["two_points"].key,
            named_classes["edge"].key,
        ]
        assert z.transition_classes[0].degenerate

    def test_rigid_rotation_has_no_transitions(self):
        # rotating an equilateral triangle rigidly keeps every label fixed
        import math as m

        steps = 8
        bps = tuple(k / steps for k in range(steps + 1))
        base = [(0.0, 0.0), (1.0, 0.0), (0.5, SQRT3 / 2)]
        cx, cy = 0.5, SQRT3 / 6

        def rot(p, ang):
            x, y = p[0] - cx, p[1] - cy
            return (
                cx + x * m.cos(ang) - y * m.sin(ang),
                cy + x * m.sin(ang) + y * m.cos(ang),
            )

        tracks = tuple(
            tuple(rot(p, 0.9 * t) for t in bps) for p in base
        )
        p = PLPath(2, bps, tracks, (0.55,) * len(bps))
        assert transitions(p, 0.02) == []

    def test_flyby_gains_and_loses_an_edge(self, named_classes):
        # a third point passes near a fixed pair: its gap to (0.6, 0) is
        # sqrt(0.36 + (2 - 4t)^2), below the critical 0.7 for |2 - 4t| <=
        # sqrt(0.13): edge+point -> path -> edge+point
        p = PLPath(
            2,
            (0.0, 1.0),
            (
                ((0.0, 0.0), (0.0, 0.0)),
                ((0.6, 0.0), (0.6, 0.0)),
                ((1.2, 2.0), (1.2, -2.0)),
            ),
            (0.35, 0.35),
        )
        z = zigzag(p, 0.01)
        keys = [lbl.cls.key for lbl in z.interval_classes]
        assert keys == [
            named_classes["edge_plus_point"].key,
            named_classes["path3"].key,
            named_classes["edge_plus_point"].key,
        ]
        assert len(z.times) == 2
        half_width = math.sqrt(0.13) / 4.0
        assert z.times[0] == pytest.approx(0.5 - half_width, abs=1e-5)
        assert z.times[1] == pytest.approx(0.5 + half_width, abs=1e-5)


class TestAsFiltration:
    def test_triangle_chain(self, named_classes):
        z = zigzag(cech_path(triangle_config(), 0.9), 0.01)
        chain = as_filtration(z)
        assert chain is not None
        assert [c.key for c in chain.classes] == [
            named_classes["discrete3"].key,
            named_classes["cycle3"].key,
            named_classes["filled3"].key,
        ]
        for m in chain.maps:
            assert is_simplicial(m) and m.is_vertex_surjective()
            assert len(set(m.vertex_map)) == m.source.n_vertices

    def test_merge_path_yields_none(self):
        assert as_filtration(zigzag(merge_path(), 0.01)) is None

    def test_radius_ramp_chain(self, named_classes):
        chain = as_filtration(zigzag(ramp_path(), 0.01))
        assert chain is not None
        assert [c.key for c in chain.classes] == [
            named_classes["two_points"].key,
            named_classes["edge"].key,
        ]


class TestCechPath:
    def test_radius_endpoint(self):
        p = cech_path(PointConfig(1, ((0.0,), (1.0,))), 0.5)
        assert evaluate(p, 1.0).radius == pytest.approx(1.0)

    def test_radius_approximation_error(self):
        p = cech_path(triangle_config(), 0.9)
        rng = random.Random(1)
        t_max = 0.9
        for _ in range(300):
            t = rng.uniform(0, t_max)
            assert evaluate(p, t).radius == pytest.approx(
                t / (1.0 - t), abs=1.1e-6
            )

    def test_constant_after_t_max(self):
        p = cech_path(triangle_config(), 0.9)
        top = 0.9 / (1.0 - 0.9)
        assert evaluate(p, 0.95).radius == pytest.approx(top)
        assert evaluate(p, 1.0).radius == pytest.approx(top)

    def test_zigzag_classes_match_filtration(self):
        rng = random.Random(107)
        for _ in range(8):
            while True:
                pts = [(rng.uniform(0, 1), rng.uniform(0, 1)) for _ in range(rng.randint(2, 4))]
                try:
                    cfg = PointConfig(2, tuple(pts))
                    break
                except ValueError:
                    continue
            z = zigzag(cech_path(cfg, 0.9), 0.01)
            filt = cech_filtration(cfg)
            expected = [
                canonical_form(c).key
                for c, r in zip(filt.complexes, filt.critical_radii)
                if r < 9.0
            ]
            assert [lbl.cls.key for lbl in z.interval_classes] == expected

    def test_singleton_constant_labels(self):
        p = cech_path(PointConfig(1, ((0.0,),)), 0.9)
        assert transitions(p, 0.05) == []

    def test_t_max_validation(self):
        with pytest.raises(ValueError):
            cech_path(triangle_config(), 1.0)


class TestJsonRoundTrips:
    def test_path_round_trip(self):
        p = cech_path(triangle_config(), 0.5)
        blob = json.dumps(p.to_json_dict(), sort_keys=True)
        assert PLPath.from_json_dict(json.loads(blob)) == p

    def test_zigzag_json_shape(self):
        z = zigzag(ramp_path(), 0.01)
        data = json.loads(json.dumps(z.to_json_dict(), sort_keys=True))
        assert len(data["times"]) == 1
        assert len(data["interval_classes"]) == 2
        assert len(data["maps"]) == 1
        assert data["maps"][0]["left"]["vertex_map"] == [0, 1]
