import math
import random
from fractions import Fraction

import pytest

from gridtw.geometry import (
    Arrangement,
    DegeneracyError,
    Polysegment,
    build_arrangement,
    on_segment,
    orient,
    perturb_general_position,
    pt,
    segment_crossings,
    segment_intersection,
    snap_point,
    sqrt_lower_bound,
    xi,
)


class TestSegmentIntersection:
    def test_unit_cross(self):
        out = segment_intersection(pt(0, 0), pt(1, 1), pt(0, 1), pt(1, 0))
        assert out == [(Fraction(1, 2), Fraction(1, 2))]

    def test_disjoint_parallel(self):
        assert segment_intersection(pt(0, 0), pt(1, 0), pt(0, 1), pt(1, 1)) == []

    def test_collinear_overlap(self):
        from gridtw.geometry import OVERLAP

        assert segment_intersection(pt(0, 0), pt(2, 0), pt(1, 0), pt(3, 0)) == OVERLAP

    def test_collinear_endpoint_touch(self):
        out = segment_intersection(pt(0, 0), pt(1, 0), pt(1, 0), pt(2, 0))
        assert out == [pt(1, 0)]

    def test_endpoint_on_interior(self):
        out = segment_intersection(pt(0, 0), pt(2, 0), pt(1, 0), pt(1, 1))
        assert out == [pt(1, 0)]


class TestPolysegment:
    def test_crossing_segments_midpoint(self):
        a = Polysegment(points=(pt(0, 0), pt(1, 1)))
        b = Polysegment(points=(pt(0, 1), pt(1, 0)))
        assert segment_crossings(a, b) == [(Fraction(1, 2), Fraction(1, 2))]

    def test_zigzag_crosses_line_three_times(self):
        zig = Polysegment(points=(pt(0, -1), pt(1, 1), pt(2, -1), pt(3, 1)))
        line = Polysegment(points=(pt(-1, 0), pt(4, 0)))
        pts = segment_crossings(zig, line)
        assert len(pts) == 3
        assert pts == [(Fraction(1, 2), Fraction(0)), (Fraction(3, 2), Fraction(0)), (Fraction(5, 2), Fraction(0))]

    def test_self_crossing_rejected(self):
        with pytest.raises(DegeneracyError):
            Polysegment(points=(pt(0, 0), pt(2, 0), pt(1, 1), pt(1, -1)))

    def test_fold_back_rejected(self):
        with pytest.raises(DegeneracyError):
            Polysegment(points=(pt(0, 0), pt(2, 0), pt(1, 0)))

    def test_single_point_allowed(self):
        p = Polysegment(points=(pt(3, 4),))
        assert p.length == 0

    def test_overlap_degeneracy(self):
        a = Polysegment(points=(pt(0, 0), pt(2, 0)))
        b = Polysegment(points=(pt(1, 0), pt(3, 0)))
        with pytest.raises(DegeneracyError):
            segment_crossings(a, b)


class TestArrangement:
    def test_two_crossing_segments(self):
        arr = build_arrangement(
            [
                Polysegment(points=(pt(0, 0), pt(2, 2))),
                Polysegment(points=(pt(0, 2), pt(2, 0))),
            ]
        )
        assert len(arr.crossings) == 1
        assert xi(arr) == 1

    def test_triple_point_rejected(self):
        with pytest.raises(DegeneracyError):
            build_arrangement(
                [
                    Polysegment(points=(pt(-1, 0), pt(1, 0))),
                    Polysegment(points=(pt(0, -1), pt(0, 1))),
                    Polysegment(points=(pt(-1, -1), pt(1, 1))),
                ]
            )

    def test_fan_of_five(self):
        base = Polysegment(points=(pt(0, 0), pt(10, 0)))
        others = [
            Polysegment(points=(pt(2 * i + 1, -1), pt(2 * i + 1, 1))) for i in range(5)
        ]
        arr = build_arrangement([base] + others)
        assert xi(arr) == 5

    def test_grid_family_xi(self):
        r = 4
        horizontals = [
            Polysegment(points=(pt(0, i), pt(r + 1, i))) for i in range(1, r + 1)
        ]
        verticals = [
            Polysegment(points=(pt(i, 0), pt(i, r + 1))) for i in range(1, r + 1)
        ]
        arr = build_arrangement(horizontals + verticals)
        # Brute recount: every horizontal meets every vertical once.
        assert len(arr.crossings) == r * r
        assert xi(arr) == r

    def test_deterministic_ordering(self):
        segs = [
            Polysegment(points=(pt(0, 0), pt(3, 3))),
            Polysegment(points=(pt(0, 3), pt(3, 0))),
            Polysegment(points=(pt(0, 1), pt(3, 1))),
        ]
        a1 = build_arrangement(segs)
        a2 = build_arrangement(segs)
        assert a1 == a2


class TestPerturbation:
    def test_generic_points_unchanged(self):
        pts = [pt(0, 0), pt(1, 0), pt(0, 1)]
        out = perturb_general_position(pts, Fraction(1, 100), seed=1)
        assert out == pts

    def test_collinear_broken(self):
        pts = [pt(0, 0), pt(1, 0), pt(2, 0)]
        out = perturb_general_position(pts, Fraction(1, 10), seed=1)
        assert orient(*out) != 0
        # Only bounded movement.
        for old, new in zip(pts, out):
            assert abs(new[0] - old[0]) <= Fraction(1, 10)
            assert abs(new[1] - old[1]) <= Fraction(1, 10)

    def test_duplicates_separated(self):
        pts = [pt(0, 0), pt(0, 0), pt(1, 1)]
        out = perturb_general_position(pts, Fraction(1, 10), seed=3)
        assert len(set(out)) == 3

    def test_epsilon_must_be_positive(self):
        with pytest.raises(DegeneracyError):
            perturb_general_position([pt(0, 0)], Fraction(0), seed=0)


class TestSqrtLowerBound:
    def test_bound_is_lower_and_tight(self):
        rng = random.Random(5)
        for _ in range(100):
            v = Fraction(rng.randint(1, 10**6), rng.randint(1, 10**6))
            lo = sqrt_lower_bound(v)
            assert lo * lo <= v
            assert float(lo) >= math.sqrt(float(v)) * (1 - 1e-6)


class TestSnap:
    def test_snap_accuracy(self):
        p = snap_point(0.123456789, -3.987654321)
        assert abs(float(p[0]) - 0.123456789) < 1e-6
        assert abs(float(p[1]) + 3.987654321) < 1e-6
