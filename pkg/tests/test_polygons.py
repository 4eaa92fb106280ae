import math
from fractions import Fraction

import pytest

from gridtw.geometry import DegeneracyError, pt, snap_point
from gridtw.polygons import (
    SimplePolygon,
    clearance2,
    fatness,
    geodesic_path,
    inscribed_radius_lower,
    interior_point,
    min_enclosing_circle,
    point_segment_dist2,
)


def square(side=1, x0=0, y0=0):
    return SimplePolygon.from_ring(
        [pt(x0, y0), pt(x0 + side, y0), pt(x0 + side, y0 + side), pt(x0, y0 + side)]
    )


def rectangle(w, h, x0=0, y0=0):
    return SimplePolygon.from_ring(
        [pt(x0, y0), pt(x0 + w, y0), pt(x0 + w, y0 + h), pt(x0, y0 + h)]
    )


def regular_ngon(n, radius=1.0):
    ring = []
    for i in range(n):
        a = 2 * math.pi * i / n
        ring.append(snap_point(radius * math.cos(a), radius * math.sin(a), 2**30))
    return SimplePolygon.from_ring(ring)


def l_shape():
    # Unit-thick L: arms along +x and +y.
    return SimplePolygon.from_ring(
        [pt(0, 0), pt(3, 0), pt(3, 1), pt(1, 1), pt(1, 3), pt(0, 3)]
    )


class TestSimplePolygon:
    def test_orientation_normalized(self):
        p = SimplePolygon.from_ring([pt(0, 0), pt(0, 1), pt(1, 1), pt(1, 0)])
        assert p.twice_area() > 0

    def test_self_intersecting_rejected(self):
        with pytest.raises(DegeneracyError):
            SimplePolygon.from_ring([pt(0, 0), pt(2, 2), pt(2, 0), pt(0, 2)])

    def test_locate(self):
        sq = square()
        assert sq.locate(pt(Fraction(1, 2), Fraction(1, 2))) == "interior"
        assert sq.locate(pt(0, Fraction(1, 2))) == "boundary"
        assert sq.locate(pt(2, 0)) == "exterior"

    def test_contains_segment(self):
        sq = square()
        assert sq.contains_segment(pt(Fraction(1, 4), Fraction(1, 4)), pt(Fraction(3, 4), Fraction(3, 4)))
        assert not sq.contains_segment(pt(Fraction(1, 2), Fraction(1, 2)), pt(2, 2))
        ell = l_shape()
        # Cutting the corner of the L leaves the polygon.
        assert not ell.contains_segment(pt(Fraction(5, 2), Fraction(1, 2)), pt(Fraction(1, 2), Fraction(5, 2)))


class TestGeodesic:
    def test_convex_is_straight(self):
        sq = square()
        path = geodesic_path(sq, pt(Fraction(1, 4), Fraction(1, 4)), pt(Fraction(3, 4), Fraction(1, 2)))
        assert path.length == 1

    def test_l_shape_bends_once(self):
        ell = l_shape()
        a, b = pt(Fraction(5, 2), Fraction(1, 2)), pt(Fraction(1, 2), Fraction(5, 2))
        path = geodesic_path(ell, a, b)
        assert path.length == 2
        assert path.points[1] == pt(1, 1)  # the reflex corner
        for s1, s2 in path.segments():
            assert ell.contains_segment(s1, s2)

    def test_degenerate_same_point(self):
        sq = square()
        path = geodesic_path(sq, pt(Fraction(1, 2), Fraction(1, 2)), pt(Fraction(1, 2), Fraction(1, 2)))
        assert path.length == 0

    def test_outside_point_rejected(self):
        with pytest.raises(DegeneracyError):
            geodesic_path(square(), pt(5, 5), pt(Fraction(1, 2), Fraction(1, 2)))


class TestEnclosingCircle:
    def test_square_circumcircle(self):
        center, r2 = min_enclosing_circle(list(square().ring))
        assert center == (Fraction(1, 2), Fraction(1, 2))
        assert r2 == Fraction(1, 2)

    def test_two_points(self):
        center, r2 = min_enclosing_circle([pt(0, 0), pt(2, 0)])
        assert center == (Fraction(1), Fraction(0))
        assert r2 == 1

    def test_obtuse_triangle_diameter(self):
        # Obtuse triangle: circle spans the longest side only.
        center, r2 = min_enclosing_circle([pt(0, 0), pt(4, 0), pt(1, Fraction(1, 2))])
        assert center == (Fraction(2), Fraction(0))
        assert r2 == 4

    def test_all_points_enclosed(self):
        import random

        rng = random.Random(9)
        for _ in range(30):
            pts = [pt(rng.randint(-20, 20), rng.randint(-20, 20)) for _ in range(rng.randint(1, 12))]
            center, r2 = min_enclosing_circle(pts)
            from gridtw.geometry import dist2

            assert all(dist2(center, p) <= r2 for p in pts)


class TestInscribed:
    def test_unit_square_half(self):
        center, r2 = inscribed_radius_lower(square())
        assert abs(math.sqrt(float(r2)) - 0.5) < 1e-6

    def test_interior_point_is_interior(self):
        for poly in (square(), l_shape(), regular_ngon(7)):
            p = interior_point(poly)
            assert poly.contains_interior(p)

    def test_point_segment_distance(self):
        assert point_segment_dist2(pt(0, 1), pt(-1, 0), pt(1, 0)) == 1
        assert point_segment_dist2(pt(3, 0), pt(-1, 0), pt(1, 0)) == 4


class TestFatness:
    def test_unit_square_sqrt2(self):
        report = fatness([square()])
        assert abs(report.alpha - math.sqrt(2)) < 1e-6

    def test_regular_ngon_analytic(self):
        for n in (4, 6, 8):
            report = fatness([regular_ngon(n)])
            assert abs(report.alpha - 1 / math.cos(math.pi / n)) < 1e-6

    def test_disk_proxy_alpha_near_one(self):
        report = fatness([regular_ngon(64)])
        assert report.alpha < 1.02

    def test_rectangle_mix(self):
        report = fatness([rectangle(10, 1), square()])
        # max enclosing: sqrt(101)/2 (long rectangle), min inscribed: 1/2.
        assert abs(report.alpha - math.sqrt(101)) < 1e-5

    def test_empty_rejected(self):
        with pytest.raises(DegeneracyError):
            fatness([])
