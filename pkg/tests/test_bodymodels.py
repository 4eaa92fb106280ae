from fractions import Fraction

import pytest

from gridtw.bodymodels import (
    HypothesisViolation,
    classify_pair,
    contact_points,
    is_convex,
    model_fat_convex,
    model_rho_convex,
)
from gridtw.generators import convex_bodies, l_shaped_bodies
from gridtw.geometry import DegeneracyError, pt
from gridtw.planarize import intersection_graph
from gridtw.polygons import SimplePolygon


def square(side=4, x0=0, y0=0):
    s = Fraction(side)
    return SimplePolygon.from_ring(
        [pt(x0, y0), (Fraction(x0) + s, Fraction(y0)), (Fraction(x0) + s, Fraction(y0) + s), (Fraction(x0), Fraction(y0) + s)]
    )


class TestClassifyPair:
    def test_overlapping_squares(self):
        assert classify_pair(square(4, 0, 0), square(4, 2, 2)) == "overlapping"

    def test_disjoint(self):
        assert classify_pair(square(2, 0, 0), square(2, 10, 0)) == "disjoint"

    def test_tangent_edge(self):
        assert classify_pair(square(2, 0, 0), square(2, 2, 0)) == "tangent"

    def test_nested(self):
        assert classify_pair(square(10, 0, 0), square(2, 3, 3)) == "overlapping"


class TestContactPoints:
    def test_two_overlapping_squares(self):
        bodies = [square(4, 0, 0), square(4, 2, 2)]
        contacts = contact_points(bodies, seed=1)
        p = contacts.pair_points[(0, 1)]
        assert bodies[0].contains_interior(p) and bodies[1].contains_interior(p)
        for i in (0, 1):
            assert bodies[i].contains_interior(contacts.anchors[i])

    def test_disjoint_only_anchors(self):
        bodies = [square(2, 0, 0), square(2, 10, 10)]
        contacts = contact_points(bodies, seed=1)
        assert not contacts.pair_points
        assert len(contacts.anchors) == 2

    def test_tangent_rejected(self):
        with pytest.raises(DegeneracyError):
            contact_points([square(2, 0, 0), square(2, 2, 0)], seed=1)

    def test_points_in_general_position(self):
        from gridtw.geometry import orient

        bodies = convex_bodies(seed=5, n=6)
        contacts = contact_points(bodies, seed=5)
        pts = list(contacts.anchors.values()) + list(contacts.pair_points.values())
        assert len(set(pts)) == len(pts)
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                for k in range(j + 1, len(pts)):
                    assert orient(pts[i], pts[j], pts[k]) != 0

    def test_degree_cap(self):
        bodies = convex_bodies(seed=2, n=7)
        contacts = contact_points(bodies, seed=2)
        for i in range(len(bodies)):
            assert len(contacts.points_of(i)) <= contacts.max_degree() + 1


class TestFatConvex:
    def test_sparse_squares(self):
        bodies = convex_bodies(seed=3, n=6)
        contacts = contact_points(bodies, seed=3)
        arr, bijection, report = model_fat_convex(bodies, contacts, h=3)
        assert report.max_degree <= report.degree_bound
        got = intersection_graph(arr)
        want_edges = contacts.touching_pairs()
        assert {tuple(sorted((u, w))) for _, u, w in got.edges()} == want_edges

    def test_isolated_bodies_trivial(self):
        bodies = [square(2, 0, 0), square(2, 20, 0)]
        contacts = contact_points(bodies, seed=1)
        arr, _, report = model_fat_convex(bodies, contacts, h=3)
        assert report.max_degree == 0
        assert len(arr.crossings) == 0
        # Isolated bodies degenerate to their anchor points.
        assert all(p.length == 0 for p in arr.polysegments)

    def test_stack_violates_degree_check(self):
        # A stack of disk proxies (64-gons, alpha near 1) through one region:
        # a K18 clique gives degree 17 > 16 alpha^2 for h = 1.
        import math

        from gridtw.geometry import snap_point

        def disk(cx, cy, r=10.0, n=24):
            ring = [
                snap_point(cx + r * math.cos(2 * math.pi * t / n), cy + r * math.sin(2 * math.pi * t / n))
                for t in range(n)
            ]
            return SimplePolygon.from_ring(ring)

        bodies = [disk(i / 4.0, i / 3.0) for i in range(18)]
        contacts = contact_points(bodies, seed=4)
        assert contacts.max_degree() == 17
        with pytest.raises(HypothesisViolation):
            model_fat_convex(bodies, contacts, h=1)

    def test_polyline_lengths(self):
        bodies = convex_bodies(seed=9, n=5)
        contacts = contact_points(bodies, seed=9)
        arr, _, _ = model_fat_convex(bodies, contacts, h=3)
        for i, poly in enumerate(arr.polysegments):
            assert poly.length == len(contacts.points_of(i)) - 1

    def test_nonconvex_rejected(self):
        bodies = l_shaped_bodies(seed=1, n=2)
        assert not is_convex(bodies[0])
        contacts = contact_points(bodies, seed=1)
        with pytest.raises(DegeneracyError):
            model_fat_convex(bodies, contacts, h=3)


class TestRhoConvex:
    def test_convex_bodies_rho1(self):
        bodies = convex_bodies(seed=7, n=5)
        contacts = contact_points(bodies, seed=7)
        arr, _, report = model_rho_convex(bodies, contacts, rho=1)
        got = {tuple(sorted(c.pair)) for c in arr.crossings}
        assert contacts.touching_pairs() <= got or got == contacts.touching_pairs()
        assert all(L <= report.length_bound for L in report.lengths.values())

    def test_single_body_degenerates_to_point(self):
        bodies = [square(3, 0, 0)]
        contacts = contact_points(bodies, seed=1)
        arr, _, _ = model_rho_convex(bodies, contacts, rho=1)
        assert arr.polysegments[0].length == 0

    def test_l_shaped_chain_rho2(self):
        bodies = l_shaped_bodies(seed=2, n=3)
        contacts = contact_points(bodies, seed=2)
        arr, _, report = model_rho_convex(bodies, contacts, rho=2)
        got = intersection_graph(arr)
        assert {tuple(sorted((u, w))) for _, u, w in got.edges()} == contacts.touching_pairs()
        assert report.max_degree == 2
        assert all(c <= report.crossing_bound for c in report.crossing_counts.values())

    def test_rho_declaration_enforced(self):
        bodies = l_shaped_bodies(seed=3, n=2)
        contacts = contact_points(bodies, seed=3)
        # L-shapes need two-segment geodesics; rho=1 must be refused when a
        # bending geodesic shows up.
        try:
            arr, _, _ = model_rho_convex(bodies, contacts, rho=1)
        except DegeneracyError:
            return
        # If all geodesics happened to be straight, the model is still valid.
        assert intersection_graph(arr).num_edges() == len(contacts.touching_pairs())

    def test_tree_count_mode(self):
        bodies = convex_bodies(seed=11, n=4)
        contacts = contact_points(bodies, seed=11)
        arr1, _, rep_offset = model_rho_convex(bodies, contacts, rho=1, count_mode="offset")
        arr2, _, rep_tree = model_rho_convex(bodies, contacts, rho=1, count_mode="tree")
        assert arr1 == arr2
        assert rep_tree.count_mode == "tree"
