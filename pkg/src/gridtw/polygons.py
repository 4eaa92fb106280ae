"""Simple polygons: exact point location, geodesics, and fatness measures.

The minimum enclosing circle is computed exactly (rational center and
squared radius, Welzl's algorithm); the largest inscribed circle is a
certified lower bound: a candidate center (pole of inaccessibility, via
shapely) whose exact clearance to the boundary is reported.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from heapq import heappop, heappush
from typing import Optional, Sequence

from shapely.geometry import Polygon as ShapelyPolygon
from shapely.ops import polylabel

from .geometry import (
    DegeneracyError,
    OVERLAP,
    Point,
    Polysegment,
    dist2,
    on_segment,
    orient,
    segment_intersection,
    snap_point,
)


@dataclass(frozen=True)
class SimplePolygon:
    """Simple closed polygon, counterclockwise boundary, positive area."""

    ring: tuple[Point, ...]

    def __post_init__(self):
        if len(self.ring) < 3:
            raise DegeneracyError("polygon needs at least three vertices")
        if len(set(self.ring)) != len(self.ring):
            raise DegeneracyError("repeated polygon vertex")
        area2 = self.twice_area()
        if area2 == 0:
            raise DegeneracyError("polygon has zero area")
        if area2 < 0:
            raise DegeneracyError("polygon ring must be counterclockwise")
        edges = self.edges()
        n = len(edges)
        for i in range(n):
            for j in range(i + 1, n):
                adjacent = j == i + 1 or (i == 0 and j == n - 1)
                inter = segment_intersection(*edges[i], *edges[j])
                if inter == OVERLAP:
                    raise DegeneracyError("polygon boundary overlaps itself")
                if adjacent:
                    shared = self.ring[j] if j == i + 1 else self.ring[0]
                    if inter != [shared]:
                        raise DegeneracyError("adjacent polygon edges cross")
                elif inter:
                    raise DegeneracyError("polygon boundary is self-crossing")

    @staticmethod
    def from_ring(points: Sequence[Point]) -> "SimplePolygon":
        """Build from a ring in either orientation (normalized to ccw)."""
        ring = tuple(points)
        area2 = _twice_area(ring)
        if area2 < 0:
            ring = tuple(reversed(ring))
        return SimplePolygon(ring=ring)

    def twice_area(self) -> Fraction:
        return _twice_area(self.ring)

    def edges(self) -> list[tuple[Point, Point]]:
        n = len(self.ring)
        return [(self.ring[i], self.ring[(i + 1) % n]) for i in range(n)]

    # -- point location ---------------------------------------------------

    def locate(self, p: Point) -> str:
        """'interior' | 'boundary' | 'exterior', exactly."""
        for a, b in self.edges():
            if on_segment(p, a, b):
                return "boundary"
        # Ray casting with the half-open rule on y-spans.
        inside = False
        for a, b in self.edges():
            if (a[1] > p[1]) != (b[1] > p[1]):
                xint = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
                if p[0] < xint:
                    inside = not inside
        return "interior" if inside else "exterior"

    def contains_interior(self, p: Point) -> bool:
        return self.locate(p) == "interior"

    def contains(self, p: Point) -> bool:
        return self.locate(p) != "exterior"

    # -- segment containment ------------------------------------------------

    def contains_segment(self, a: Point, b: Point) -> bool:
        """Closed containment of segment ab, exact.

        The segment must not properly cross the boundary, must not run along
        it, and the midpoint of every maximal boundary-free piece must be
        interior.
        """
        if a == b:
            return self.contains(a)
        cuts: set[Point] = {a, b}
        for e1, e2 in self.edges():
            inter = segment_intersection(a, b, e1, e2)
            if inter == OVERLAP:
                return False
            cuts.update(inter)
        # Order cut points along ab and test the midpoint of each gap.
        d = (b[0] - a[0], b[1] - a[1])

        def param(p: Point) -> Fraction:
            if d[0] != 0:
                return (p[0] - a[0]) / d[0]
            return (p[1] - a[1]) / d[1]

        ordered = sorted(cuts, key=param)
        for p1, p2 in zip(ordered, ordered[1:]):
            mid = ((p1[0] + p2[0]) / 2, (p1[1] + p2[1]) / 2)
            if self.locate(mid) == "exterior":
                return False
        return True

    def to_shapely(self) -> ShapelyPolygon:
        return ShapelyPolygon([(float(x), float(y)) for x, y in self.ring])


def _twice_area(ring: Sequence[Point]) -> Fraction:
    s = Fraction(0)
    n = len(ring)
    for i in range(n):
        x1, y1 = ring[i]
        x2, y2 = ring[(i + 1) % n]
        s += x1 * y2 - x2 * y1
    return s


# -- geodesics -------------------------------------------------------------------


def geodesic_path(poly: SimplePolygon, p: Point, q: Point) -> Polysegment:
    """Euclidean shortest path between two points inside a simple polygon.

    Visibility graph over the polygon vertices plus the two query points;
    every emitted segment passes the exact containment predicate.  The path
    may pass through reflex vertices of the boundary.
    """
    for name, point in (("start", p), ("end", q)):
        if not poly.contains(point):
            raise DegeneracyError(f"{name} point lies outside the polygon")
    if p == q:
        return Polysegment(points=(p,))
    if poly.contains_segment(p, q):
        return Polysegment(points=(p, q))

    nodes: list[Point] = [p, q] + [v for v in poly.ring if v not in (p, q)]
    n = len(nodes)
    adj: dict[int, list[tuple[float, int]]] = {i: [] for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            if poly.contains_segment(nodes[i], nodes[j]):
                w = math.sqrt(float(dist2(nodes[i], nodes[j])))
                adj[i].append((w, j))
                adj[j].append((w, i))

    # Dijkstra from node 0 (= p) to node 1 (= q).
    dist: dict[int, float] = {0: 0.0}
    prev: dict[int, int] = {}
    heap: list[tuple[float, int]] = [(0.0, 0)]
    done: set[int] = set()
    while heap:
        d, i = heappop(heap)
        if i in done:
            continue
        done.add(i)
        if i == 1:
            break
        for w, j in adj[i]:
            nd = d + w
            if nd < dist.get(j, math.inf):
                dist[j] = nd
                prev[j] = i
                heappush(heap, (nd, j))
    if 1 not in done:
        raise DegeneracyError("no geodesic found; polygon containment failed")
    seq = [1]
    while seq[-1] != 0:
        seq.append(prev[seq[-1]])
    pts = [nodes[i] for i in reversed(seq)]
    return Polysegment(points=tuple(pts))


# -- minimum enclosing circle (exact) --------------------------------------------


def _circle_two(a: Point, b: Point) -> tuple[Point, Fraction]:
    c = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
    return c, dist2(c, a)


def _circle_three(a: Point, b: Point, c: Point) -> Optional[tuple[Point, Fraction]]:
    # Circumcenter by solving the perpendicular-bisector equations.
    d = 2 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]))
    if d == 0:
        return None
    a2 = a[0] ** 2 + a[1] ** 2
    b2 = b[0] ** 2 + b[1] ** 2
    c2 = c[0] ** 2 + c[1] ** 2
    ux = (a2 * (b[1] - c[1]) + b2 * (c[1] - a[1]) + c2 * (a[1] - b[1])) / d
    uy = (a2 * (c[0] - b[0]) + b2 * (a[0] - c[0]) + c2 * (b[0] - a[0])) / d
    center = (ux, uy)
    return center, dist2(center, a)


def _in_circle(circle: Optional[tuple[Point, Fraction]], p: Point) -> bool:
    if circle is None:
        return False
    center, r2 = circle
    return dist2(center, p) <= r2


def min_enclosing_circle(points: Sequence[Point]) -> tuple[Point, Fraction]:
    """Exact smallest enclosing circle: rational center and squared radius."""
    pts = list(dict.fromkeys(points))
    if not pts:
        raise DegeneracyError("no points")
    if len(pts) == 1:
        return pts[0], Fraction(0)
    rng = random.Random(0xC1C1E)
    rng.shuffle(pts)

    circle: Optional[tuple[Point, Fraction]] = None
    for i, p in enumerate(pts):
        if _in_circle(circle, p):
            continue
        circle = (p, Fraction(0))
        for j in range(i):
            q = pts[j]
            if _in_circle(circle, q):
                continue
            circle = _circle_two(p, q)
            for k in range(j):
                s = pts[k]
                if _in_circle(circle, s):
                    continue
                three = _circle_three(p, q, s)
                if three is not None:
                    circle = three
    assert circle is not None
    return circle


# -- inscribed circle lower bound -------------------------------------------------


def point_segment_dist2(p: Point, a: Point, b: Point) -> Fraction:
    """Exact squared distance from a point to a closed segment."""
    ab = (b[0] - a[0], b[1] - a[1])
    ap = (p[0] - a[0], p[1] - a[1])
    denom = ab[0] ** 2 + ab[1] ** 2
    if denom == 0:
        return dist2(p, a)
    t = (ap[0] * ab[0] + ap[1] * ab[1]) / denom
    if t <= 0:
        return dist2(p, a)
    if t >= 1:
        return dist2(p, b)
    proj = (a[0] + t * ab[0], a[1] + t * ab[1])
    return dist2(p, proj)


def clearance2(poly: SimplePolygon, p: Point) -> Fraction:
    """Exact squared distance from a point to the polygon boundary."""
    return min(point_segment_dist2(p, a, b) for a, b in poly.edges())


def interior_point(poly: SimplePolygon, tolerance: float = 1e-7) -> Point:
    """A rational point strictly inside the polygon (pole of inaccessibility)."""
    label = polylabel(poly.to_shapely(), tolerance=tolerance)
    for denom_bits in (24, 30, 40, 52):
        cand = snap_point(label.x, label.y, 2**denom_bits)
        if poly.contains_interior(cand):
            return cand
    raise DegeneracyError("could not certify an interior point")


def inscribed_radius_lower(poly: SimplePolygon, tolerance: float = 1e-9) -> tuple[Point, Fraction]:
    """Center and exact squared clearance of a near-optimal inscribed circle.

    The clearance is the exact distance from the returned center to the
    boundary, so it is always a certified lower bound on the true inscribed
    radius; the pole-of-inaccessibility search brings it within `tolerance`
    of optimal.
    """
    sp = poly.to_shapely()
    # polylabel's tolerance is absolute; scale with the polygon size.
    diam = max(sp.bounds[2] - sp.bounds[0], sp.bounds[3] - sp.bounds[1])
    label = polylabel(sp, tolerance=max(tolerance, tolerance * diam))
    center = None
    for denom_bits in (30, 40, 52):
        cand = snap_point(label.x, label.y, 2**denom_bits)
        if poly.contains_interior(cand):
            center = cand
            break
    if center is None:
        raise DegeneracyError("inscribed-circle center could not be certified interior")
    return center, clearance2(poly, center)


# -- fatness -----------------------------------------------------------------------


@dataclass(frozen=True)
class BodyRadii:
    enclosing: float
    inscribed: float
    enclosing_sq: Fraction
    inscribed_sq: Fraction


@dataclass(frozen=True)
class FatnessReport:
    per_body: tuple[BodyRadii, ...]
    max_enclosing: float
    min_inscribed: float
    alpha: float


def fatness(bodies: Sequence[SimplePolygon]) -> FatnessReport:
    """Fatness of a collection: max circumscribed over min inscribed radius.

    The enclosing radius is exact (up to the final square root); the
    inscribed radius is a certified lower bound, making the reported alpha
    an upper-bound-consistent estimate.
    """
    if not bodies:
        raise DegeneracyError("empty body collection")
    per = []
    for poly in bodies:
        _, r2_enc = min_enclosing_circle(list(poly.ring))
        _, r2_ins = inscribed_radius_lower(poly)
        if r2_ins <= 0:
            raise DegeneracyError("degenerate polygon: zero inscribed radius")
        per.append(
            BodyRadii(
                enclosing=math.sqrt(float(r2_enc)),
                inscribed=math.sqrt(float(r2_ins)),
                enclosing_sq=r2_enc,
                inscribed_sq=r2_ins,
            )
        )
    max_enc = max(b.enclosing for b in per)
    min_ins = min(b.inscribed for b in per)
    return FatnessReport(
        per_body=tuple(per),
        max_enclosing=max_enc,
        min_inscribed=min_ins,
        alpha=max_enc / min_ins,
    )
