"""Exact planar primitives: rational points, polysegments, and arrangements.

Every predicate runs on exact rational coordinates, so crossing detection,
the at-most-two-per-point rule, and general-position checks are
deterministic across runs and platforms.  Generators may produce floats;
they must snap to rationals on ingestion (`snap_point`).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

Point = tuple[Fraction, Fraction]


class DegeneracyError(ValueError):
    """Geometric input violates a finiteness or general-position hypothesis."""


def pt(x, y) -> Point:
    return (Fraction(x), Fraction(y))


def snap_point(x: float, y: float, denominator: int = 2**20) -> Point:
    """Snap float coordinates onto a rational grid."""
    return (
        Fraction(round(x * denominator), denominator),
        Fraction(round(y * denominator), denominator),
    )


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of the cross product (b - a) x (c - a): +1 left turn, -1 right, 0 collinear."""
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def dist2(a: Point, b: Point) -> Fraction:
    return (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """Exact: p lies on the closed segment ab."""
    if orient(a, b, p) != 0:
        return False
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


OVERLAP = "overlap"


def segment_intersection(a1: Point, a2: Point, b1: Point, b2: Point):
    """Intersection of two closed segments.

    Returns [] (disjoint), [point] (single exact point), or OVERLAP when the
    segments share infinitely many points.
    """
    r = (a2[0] - a1[0], a2[1] - a1[1])
    s = (b2[0] - b1[0], b2[1] - b1[1])
    den = r[0] * s[1] - r[1] * s[0]
    qp = (b1[0] - a1[0], b1[1] - a1[1])
    if den != 0:
        t = (qp[0] * s[1] - qp[1] * s[0]) / den
        u = (qp[0] * r[1] - qp[1] * r[0]) / den
        if 0 <= t <= 1 and 0 <= u <= 1:
            return [(a1[0] + t * r[0], a1[1] + t * r[1])]
        return []
    # Parallel.
    if qp[0] * r[1] - qp[1] * r[0] != 0:
        return []
    # Collinear: compare parameter intervals along the dominant axis.
    axis = 0 if abs(r[0]) >= abs(r[1]) else 1
    if r[axis] == 0:
        # a is a single point (degenerate segment).
        return [a1] if on_segment(a1, b1, b2) else []
    lo_a, hi_a = sorted((a1[axis], a2[axis]))
    lo_b, hi_b = sorted((b1[axis], b2[axis]))
    lo, hi = max(lo_a, lo_b), min(hi_a, hi_b)
    if lo > hi:
        return []
    if lo == hi:
        for cand in (a1, a2, b1, b2):
            if cand[axis] == lo:
                return [cand]
    return OVERLAP


@dataclass(frozen=True)
class Polysegment:
    """Non-self-crossing chain of straight segments; may degenerate to a point.

    Length is the segment count (one more than the number of bend points).
    """

    points: tuple[Point, ...]

    def __post_init__(self):
        if not self.points:
            raise DegeneracyError("polysegment needs at least one point")
        for a, b in zip(self.points, self.points[1:]):
            if a == b:
                raise DegeneracyError("zero-length segment in polysegment")
        self._check_simple()

    @property
    def length(self) -> int:
        return len(self.points) - 1

    def segments(self) -> list[tuple[Point, Point]]:
        return list(zip(self.points, self.points[1:]))

    def endpoints(self) -> tuple[Point, Point]:
        return self.points[0], self.points[-1]

    def contains_point(self, p: Point) -> bool:
        if len(self.points) == 1:
            return p == self.points[0]
        return any(on_segment(p, a, b) for a, b in self.segments())

    def _check_simple(self):
        segs = self.segments()
        for i in range(len(segs)):
            for j in range(i + 1, len(segs)):
                inter = segment_intersection(*segs[i], *segs[j])
                if j == i + 1:
                    if inter == OVERLAP:
                        raise DegeneracyError("polysegment folds back onto itself")
                    if inter != [self.points[j]]:
                        raise DegeneracyError("adjacent segments cross beyond their bend")
                else:
                    if inter == OVERLAP or inter:
                        raise DegeneracyError("polysegment is self-crossing")


@dataclass(frozen=True)
class Crossing:
    point: Point
    pair: tuple[int, int]  # indices of the two polysegments, i < j


@dataclass(frozen=True)
class Arrangement:
    polysegments: tuple[Polysegment, ...]
    crossings: tuple[Crossing, ...]

    def crossings_on(self, i: int) -> list[Crossing]:
        return [c for c in self.crossings if i in c.pair]

    def touching_pairs(self) -> set[tuple[int, int]]:
        return {c.pair for c in self.crossings}


def segment_crossings(a: Polysegment, b: Polysegment) -> list[Point]:
    """All exact intersection points of two polysegments.

    Collinear overlaps violate the finite-intersection hypothesis and raise
    DegeneracyError.
    """
    pts: set[Point] = set()
    if len(a.points) == 1:
        return [a.points[0]] if b.contains_point(a.points[0]) else []
    if len(b.points) == 1:
        return [b.points[0]] if a.contains_point(b.points[0]) else []
    for sa in a.segments():
        for sb in b.segments():
            inter = segment_intersection(*sa, *sb)
            if inter == OVERLAP:
                raise DegeneracyError("polysegments overlap along a segment")
            pts.update(inter)
    return sorted(pts)


def build_arrangement(polysegments: Sequence[Polysegment]) -> Arrangement:
    """Compute all pairwise crossings and validate the two-per-point rule."""
    ps = tuple(polysegments)
    crossings: list[Crossing] = []
    involved: dict[Point, set[int]] = {}
    for i in range(len(ps)):
        for j in range(i + 1, len(ps)):
            for p in segment_crossings(ps[i], ps[j]):
                crossings.append(Crossing(point=p, pair=(i, j)))
                involved.setdefault(p, set()).update((i, j))
    for p, ids in involved.items():
        if len(ids) > 2:
            raise DegeneracyError(
                f"point {float(p[0]):.4g},{float(p[1]):.4g} lies on {len(ids)} polysegments"
            )
    crossings.sort(key=lambda c: (c.pair, c.point))
    return Arrangement(polysegments=ps, crossings=tuple(crossings))


def xi(arr: Arrangement) -> int:
    """Largest number of crossing points carried by a single polysegment."""
    best = 0
    for i in range(len(arr.polysegments)):
        pts = {c.point for c in arr.crossings_on(i)}
        best = max(best, len(pts))
    return best


# -- general position -----------------------------------------------------------


def perturb_general_position(
    points: Sequence[Point],
    epsilon: Fraction,
    seed: int,
    regions: Optional[Sequence[Optional[object]]] = None,
    max_rounds: int = 200,
) -> list[Point]:
    """Enforce pairwise-distinct, no-three-collinear point sets.

    Offending points are jittered by rational offsets of magnitude at most
    `epsilon` from their original position; when `regions` is given, point i
    must stay strictly inside every polygon in regions[i] (each entry is a
    sequence of objects with a `contains_interior(point)` method).  Raises
    DegeneracyError when verification keeps failing.
    """
    if epsilon <= 0:
        raise DegeneracyError("epsilon must be positive")
    rng = random.Random(seed)
    pts = list(points)
    originals = list(points)
    grid = 2**12

    def canon_dir(p: Point, q: Point) -> tuple[int, int]:
        # Direction of the line pq as a reduced integer pair, sign-normalized.
        dx, dy = q[0] - p[0], q[1] - p[1]
        ax = dx.numerator * dy.denominator
        ay = dy.numerator * dx.denominator
        import math as _math

        g = _math.gcd(abs(ax), abs(ay))
        ax, ay = ax // g, ay // g
        if ax < 0 or (ax == 0 and ay < 0):
            ax, ay = -ax, -ay
        return ax, ay

    def violation() -> Optional[int]:
        seen: dict[Point, int] = {}
        for i, p in enumerate(pts):
            if p in seen:
                return i
            seen[p] = i
        n = len(pts)
        # Three points are collinear iff two of them lie on the same line
        # through the third; one direction table per anchor finds them.
        for i in range(n):
            dirs: dict[tuple[int, int], int] = {}
            for j in range(i + 1, n):
                d = canon_dir(pts[i], pts[j])
                if d in dirs:
                    return j
                dirs[d] = j
        return None

    def region_ok(i: int, p: Point) -> bool:
        if regions is None or regions[i] is None:
            return True
        return all(poly.contains_interior(p) for poly in regions[i])

    for _ in range(max_rounds):
        bad = violation()
        if bad is None:
            return pts
        for _attempt in range(50):
            dx = Fraction(rng.randint(-grid, grid), grid) * epsilon / 2
            dy = Fraction(rng.randint(-grid, grid), grid) * epsilon / 2
            cand = (originals[bad][0] + dx, originals[bad][1] + dy)
            if region_ok(bad, cand):
                pts[bad] = cand
                break
        else:
            raise DegeneracyError(f"cannot keep point {bad} inside its region while perturbing")
    raise DegeneracyError("general position not reached within the retry budget")


# -- rational square-root lower bound -------------------------------------------


def sqrt_lower_bound(value: Fraction, precision_bits: int = 32) -> Fraction:
    """A rational lower bound of sqrt(value), within 2^-precision_bits relative."""
    if value < 0:
        raise ValueError("negative value")
    if value == 0:
        return Fraction(0)
    import math

    num, den = value.numerator, value.denominator
    scale = 1 << precision_bits
    # sqrt(num/den) = sqrt(num*den)/den >= isqrt(num*den*scale^2) / (den*scale)
    root = math.isqrt(num * den * scale * scale)
    return Fraction(root, den * scale)
