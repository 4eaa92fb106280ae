"""Modeling plane bodies by polysegments that preserve the touch relation.

Contact points: one anchor point per body, one shared point per touching
pair, all in general position.  A body is then traced by a polysegment
through all of its contact points:

* convex bodies: the points threaded in lexicographic order (monotone, so
  never self-crossing, and inside the body by convexity);
* rho-convex bodies: a tree of geodesics is grown point by point, then
  doubled into a boundary walk offset into the body, routed exactly through
  every contact point.

Everything emitted is re-validated exactly: polysegment simplicity,
containment, the two-per-point rule, and touch equivalence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Optional, Sequence

from shapely.ops import polylabel

from .geometry import (
    Arrangement,
    DegeneracyError,
    OVERLAP,
    Point,
    Polysegment,
    build_arrangement,
    dist2,
    on_segment,
    orient,
    perturb_general_position,
    segment_intersection,
    snap_point,
    sqrt_lower_bound,
    xi as arrangement_xi,
)
from .polygons import (
    SimplePolygon,
    clearance2,
    fatness,
    geodesic_path,
    interior_point,
    point_segment_dist2,
)


class HypothesisViolation(DegeneracyError):
    """The input breaks a stated modeling hypothesis (carries the numbers)."""

    def __init__(self, message: str, report: dict):
        super().__init__(message)
        self.report = report


# -- contact points -----------------------------------------------------------------


@dataclass(frozen=True)
class ContactPointSet:
    anchors: dict[int, Point]  # body index -> interior point
    pair_points: dict[tuple[int, int], Point]  # (i, j) with i < j -> shared point

    def points_of(self, i: int) -> list[Point]:
        pts = [self.anchors[i]]
        for (a, b), p in sorted(self.pair_points.items()):
            if i in (a, b):
                pts.append(p)
        return pts

    def touching_pairs(self) -> set[tuple[int, int]]:
        return set(self.pair_points)

    def max_degree(self) -> int:
        deg: dict[int, int] = {i: 0 for i in self.anchors}
        for a, b in self.pair_points:
            deg[a] += 1
            deg[b] += 1
        return max(deg.values(), default=0)


def _proper_cross(a1: Point, a2: Point, b1: Point, b2: Point) -> bool:
    return (
        orient(a1, a2, b1) * orient(a1, a2, b2) < 0
        and orient(b1, b2, a1) * orient(b1, b2, a2) < 0
    )


def classify_pair(a: SimplePolygon, b: SimplePolygon) -> str:
    """'disjoint' | 'tangent' | 'overlapping', by exact predicates.

    Overlapping means the intersection has non-empty interior; tangency is
    boundary contact only.  A float-seeded candidate point, verified
    exactly, backs up the purely combinatorial tests.
    """
    touching = False
    for e1 in a.edges():
        for e2 in b.edges():
            inter = segment_intersection(*e1, *e2)
            if inter == OVERLAP or inter:
                touching = True
            if inter != OVERLAP and inter and _proper_cross(*e1, *e2):
                return "overlapping"
    for v in a.ring:
        if b.locate(v) == "interior":
            return "overlapping"
        if b.locate(v) == "boundary":
            touching = True
    for v in b.ring:
        if a.locate(v) == "interior":
            return "overlapping"
        if a.locate(v) == "boundary":
            touching = True
    if not touching:
        return "disjoint"
    cand = _shared_interior_point(a, b)
    return "overlapping" if cand is not None else "tangent"


def _shared_interior_point(a: SimplePolygon, b: SimplePolygon) -> Optional[Point]:
    """A rational point interior to both bodies, or None."""
    inter = a.to_shapely().intersection(b.to_shapely())
    if inter.is_empty:
        return None
    polys = []
    if inter.geom_type == "Polygon":
        polys = [inter]
    elif inter.geom_type in ("MultiPolygon", "GeometryCollection"):
        polys = [g for g in inter.geoms if g.geom_type == "Polygon"]
    for poly in polys:
        if poly.area <= 0:
            continue
        label = polylabel(poly, tolerance=max(1e-9, poly.area * 1e-6))
        for bits in (24, 30, 40, 52):
            cand = snap_point(label.x, label.y, 2**bits)
            if a.contains_interior(cand) and b.contains_interior(cand):
                return cand
    return None


def contact_points(bodies: Sequence[SimplePolygon], seed: int = 0) -> ContactPointSet:
    """Anchor and pair points in general position, all exactly verified.

    Touching pairs whose intersection has empty interior are rejected (the
    modeling hypotheses require overlap, not tangency).
    """
    anchors: dict[int, Point] = {}
    pair_points: dict[tuple[int, int], Point] = {}
    for i, body in enumerate(bodies):
        anchors[i] = interior_point(body)
    for i in range(len(bodies)):
        for j in range(i + 1, len(bodies)):
            kind = classify_pair(bodies[i], bodies[j])
            if kind == "disjoint":
                continue
            if kind == "tangent":
                raise DegeneracyError(
                    f"bodies {i} and {j} touch with empty-interior intersection"
                )
            p = _shared_interior_point(bodies[i], bodies[j])
            if p is None:
                raise DegeneracyError(f"no certified interior point for bodies {i},{j}")
            pair_points[(i, j)] = p

    order: list[tuple[Optional[tuple[int, int]], int]] = []
    pts: list[Point] = []
    regions: list[list[SimplePolygon]] = []
    for i in sorted(anchors):
        order.append((None, i))
        pts.append(anchors[i])
        regions.append([bodies[i]])
    for (i, j) in sorted(pair_points):
        order.append(((i, j), -1))
        pts.append(pair_points[(i, j)])
        regions.append([bodies[i], bodies[j]])

    clear = min(
        min(clearance2(poly, p) for poly in regs) for p, regs in zip(pts, regions)
    )
    eps = sqrt_lower_bound(clear) / 2
    if eps <= 0:
        raise DegeneracyError("contact points have no clearance to perturb within")
    moved = perturb_general_position(pts, eps, seed=seed, regions=regions)

    out_anchors: dict[int, Point] = {}
    out_pairs: dict[tuple[int, int], Point] = {}
    for (tag, idx), p in zip(order, moved):
        if tag is None:
            out_anchors[idx] = p
        else:
            out_pairs[tag] = p
    return ContactPointSet(anchors=out_anchors, pair_points=out_pairs)


# -- convex bodies: monotone threading ------------------------------------------------


def is_convex(poly: SimplePolygon) -> bool:
    ring = poly.ring
    n = len(ring)
    return all(orient(ring[i], ring[(i + 1) % n], ring[(i + 2) % n]) >= 0 for i in range(n))


@dataclass(frozen=True)
class FatConvexReport:
    alpha: float
    h: int
    max_degree: int
    degree_bound: float
    crossing_counts: dict[int, int]
    xi_value: int


def model_fat_convex(
    bodies: Sequence[SimplePolygon],
    contacts: ContactPointSet,
    h: int,
) -> tuple[Arrangement, dict[int, int], FatConvexReport]:
    """Thread each convex body's contact points in lexicographic order.

    Returns the arrangement, the body->polysegment bijection (index map),
    and a report with the degree check Delta <= 16 alpha^2 h.  Raises
    HypothesisViolation when the degree check fails.
    """
    for i, body in enumerate(bodies):
        if not is_convex(body):
            raise DegeneracyError(f"body {i} is not convex")
    rep = fatness(bodies)
    delta = contacts.max_degree()
    bound = 16 * rep.alpha**2 * h
    if delta > bound:
        raise HypothesisViolation(
            f"max degree {delta} exceeds 16 alpha^2 h = {bound:.3f}",
            report={"alpha": rep.alpha, "h": h, "delta": delta, "bound": bound},
        )

    polys: list[Polysegment] = []
    for i, body in enumerate(bodies):
        pts = sorted(contacts.points_of(i))
        poly = Polysegment(points=tuple(pts))
        for a, b in poly.segments():
            if not body.contains_segment(a, b):
                raise DegeneracyError(f"threaded polyline leaves convex body {i}")
        assert poly.length == len(pts) - 1
        polys.append(poly)

    arr = build_arrangement(polys)
    _check_touch_equivalence(arr, contacts)
    counts = {i: len({c.point for c in arr.crossings_on(i)}) for i in range(len(polys))}
    report = FatConvexReport(
        alpha=rep.alpha,
        h=h,
        max_degree=delta,
        degree_bound=bound,
        crossing_counts=counts,
        xi_value=arrangement_xi(arr),
    )
    return arr, {i: i for i in range(len(bodies))}, report


def _check_touch_equivalence(arr: Arrangement, contacts: ContactPointSet) -> None:
    got = arr.touching_pairs()
    want = contacts.touching_pairs()
    if got != want:
        raise DegeneracyError(
            f"touch relation not preserved: extra {sorted(got - want)}, missing {sorted(want - got)}"
        )


# -- rho-convex bodies: geodesic tree plus offset walk ---------------------------------


def _pull_bends_inward(poly: SimplePolygon, path: Polysegment) -> Polysegment:
    """Move geodesic bend points off the boundary into the interior."""
    pts = list(path.points)
    for idx in range(1, len(pts) - 1):
        v = pts[idx]
        if poly.locate(v) != "boundary":
            continue
        prev, nxt = pts[idx - 1], pts[idx + 1]
        d = (prev[0] - v[0] + nxt[0] - v[0], prev[1] - v[1] + nxt[1] - v[1])
        if d == (0, 0):
            continue
        norm = abs(d[0]) + abs(d[1])
        for j in range(6, 20):
            t = Fraction(1, 2**j) / norm
            cand = (v[0] + d[0] * t, v[1] + d[1] * t)
            if (
                poly.contains_interior(cand)
                and poly.contains_segment(prev, cand)
                and poly.contains_segment(cand, nxt)
            ):
                pts[idx] = cand
                break
        else:
            raise DegeneracyError("cannot pull a geodesic bend into the interior")
    return Polysegment(points=tuple(pts))


@dataclass
class _Tree:
    nodes: list[Point]
    segments: list[tuple[int, int]]  # node index pairs
    point_nodes: list[int]  # indices of contact-point nodes

    def index_of(self, p: Point) -> int:
        return self.nodes.index(p)

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {i: [] for i in range(len(self.nodes))}
        for a, b in self.segments:
            adj[a].append(b)
            adj[b].append(a)
        return adj


def _segments_cross_tree(tree: _Tree, seg: tuple[Point, Point], allowed: set[Point]) -> Optional[Point]:
    """First intersection of seg with the tree outside `allowed` points."""
    best: Optional[tuple[Fraction, Point]] = None
    a, b = seg
    d = (b[0] - a[0], b[1] - a[1])

    def param(p: Point) -> Fraction:
        if d[0] != 0:
            return (p[0] - a[0]) / d[0]
        return (p[1] - a[1]) / d[1]

    for ia, ib in tree.segments:
        inter = segment_intersection(a, b, tree.nodes[ia], tree.nodes[ib])
        if inter == OVERLAP:
            mid_cands = [p for p in (tree.nodes[ia], tree.nodes[ib]) if on_segment(p, a, b)]
            inter = mid_cands if mid_cands else [a]
        for p in inter:
            if p in allowed:
                continue
            t = param(p)
            if best is None or t < best[0]:
                best = (t, p)
    return None if best is None else best[1]


def _grow_tree(body: SimplePolygon, points: list[Point], rho: int) -> _Tree:
    """Grow a non-crossing tree of geodesics through all contact points."""
    pts = sorted(points)
    tree = _Tree(nodes=[pts[0]], segments=[], point_nodes=[0])
    if len(pts) == 1:
        return tree

    def add_path(path: Polysegment, target_is_new: bool):
        seq = list(path.points)
        idx_prev = None
        for p in seq:
            if p in tree.nodes:
                idx = tree.nodes.index(p)
            else:
                tree.nodes.append(p)
                idx = len(tree.nodes) - 1
            if idx_prev is not None:
                tree.segments.append((idx_prev, idx))
            idx_prev = idx

    def geodesic(a: Point, b: Point) -> Polysegment:
        path = _pull_bends_inward(body, geodesic_path(body, a, b))
        if path.length > rho:
            raise DegeneracyError(
                f"geodesic needs {path.length} segments; body is not {rho}-convex as declared"
            )
        return path

    first = geodesic(pts[0], pts[1])
    add_path(first, True)
    tree.point_nodes.append(tree.nodes.index(pts[1]))

    for p in pts[2:]:
        attached = False
        candidates = sorted(range(len(tree.nodes)), key=lambda i: float(dist2(p, tree.nodes[i])))
        for ci in candidates:
            target = tree.nodes[ci]
            path = geodesic(p, target)
            # The new path may meet the tree only at its target node.
            clear = True
            for sa, sb in path.segments():
                hit = _segments_cross_tree(tree, (sa, sb), allowed={target})
                if hit is not None:
                    clear = False
                    break
            if any(q in tree.nodes and q != target for q in path.points):
                clear = False
            if clear:
                add_path(path, True)
                tree.point_nodes.append(tree.nodes.index(p))
                attached = True
                break
        if not attached:
            # Fall back: walk toward the nearest node and stop at the first
            # tree contact, splitting the touched segment there.
            target = tree.nodes[candidates[0]]
            path = geodesic(p, target)
            hit = None
            cut: list[Point] = [path.points[0]]
            for sa, sb in path.segments():
                hit = _segments_cross_tree(tree, (sa, sb), allowed=set())
                if hit is None:
                    cut.append(sb)
                    continue
                cut.append(hit)
                break
            if hit is None:
                raise DegeneracyError("tree attachment failed unexpectedly")
            _split_tree_at(tree, hit)
            add_path(Polysegment(points=tuple(cut)), True)
            tree.point_nodes.append(tree.nodes.index(p))
    return tree


def _split_tree_at(tree: _Tree, p: Point) -> None:
    if p in tree.nodes:
        return
    for si, (ia, ib) in enumerate(tree.segments):
        a, b = tree.nodes[ia], tree.nodes[ib]
        if on_segment(p, a, b) and p not in (a, b):
            tree.nodes.append(p)
            ip = len(tree.nodes) - 1
            tree.segments[si] = (ia, ip)
            tree.segments.append((ip, ib))
            return
    raise DegeneracyError("split point does not lie on the tree")


def _dir_cmp(d1: tuple, d2: tuple) -> int:
    """Exact angular comparison of direction vectors (counterclockwise from +x)."""

    def half(d):
        return 0 if (d[1] > 0 or (d[1] == 0 and d[0] > 0)) else 1

    h1, h2 = half(d1), half(d2)
    if h1 != h2:
        return -1 if h1 < h2 else 1
    cross = d1[0] * d2[1] - d1[1] * d2[0]
    if cross > 0:
        return -1
    if cross < 0:
        return 1
    return 0


def _tree_clearance2(body: SimplePolygon, tree: _Tree) -> Fraction:
    """Smallest squared distance separating the tree from the boundary and
    from its own non-adjacent features."""
    best: Optional[Fraction] = None

    def consider(v: Fraction):
        nonlocal best
        if v > 0 and (best is None or v < best):
            best = v

    for ia, ib in tree.segments:
        a, b = tree.nodes[ia], tree.nodes[ib]
        for ea, eb in body.edges():
            inter = segment_intersection(a, b, ea, eb)
            if inter == OVERLAP or inter:
                raise DegeneracyError("tree touches the body boundary")
            consider(point_segment_dist2(ea, a, b))
            consider(point_segment_dist2(eb, a, b))
            consider(point_segment_dist2(a, ea, eb))
            consider(point_segment_dist2(b, ea, eb))
    n = len(tree.segments)
    for i in range(n):
        ia, ib = tree.segments[i]
        for j in range(i + 1, n):
            ja, jb = tree.segments[j]
            if {ia, ib} & {ja, jb}:
                continue
            a, b = tree.nodes[ia], tree.nodes[ib]
            c, d = tree.nodes[ja], tree.nodes[jb]
            consider(point_segment_dist2(c, a, b))
            consider(point_segment_dist2(d, a, b))
            consider(point_segment_dist2(a, c, d))
            consider(point_segment_dist2(b, c, d))
    if best is None:
        # Single-segment tree inside an open region; fall back to boundary
        # clearance of its endpoints.
        best = min(clearance2(body, tree.nodes[i]) for i in range(len(tree.nodes)))
    return best


def _offset_walk(tree: _Tree, delta: Fraction, side: int) -> list[Point]:
    """Boundary walk of the doubled tree, offset by delta, through-routing
    every contact-point node on its first visit."""
    adj = tree.adjacency()
    if len(tree.nodes) == 1:
        return [tree.nodes[0]]

    rotations: dict[int, list[int]] = {}
    for v, nbrs in adj.items():
        dirs = []
        for u in nbrs:
            d = (
                tree.nodes[u][0] - tree.nodes[v][0],
                tree.nodes[u][1] - tree.nodes[v][1],
            )
            dirs.append((d, u))
        dirs.sort(key=cmp_to_key(lambda x, y: _dir_cmp(x[0], y[0])))
        rotations[v] = [u for _, u in dirs]

    leaves = [i for i in range(len(tree.nodes)) if len(adj[i]) == 1]
    start_candidates = [i for i in tree.point_nodes if i in leaves]
    if not start_candidates:
        raise DegeneracyError("tree has no contact-point leaf to start the walk")
    start = min(start_candidates, key=lambda i: tree.nodes[i])

    # Euler tour of darts: next dart after (u, v) is the rotation successor
    # of (v, u) at v.
    darts: list[tuple[int, int]] = []
    cur = (start, rotations[start][0])
    while True:
        darts.append(cur)
        u, v = cur
        rot = rotations[v]
        pos = rot.index(u)
        cur = (v, rot[(pos + 1) % len(rot)])
        if cur == darts[0]:
            break

    def offset_vec(u: int, v: int) -> tuple[Fraction, Fraction]:
        d = (
            tree.nodes[v][0] - tree.nodes[u][0],
            tree.nodes[v][1] - tree.nodes[u][1],
        )
        per = (d[1] * side, -d[0] * side)
        s = delta / (abs(per[0]) + abs(per[1]))
        return (per[0] * s, per[1] * s)

    def offset_line(dart: tuple[int, int]) -> tuple[Point, Point]:
        u, v = dart
        r = offset_vec(u, v)
        a, b = tree.nodes[u], tree.nodes[v]
        return ((a[0] + r[0], a[1] + r[1]), (b[0] + r[0], b[1] + r[1]))

    def line_intersection(l1: tuple[Point, Point], l2: tuple[Point, Point]) -> Optional[Point]:
        (x1, y1), (x2, y2) = l1
        (x3, y3), (x4, y4) = l2
        den = (x1 - x2) * (y3 - y4) - (y1 - y2) * (x3 - x4)
        if den == 0:
            return None
        px = ((x1 * y2 - y1 * x2) * (x3 - x4) - (x1 - x2) * (x3 * y4 - y3 * x4)) / den
        py = ((x1 * y2 - y1 * x2) * (y3 - y4) - (y1 - y2) * (x3 * y4 - y3 * x4)) / den
        return (px, py)

    through_used: set[int] = set()
    walk: list[Point] = [tree.nodes[start]]
    through_used.add(start)
    for idx in range(len(darts)):
        d_in = darts[idx]
        v = d_in[1]
        if idx == len(darts) - 1:
            # Final corner back at the start leaf: end just off the start
            # point so the polysegment stays open.
            r = offset_vec(*d_in)
            walk.append((tree.nodes[v][0] + r[0], tree.nodes[v][1] + r[1]))
            break
        d_out = darts[idx + 1]
        if v in tree.point_nodes and v not in through_used:
            through_used.add(v)
            walk.append(tree.nodes[v])
            continue
        if len(adj[v]) == 1:
            # Leaf u-turn: route through the leaf point itself.
            walk.append(tree.nodes[v])
            continue
        l1, l2 = offset_line(d_in), offset_line(d_out)
        cross = line_intersection(l1, l2)
        if cross is None:
            # Collinear continuation: offsets agree, no corner point needed.
            continue
        walk.append(cross)

    cleaned: list[Point] = []
    for p in walk:
        if not cleaned or cleaned[-1] != p:
            cleaned.append(p)
    return cleaned


@dataclass(frozen=True)
class RhoConvexReport:
    rho: int
    max_degree: int
    lengths: dict[int, int]
    length_bound: int
    crossing_counts: dict[int, int]
    crossing_bound: int
    xi_value: int
    count_mode: str


def model_rho_convex(
    bodies: Sequence[SimplePolygon],
    contacts: ContactPointSet,
    rho: int,
    count_mode: str = "offset",
) -> tuple[Arrangement, dict[int, int], RhoConvexReport]:
    """Trace each rho-convex body by an offset boundary walk of a geodesic tree.

    Returns the arrangement, the body->polysegment index map, and a report
    with polysegment lengths (bounded by 2 rho Delta) and crossing counts.
    With count_mode="tree" the reported crossing counts are taken on the
    tree drawings and doubled; the emitted polysegments are unchanged.
    """
    if count_mode not in ("offset", "tree"):
        raise ValueError("count_mode must be 'offset' or 'tree'")
    delta = contacts.max_degree()
    trees: list[_Tree] = []
    for i, body in enumerate(bodies):
        trees.append(_grow_tree(body, contacts.points_of(i), rho))

    polys: list[Polysegment] = []
    for i, (body, tree) in enumerate(zip(bodies, trees)):
        if len(tree.nodes) == 1:
            polys.append(Polysegment(points=(tree.nodes[0],)))
            continue
        gap = sqrt_lower_bound(_tree_clearance2(body, tree))
        poly = None
        last_error: Optional[Exception] = None
        for attempt in range(6):
            offset = gap / (4 * 2**attempt)
            if offset <= 0:
                break
            for side in (1, -1):
                try:
                    pts = _offset_walk(tree, offset, side)
                    cand = Polysegment(points=tuple(pts))
                    for a, b in cand.segments():
                        if not body.contains_segment(a, b):
                            raise DegeneracyError("offset walk leaves the body")
                    for p in contacts.points_of(i):
                        if not cand.contains_point(p):
                            raise DegeneracyError("offset walk misses a contact point")
                    poly = cand
                    break
                except DegeneracyError as exc:
                    last_error = exc
            if poly is not None:
                break
        if poly is None:
            raise DegeneracyError(f"offset walk failed for body {i}: {last_error}")
        polys.append(poly)

    arr = build_arrangement(polys)
    _check_touch_equivalence(arr, contacts)

    lengths = {i: p.length for i, p in enumerate(polys)}
    length_bound = 2 * rho * max(delta, 1)
    for i, L in lengths.items():
        if L > 2 * rho * max(delta, 1):
            raise DegeneracyError(
                f"polysegment {i} has {L} segments, above the 2*rho*Delta bound"
            )

    if count_mode == "offset":
        counts = {i: len({c.point for c in arr.crossings_on(i)}) for i in range(len(polys))}
    else:
        counts = _tree_crossing_counts(trees)
    report = RhoConvexReport(
        rho=rho,
        max_degree=delta,
        lengths=lengths,
        length_bound=length_bound,
        crossing_counts=counts,
        crossing_bound=(2 * rho * max(delta, 1)) ** 2 * max(delta, 1),
        xi_value=arrangement_xi(arr),
        count_mode=count_mode,
    )
    return arr, {i: i for i in range(len(bodies))}, report


def _tree_crossing_counts(trees: list[_Tree]) -> dict[int, int]:
    """Pairwise tree-drawing intersection counts, doubled per the walk."""
    counts = {i: 0 for i in range(len(trees))}
    for i in range(len(trees)):
        for j in range(i + 1, len(trees)):
            pts: set[Point] = set()
            for ia, ib in trees[i].segments:
                for ja, jb in trees[j].segments:
                    inter = segment_intersection(
                        trees[i].nodes[ia],
                        trees[i].nodes[ib],
                        trees[j].nodes[ja],
                        trees[j].nodes[jb],
                    )
                    if inter == OVERLAP:
                        raise DegeneracyError("tree drawings overlap")
                    pts.update(inter)
            counts[i] += 2 * len(pts)
            counts[j] += 2 * len(pts)
    return counts
