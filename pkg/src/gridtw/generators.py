"""Seeded instance generators for every family the experiments exercise.

All generators are deterministic functions of their arguments (including the
seed) and validate their outputs before returning them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .geometry import (
    Arrangement,
    DegeneracyError,
    Polysegment,
    build_arrangement,
    pt,
)
from .grids import make_grid
from .models import (
    CContractionModel,
    MapValue,
    MinorModel,
    STAR,
    contraction_model_from_classes,
    validate_distance_minor,
)
from .multigraph import GraphError, Multigraph, with_loops
from .polygons import SimplePolygon


# -- random graphs ---------------------------------------------------------------


def random_graph(rng: random.Random, n: int, p: float) -> Multigraph:
    edges = {}
    eid = 0
    for u in range(n):
        for w in range(u + 1, n):
            if rng.random() < p:
                edges[eid] = (u, w)
                eid += 1
    return Multigraph(range(n), edges)


def random_connected_graph(rng: random.Random, n: int, extra_p: float = 0.3) -> Multigraph:
    edges = {}
    eid = 0
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        u, w = order[i], order[rng.randrange(i)]
        edges[eid] = (min(u, w), max(u, w))
        eid += 1
    present = {tuple(sorted(e)) for e in edges.values()}
    for u in range(n):
        for w in range(u + 1, n):
            if (u, w) not in present and rng.random() < extra_p:
                edges[eid] = (u, w)
                present.add((u, w))
                eid += 1
    return Multigraph(range(n), edges)


def random_c_contraction_instance(
    rng: random.Random, n: int, c: int
) -> tuple[Multigraph, CContractionModel, Multigraph]:
    """Random connected G with a random c-contraction certificate onto H."""
    g = random_connected_graph(rng, n)
    labels = {v: v for v in g.vertices}

    def groups() -> dict[int, set[int]]:
        out: dict[int, set[int]] = {}
        for v, l in labels.items():
            out.setdefault(l, set()).add(v)
        return out

    def internal(cls: set[int]) -> int:
        return sum(1 for _, u, w in g.edges() if u in cls and w in cls)

    eids = g.edge_ids()
    for _ in range(rng.randrange(0, 2 * n)):
        e = rng.choice(eids)
        u, w = g.endpoints(e)
        if labels[u] == labels[w]:
            continue
        gr = groups()
        if internal(gr[labels[u]] | gr[labels[w]]) > c:
            continue
        lu, lw = labels[u], labels[w]
        for v in list(labels):
            if labels[v] == lw:
                labels[v] = lu
    cm, h, _ = contraction_model_from_classes(g, list(groups().values()), c=c)
    return g, cm, h


# -- subdivided grid transfer instances --------------------------------------------


@dataclass(frozen=True)
class TransferInstance:
    source: Multigraph  # G, a subdivided grid
    sigma: CContractionModel  # G -> H with parameter c
    target: Multigraph  # H
    grid_model: MinorModel  # distance minor model of the k-grid in G
    k: int
    c: int


def subdivided_grid_instance(k: int, sub_h: int, sub_v: int, declared_c: int) -> TransferInstance:
    """A k-grid with subdivided edges, contracted back onto the k-grid.

    Horizontal edges get `sub_h` interior vertices, vertical ones `sub_v`.
    Each chain is split between its endpoints' branches (first half to the
    smaller endpoint); the same partition serves as the distance-minor model
    of the grid in the subdivided graph and as the contraction certificate.
    """
    grid = make_grid(k)
    base = grid.graph
    edges: dict[int, tuple[int, int]] = {}
    nxt_v = base.max_vertex_id() + 1
    nxt_e = 0
    branch: dict[int, set[int]] = {v: {v} for v in base.vertices}
    realized: dict[int, int] = {}

    for e, u, w in base.edges():
        (i1, j1), (i2, j2) = grid.coord(u), grid.coord(w)
        sub = sub_h if j1 == j2 else sub_v
        chain = list(range(nxt_v, nxt_v + sub))
        nxt_v += sub
        seq = [u] + chain + [w]
        ids = []
        for a, b in zip(seq, seq[1:]):
            edges[nxt_e] = (a, b)
            ids.append(nxt_e)
            nxt_e += 1
        h = sub // 2
        branch[u].update(chain[:h])
        branch[w].update(chain[h:])
        realized[e] = ids[h]

    g = Multigraph(range(nxt_v), edges)
    gl = with_loops(g)

    phi_map: dict[int, MapValue] = {eid: STAR for eid in gl.edge_ids()}
    for cell, members in branch.items():
        for eid, a, b in g.edges():
            if a in members and b in members:
                phi_map[eid] = ("v", cell)
        for v in members:
            phi_map[gl.loop_of[v]] = ("v", cell)
    for grid_edge, realizer in realized.items():
        phi_map[realizer] = ("e", grid_edge)
    phi = MinorModel(source=gl, target=base, map=phi_map)
    viol = validate_distance_minor(phi)
    if viol is not None:
        raise GraphError(f"subdivided grid model failed validation: {viol}")

    classes = [sorted(branch[v]) for v in base.sorted_vertices()]
    cm, h_graph, _ = contraction_model_from_classes(g, classes, c=declared_c)
    if h_graph != base:
        raise GraphError("contracted subdivided grid should reproduce the grid")
    return TransferInstance(
        source=g, sigma=cm, target=h_graph, grid_model=phi, k=k, c=declared_c
    )


# -- geometric families --------------------------------------------------------------


def segments_arrangement(seed: int, n: int, span: int = 60, max_tries: int = 200) -> Arrangement:
    """Random straight segments on an integer grid; degenerate draws retried."""
    rng = random.Random(seed)
    for _ in range(max_tries):
        segs = []
        for _ in range(n):
            while True:
                a = (rng.randint(0, span), rng.randint(0, span))
                b = (rng.randint(0, span), rng.randint(0, span))
                if a != b:
                    break
            segs.append(Polysegment(points=(pt(*a), pt(*b))))
        try:
            return build_arrangement(segs)
        except DegeneracyError:
            continue
    raise DegeneracyError(f"no valid segment arrangement after {max_tries} tries")


def polysegments_arrangement(seed: int, n: int, span: int = 60, max_tries: int = 200) -> Arrangement:
    """Random short zigzag polysegments (1 to 3 segments each)."""
    rng = random.Random(seed)
    for _ in range(max_tries):
        polys = []
        ok = True
        for _ in range(n):
            k = rng.randrange(2, 5)
            pts = []
            x = rng.randint(0, span)
            y = rng.randint(0, span)
            pts.append(pt(x, y))
            for _ in range(k - 1):
                x += rng.randint(-12, 12)
                y += rng.randint(-12, 12)
                pts.append(pt(x, y))
            try:
                polys.append(Polysegment(points=tuple(pts)))
            except DegeneracyError:
                ok = False
                break
        if not ok:
            continue
        try:
            return build_arrangement(polys)
        except DegeneracyError:
            continue
    raise DegeneracyError(f"no valid polysegment arrangement after {max_tries} tries")


def _square(x0: Fraction, y0: Fraction, side: Fraction) -> SimplePolygon:
    return SimplePolygon.from_ring(
        [
            (x0, y0),
            (x0 + side, y0),
            (x0 + side, y0 + side),
            (x0, y0 + side),
        ]
    )


def _l_shape(x0: Fraction, y0: Fraction, arm: Fraction, thick: Fraction) -> SimplePolygon:
    return SimplePolygon.from_ring(
        [
            (x0, y0),
            (x0 + arm, y0),
            (x0 + arm, y0 + thick),
            (x0 + thick, y0 + thick),
            (x0 + thick, y0 + arm),
            (x0, y0 + arm),
        ]
    )


def _no_tangent_pairs(bodies: list[SimplePolygon]) -> bool:
    from .bodymodels import classify_pair

    for i in range(len(bodies)):
        for j in range(i + 1, len(bodies)):
            if classify_pair(bodies[i], bodies[j]) == "tangent":
                return False
    return True


def convex_bodies(seed: int, n: int, alpha_target: float = 2.0, max_tries: int = 50) -> list[SimplePolygon]:
    """Overlapping axis-aligned squares on a jittered grid row layout.

    Sizes are kept within the fatness target: side ratio at most
    alpha_target / sqrt(2) (a square's own enclosing/inscribed ratio).
    Layouts with exactly tangent pairs are re-drawn.
    """
    for attempt in range(max_tries):
        rng = random.Random(seed + 7919 * attempt)
        cols = max(2, int(n**0.5) + 1)
        bodies = []
        base = Fraction(10)
        max_ratio = max(1.0, alpha_target / 2**0.5)
        for idx in range(n):
            r, c = divmod(idx, cols)
            side = base * Fraction(rng.randint(100, int(100 * max_ratio)), 100)
            # Step keeps neighbors overlapping with positive-area intersections.
            x0 = Fraction(c) * base * Fraction(3, 4) + Fraction(rng.randint(-64, 64), 64)
            y0 = Fraction(r) * base * Fraction(3, 4) + Fraction(rng.randint(-64, 64), 64)
            bodies.append(_square(x0, y0, side))
        if _no_tangent_pairs(bodies):
            return bodies
    raise DegeneracyError(f"no tangency-free square layout after {max_tries} tries")


def l_shaped_bodies(seed: int, n: int, max_tries: int = 50) -> list[SimplePolygon]:
    """A chain of L-shaped (2-convex) bodies with overlapping arms."""
    for attempt in range(max_tries):
        rng = random.Random(seed + 7919 * attempt)
        bodies = []
        arm = Fraction(10)
        thick = Fraction(3)
        step = Fraction(8)
        for idx in range(n):
            x0 = Fraction(idx) * step + Fraction(rng.randint(-64, 64), 64)
            y0 = Fraction(rng.randint(-64, 64), 64)
            bodies.append(_l_shape(x0, y0, arm, thick))
        if _no_tangent_pairs(bodies):
            return bodies
    raise DegeneracyError(f"no tangency-free L-shape layout after {max_tries} tries")


# -- experiment configuration ----------------------------------------------------------


FAMILIES = ("segments", "polysegments", "rho-convex", "fat-convex", "triangulated-grid")


@dataclass(frozen=True)
class ExperimentConfig:
    """Deterministic description of an experiment run."""

    seed: int
    family: str
    n: int = 8
    trials: int = 10
    rho: int = 2
    alpha: float = 2.0
    h: int = 3
    k: int = 2
    out_dir: Optional[str] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {FAMILIES}")
        if self.trials < 1 or self.n < 1:
            raise ValueError("trials and n must be positive")

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "family": self.family,
            "n": self.n,
            "trials": self.trials,
            "rho": self.rho,
            "alpha": self.alpha,
            "h": self.h,
            "k": self.k,
        }
