"""Transfer of a grid distance-minor through a bounded contraction.

Given a c-contraction of G onto H and a distance-dominating model of the
k-grid in G, a k'-grid minor model of H is constructed explicitly with
k' = floor((k-1) / (2(c+1))) + 1 (for odd c a sharper divisor 2c is
available behind a flag).  The construction threads paths between chosen
branch representatives, picks inside each path's central band a connector
edge that the contraction keeps, and composes the resulting grid model with
the contraction certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .grids import make_grid
from .models import (
    CContractionModel,
    CertificateError,
    MapValue,
    MinorModel,
    STAR,
    compose_models,
    threaded_path,
    validate_distance_minor,
    validate_minor_model,
)
from .multigraph import GraphError


def transferred_side(k: int, c: int, odd_sharpening: bool = False) -> int:
    """Grid side survivable through a c-contraction: floor((k-1)/step) + 1."""
    step = _step(c, odd_sharpening)
    return (k - 1) // step + 1


def _step(c: int, odd_sharpening: bool) -> int:
    if odd_sharpening and c % 2 == 1:
        return 2 * c
    return 2 * (c + 1)


def central_band_cells(
    k: int, c: int, odd_sharpening: bool = False
) -> dict[tuple[str, int, int], frozenset[tuple[int, int]]]:
    """The central band of grid cells between consecutive anchor cells.

    Key ("hor", i, j) is the band on row alpha(j) between anchor columns i
    and i+1 (similarly "ver"); any two distinct bands are at grid distance
    at least c+1, which is what makes the chosen connector edges safe.
    """
    step = _step(c, odd_sharpening)
    delta = (c + 2) // 2
    kp = (k - 1) // step + 1

    def alpha(i: int) -> int:
        return (i - 1) * step + 1

    out: dict[tuple[str, int, int], frozenset[tuple[int, int]]] = {}
    for y in range(1, kp + 1):
        for x in range(1, kp):
            cells = frozenset(
                (i, alpha(y)) for i in range(alpha(x) + delta, alpha(x + 1) - delta + 1)
            )
            out[("hor", x, y)] = cells
    for x in range(1, kp + 1):
        for y in range(1, kp):
            cells = frozenset(
                (alpha(x), j) for j in range(alpha(y) + delta, alpha(y + 1) - delta + 1)
            )
            out[("ver", x, y)] = cells
    return out


def grid_transfer(
    sigma: CContractionModel,
    phi: MinorModel,
    odd_sharpening: bool = False,
) -> MinorModel:
    """Build a grid minor model of the contraction target.

    `sigma` certifies the target as a c-contraction of the common source;
    `phi` is a valid distance-dominating model of a k-grid in that source.
    Returns a validated minor model of the k'-grid in the target.
    """
    if sigma.source.graph != phi.source.graph:
        raise GraphError("certificates must share the same looped source graph")
    g = sigma.source.base
    if not g.is_connected():
        raise GraphError("transfer requires a connected source graph")
    viol = validate_distance_minor(phi)
    if viol is not None:
        raise GraphError(f"grid model is not a valid distance minor: {viol}")

    n = phi.target.num_vertices()
    k = math.isqrt(n)
    grid = make_grid(k)
    if phi.target != grid.graph:
        raise GraphError("grid model target must be a canonical grid graph")

    c = sigma.c
    step = _step(c, odd_sharpening)
    delta = (c + 2) // 2
    kp = (k - 1) // step + 1
    target = make_grid(kp)

    def alpha(i: int) -> int:
        return (i - 1) * step + 1

    if alpha(kp) > k:  # pragma: no cover - impossible by construction of kp
        raise GraphError("internal: anchor row outside the grid")

    # Branch covers, solid sets, and realized edges of phi, by grid cell.
    cover: dict[int, set[int]] = {v: set() for v in grid.graph.vertices}
    solid: dict[int, list[int]] = {v: [] for v in grid.graph.vertices}
    realized: dict[int, int] = {}
    for e, val in phi.map.items():
        if val == STAR:
            continue
        kind, ident = val
        if kind == "v":
            u, w = phi.source.graph.endpoints(e)
            cover[ident].update((u, w))
            # Keep base edges only; the threading below walks the base graph.
            if g.has_edge_id(e):
                solid[ident].append(e)
        else:
            realized[ident] = e

    def rep(i: int, j: int) -> int:
        return min(cover[grid.vertex(i, j)])

    if kp == 1:
        # Single target cell: the anchor branch alone represents it.
        tau_map: dict[int, MapValue] = {e: STAR for e in phi.source.edge_ids()}
        anchor = grid.vertex(1, 1)
        for e in solid[anchor]:
            tau_map[e] = ("v", 0)
        tau = MinorModel(source=phi.source, target=target.graph, map=tau_map)
        v = validate_minor_model(tau)
        if v is not None:
            raise CertificateError(f"internal: trivial transfer model invalid: {v}")
        return compose_models(sigma.base, tau)

    sigma_keeps = {e for e, val in sigma.map.items() if isinstance(val, tuple) and val[0] == "e"}

    @dataclass
    class Threaded:
        prefix_vertices: list[int]
        prefix_edges: list[int]
        suffix_vertices: list[int]
        suffix_edges: list[int]
        connector: int

    def thread(cells: list[int], u_cells: set[int], s: int, t: int) -> Threaded:
        """Thread across the given grid cells and split at a kept connector."""
        parts = [sorted(cover[cell]) for cell in cells]
        edge_sets = [solid[cell] for cell in cells]
        crossings = []
        for c1, c2 in zip(cells, cells[1:]):
            cands = grid.graph.edges_between(c1, c2)
            if not cands:
                raise GraphError("internal: consecutive cells are not grid-adjacent")
            crossings.append(realized[cands[0]])
        a_idx = delta + 1
        b_idx = len(cells) - delta
        tp = threaded_path(
            g,
            parts,
            s,
            t,
            a_idx,
            b_idx,
            part_edge_sets=edge_sets,
            cross_edge_choices=crossings,
        )
        # Allowed images inside the central band.
        u_edge_ids = {
            te
            for te, u, w in grid.graph.edges()
            if (u in u_cells or w in u_cells)
        }
        connector = None
        for e in tp.part_edge_ids:
            if e not in sigma_keeps:
                continue
            val = phi.map[e]
            ok = (
                isinstance(val, tuple)
                and (
                    (val[0] == "v" and val[1] in u_cells)
                    or (val[0] == "e" and val[1] in u_edge_ids)
                )
            )
            if ok:
                connector = e
                break
        if connector is None:
            raise CertificateError(
                "no kept connector edge inside the central band; the certificates are inconsistent"
            )
        pos = tp.edge_ids.index(connector)
        return Threaded(
            prefix_vertices=tp.path[: pos + 1],
            prefix_edges=tp.edge_ids[:pos],
            suffix_vertices=tp.path[pos + 1 :],
            suffix_edges=tp.edge_ids[pos + 1 :],
            connector=connector,
        )

    piece_edges: dict[tuple[int, int], set[int]] = {
        (x, y): set() for x in range(1, kp + 1) for y in range(1, kp + 1)
    }
    piece_vertices: dict[tuple[int, int], set[int]] = {
        (x, y): set() for x in range(1, kp + 1) for y in range(1, kp + 1)
    }
    connectors: dict[int, int] = {}  # target edge id -> source connector edge

    for y in range(1, kp + 1):
        for x in range(1, kp):
            cells = [grid.vertex(i, alpha(y)) for i in range(alpha(x), alpha(x + 1) + 1)]
            u_cells = {
                grid.vertex(i, alpha(y))
                for i in range(alpha(x) + delta, alpha(x + 1) - delta + 1)
            }
            th = thread(cells, u_cells, rep(alpha(x), alpha(y)), rep(alpha(x + 1), alpha(y)))
            piece_vertices[(x, y)].update(th.prefix_vertices)
            piece_edges[(x, y)].update(th.prefix_edges)
            piece_vertices[(x + 1, y)].update(th.suffix_vertices)
            piece_edges[(x + 1, y)].update(th.suffix_edges)
            te = target.graph.edges_between(target.vertex(x, y), target.vertex(x + 1, y))[0]
            connectors[te] = th.connector

    for x in range(1, kp + 1):
        for y in range(1, kp):
            cells = [grid.vertex(alpha(x), j) for j in range(alpha(y), alpha(y + 1) + 1)]
            u_cells = {
                grid.vertex(alpha(x), j)
                for j in range(alpha(y) + delta, alpha(y + 1) - delta + 1)
            }
            th = thread(cells, u_cells, rep(alpha(x), alpha(y)), rep(alpha(x), alpha(y + 1)))
            piece_vertices[(x, y)].update(th.prefix_vertices)
            piece_edges[(x, y)].update(th.prefix_edges)
            piece_vertices[(x, y + 1)].update(th.suffix_vertices)
            piece_edges[(x, y + 1)].update(th.suffix_edges)
            te = target.graph.edges_between(target.vertex(x, y), target.vertex(x, y + 1))[0]
            connectors[te] = th.connector

    tau_map = {e: STAR for e in phi.source.edge_ids()}
    for (x, y), eids in piece_edges.items():
        tv = target.vertex(x, y)
        for e in eids:
            prev = tau_map[e]
            if prev != STAR and prev != ("v", tv):
                raise CertificateError(f"source edge {e} claimed by two target cells")
            tau_map[e] = ("v", tv)
    for (x, y), vids in piece_vertices.items():
        tv = target.vertex(x, y)
        for v in vids:
            le = phi.source.loop_of[v]
            prev = tau_map[le]
            if prev != STAR and prev != ("v", tv):
                raise CertificateError(f"source vertex {v} claimed by two target cells")
            tau_map[le] = ("v", tv)
    for te, e in connectors.items():
        if tau_map[e] != STAR:
            raise CertificateError(f"connector edge {e} also used inside a cell piece")
        tau_map[e] = ("e", te)

    tau = MinorModel(source=phi.source, target=target.graph, map=tau_map)
    v = validate_minor_model(tau)
    if v is not None:
        raise CertificateError(f"internal: transfer model invalid before composition: {v}")
    return compose_models(sigma.base, tau)
