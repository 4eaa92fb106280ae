"""JSON schemas for graphs, certificates, decompositions, and geometry.

All writers are deterministic (sorted keys, fixed layout) so that identical
inputs produce byte-identical files.  Loaders validate: a malformed file or
an invalid certificate raises rather than round-tripping silently.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .bodymodels import ContactPointSet
from .geometry import Arrangement, Point, Polysegment, build_arrangement
from .grids import PartialTriangulation, make_grid
from .models import (
    CContractionModel,
    ContractionModel,
    MapValue,
    MinorModel,
    STAR,
)
from .multigraph import GraphError, Multigraph, with_loops
from .planarize import PlanarizationBundle, validate_bundle
from .polygons import SimplePolygon
from .treewidth import TreeDecomposition


def dump_json(obj: Any, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_json(path: str) -> Any:
    with open(path) as fh:
        return json.load(fh)


# -- graphs ------------------------------------------------------------------------


def graph_to_json(g: Multigraph) -> dict:
    return {
        "vertices": g.sorted_vertices(),
        "edges": [[e, u, w] for e, u, w in g.edges()],
    }


def graph_from_json(data: dict) -> Multigraph:
    try:
        return Multigraph(data["vertices"], [(e, u, w) for e, u, w in data["edges"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from exc


# -- models ------------------------------------------------------------------------


def _map_value_to_json(val: MapValue):
    if val == STAR:
        return "star"
    kind, ident = val
    return {kind: ident}


def _map_value_from_json(raw) -> MapValue:
    if raw == "star":
        return STAR
    if isinstance(raw, dict) and len(raw) == 1:
        kind, ident = next(iter(raw.items()))
        if kind in ("v", "e"):
            return (kind, int(ident))
    raise GraphError(f"malformed model map value: {raw!r}")


def model_to_json(m: MinorModel | CContractionModel) -> dict:
    if isinstance(m, CContractionModel):
        kind = "c-contraction"
        base: MinorModel = m.base
        c = m.c
    elif isinstance(m, ContractionModel):
        kind, base, c = "contraction", m, None
    else:
        kind, base, c = "minor", m, None
    out = {
        "kind": kind,
        "source": graph_to_json(base.source.base),
        "target": graph_to_json(base.target),
        "map": {str(e): _map_value_to_json(val) for e, val in sorted(base.map.items())},
    }
    if c is not None:
        out["c"] = c
    return out


def model_from_json(data: dict) -> MinorModel | CContractionModel:
    """Rebuild a model; loop edge ids follow the deterministic allocation."""
    source = graph_from_json(data["source"])
    target = graph_from_json(data["target"])
    gl = with_loops(source)
    mapping = {int(e): _map_value_from_json(v) for e, v in data["map"].items()}
    kind = data.get("kind", "minor")
    if kind == "minor":
        return MinorModel(source=gl, target=target, map=mapping)
    base = ContractionModel(source=gl, target=target, map=mapping)
    if kind == "contraction":
        return base
    if kind == "c-contraction":
        return CContractionModel(base=base, c=int(data["c"]))
    raise GraphError(f"unknown model kind {kind!r}")


# -- decompositions -----------------------------------------------------------------


def decomposition_to_json(d: TreeDecomposition) -> dict:
    return {
        "nodes": d.tree.sorted_vertices(),
        "tree_edges": [[u, w] for _, u, w in d.tree.edges()],
        "bags": {str(n): sorted(bag) for n, bag in sorted(d.bags.items())},
    }


def decomposition_from_json(data: dict) -> TreeDecomposition:
    nodes = data["nodes"]
    tree = Multigraph(nodes, [(i, u, w) for i, (u, w) in enumerate(data["tree_edges"])])
    bags = {int(n): frozenset(vs) for n, vs in data["bags"].items()}
    return TreeDecomposition(tree=tree, bags=bags)


# -- geometry -----------------------------------------------------------------------


def point_to_json(p: Point) -> list:
    return [[p[0].numerator, p[0].denominator], [p[1].numerator, p[1].denominator]]


def point_from_json(raw) -> Point:
    (xn, xd), (yn, yd) = raw
    return (Fraction(xn, xd), Fraction(yn, yd))


def polysegment_to_json(ps: Polysegment) -> list:
    return [point_to_json(p) for p in ps.points]


def polysegment_from_json(raw) -> Polysegment:
    return Polysegment(points=tuple(point_from_json(p) for p in raw))


def arrangement_to_json(arr: Arrangement) -> dict:
    return {
        "polysegments": [polysegment_to_json(ps) for ps in arr.polysegments],
        "crossings": [
            {"point": point_to_json(c.point), "pair": list(c.pair)} for c in arr.crossings
        ],
    }


def arrangement_from_json(data: dict) -> Arrangement:
    """Rebuild and re-validate; stored crossings are recomputed, not trusted."""
    arr = build_arrangement([polysegment_from_json(raw) for raw in data["polysegments"]])
    if "crossings" in data:
        stored = {(point_from_json(c["point"]), tuple(c["pair"])) for c in data["crossings"]}
        fresh = {(c.point, c.pair) for c in arr.crossings}
        if stored != fresh:
            raise GraphError("stored crossings disagree with recomputation")
    return arr


def bodies_to_json(bodies: list[SimplePolygon]) -> dict:
    return {"bodies": [[point_to_json(p) for p in b.ring] for b in bodies]}


def bodies_from_json(data: dict) -> list[SimplePolygon]:
    return [
        SimplePolygon.from_ring([point_from_json(p) for p in ring])
        for ring in data["bodies"]
    ]


def contacts_to_json(contacts: ContactPointSet) -> dict:
    return {
        "anchors": {str(i): point_to_json(p) for i, p in sorted(contacts.anchors.items())},
        "pairs": [
            {"pair": [i, j], "point": point_to_json(p)}
            for (i, j), p in sorted(contacts.pair_points.items())
        ],
    }


def contacts_from_json(data: dict) -> ContactPointSet:
    return ContactPointSet(
        anchors={int(i): point_from_json(p) for i, p in data["anchors"].items()},
        pair_points={
            (int(e["pair"][0]), int(e["pair"][1])): point_from_json(e["point"])
            for e in data["pairs"]
        },
    )


# -- triangulations -----------------------------------------------------------------


def triangulation_to_json(p: PartialTriangulation) -> dict:
    # Row-major face order matches the generator's edge-id allocation.
    ordered = sorted(p.diagonals.items(), key=lambda kv: (kv[0][1], kv[0][0]))
    return {
        "k": p.base.k,
        "diagonals": [[i, j, o] for (i, j), o in ordered],
    }


def triangulation_from_json(data: dict) -> PartialTriangulation:
    k = int(data["k"])
    grid = make_grid(k)
    edges = grid.graph.edge_dict
    nxt = max(edges, default=-1) + 1
    diagonals: dict[tuple[int, int], str] = {}
    for i, j, orientation in data["diagonals"]:
        if orientation not in ("main", "anti"):
            raise GraphError(f"bad diagonal orientation {orientation!r}")
        if (i, j) in diagonals:
            raise GraphError(f"face ({i},{j}) has two diagonals")
        diagonals[(i, j)] = orientation
        if orientation == "main":
            edges[nxt] = (grid.vertex(i, j), grid.vertex(i + 1, j + 1))
        else:
            edges[nxt] = (grid.vertex(i + 1, j), grid.vertex(i, j + 1))
        nxt += 1
    return PartialTriangulation(
        base=grid, diagonals=diagonals, graph=Multigraph(grid.graph.vertices, edges)
    )


# -- planarization bundles ------------------------------------------------------------


def bundle_to_json(bundle: PlanarizationBundle) -> dict:
    return {
        "arrangement": arrangement_to_json(bundle.arrangement),
        "G": graph_to_json(bundle.graph),
        "M": sorted(bundle.gadget_edges),
        "H": graph_to_json(bundle.planar_graph),
        "gb": graph_to_json(bundle.intersection),
        "model_h": model_to_json(bundle.model_h),
        "model_gb": model_to_json(bundle.model_gb),
        "xi": bundle.xi,
        "pieces": {str(i): n for i, n in sorted(bundle.pieces_per_polysegment.items())},
    }


def bundle_from_json(data: dict) -> PlanarizationBundle:
    bundle = PlanarizationBundle(
        arrangement=arrangement_from_json(data["arrangement"]),
        graph=graph_from_json(data["G"]),
        gadget_edges=frozenset(int(e) for e in data["M"]),
        planar_graph=graph_from_json(data["H"]),
        intersection=graph_from_json(data["gb"]),
        model_h=model_from_json(data["model_h"]),
        model_gb=model_from_json(data["model_gb"]),
        xi=int(data["xi"]),
        pieces_per_polysegment={int(i): int(n) for i, n in data["pieces"].items()},
    )
    validate_bundle(bundle)
    return bundle
