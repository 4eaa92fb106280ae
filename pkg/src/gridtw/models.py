"""Edge-mapping certificates for minors, contractions and their transfers.

A minor model maps every edge of the looped source graph to a target vertex,
a target edge, or the discard symbol ``STAR``.  Validity is four local
conditions (solidity of vertex preimages, disjointness, edge attachment,
uniqueness of edge preimages); a distance minor additionally dominates
distances.  Contraction models drop the uniqueness condition and forbid
STAR; a c-contraction bounds the edge count inside every vertex preimage.

Everything here is validated, never assumed: validators return a structured
report naming the first violated condition and the offending elements.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .multigraph import (
    GraphError,
    INF,
    LoopedGraph,
    Multigraph,
    dist,
    is_solid,
    with_loops,
)

STAR = "star"

# Map values: ("v", vertex id) | ("e", edge id) | STAR
MapValue = object


class CertificateError(GraphError):
    """A certificate operation failed in a way that signals a bug in its inputs."""


@dataclass(frozen=True)
class Violation:
    """First failed validity condition, with minimal counterexample data."""

    condition: int | str
    elements: tuple
    message: str

    def __str__(self) -> str:
        return f"condition {self.condition}: {self.message} {self.elements}"


@dataclass(frozen=True)
class MinorModel:
    """Certificate that target is a minor of source.base."""

    source: LoopedGraph
    target: Multigraph
    map: Mapping[int, MapValue]

    def image(self, eid: int) -> MapValue:
        return self.map[eid]

    def preimage_of_vertex(self, v: int) -> list[int]:
        return [e for e, val in self.map.items() if val == ("v", v)]

    def preimage_of_edge(self, te: int) -> list[int]:
        return [e for e, val in self.map.items() if val == ("e", te)]

    def star_edges(self) -> list[int]:
        return [e for e, val in self.map.items() if val == STAR]


@dataclass(frozen=True)
class ContractionModel(MinorModel):
    """Minor model variant with empty STAR preimage and no uniqueness demand."""


@dataclass(frozen=True)
class CContractionModel:
    """Contraction model whose vertex preimages each induce at most c edges."""

    base: ContractionModel
    c: int

    @property
    def source(self) -> LoopedGraph:
        return self.base.source

    @property
    def target(self) -> Multigraph:
        return self.base.target

    @property
    def map(self) -> Mapping[int, MapValue]:
        return self.base.map


def _check_map_shape(m: MinorModel, allow_star: bool) -> None:
    gl = m.source
    h = m.target
    ids = set(gl.edge_ids())
    if set(m.map) != ids:
        missing = ids - set(m.map)
        extra = set(m.map) - ids
        raise GraphError(f"map is not total on the looped edge set (missing {sorted(missing)[:5]}, extra {sorted(extra)[:5]})")
    for e, val in m.map.items():
        if val == STAR:
            if not allow_star:
                raise GraphError(f"STAR not allowed in a contraction model (edge {e})")
            continue
        if not (isinstance(val, tuple) and len(val) == 2 and val[0] in ("v", "e")):
            raise GraphError(f"bad map value {val!r} for edge {e}")
        kind, ident = val
        if kind == "v" and not h.has_vertex(ident):
            raise GraphError(f"edge {e} maps to unknown target vertex {ident}")
        if kind == "e" and not h.has_edge_id(ident):
            raise GraphError(f"edge {e} maps to unknown target edge {ident}")


def _covered_vertices(gl: LoopedGraph, eids: Iterable[int]) -> set[int]:
    cov: set[int] = set()
    for e in eids:
        u, w = gl.graph.endpoints(e)
        cov.update((u, w))
    return cov


def _vertex_preimages(m: MinorModel) -> dict[int, list[int]]:
    pre: dict[int, list[int]] = {v: [] for v in m.target.vertices}
    for e, val in m.map.items():
        if isinstance(val, tuple) and val[0] == "v":
            pre[val[1]].append(e)
    return pre


def _edge_preimages(m: MinorModel) -> dict[int, list[int]]:
    pre: dict[int, list[int]] = {te: [] for te in m.target.edge_dict}
    for e, val in m.map.items():
        if isinstance(val, tuple) and val[0] == "e":
            pre[val[1]].append(e)
    return pre


def validate_minor_model(m: MinorModel) -> Optional[Violation]:
    """Check the four minor-model conditions; None means valid."""
    _check_map_shape(m, allow_star=True)
    v = _validate_conditions_1_to_3(m)
    if v is not None:
        return v
    for te, pre in _edge_preimages(m).items():
        if len(pre) != 1:
            return Violation(4, (te, tuple(sorted(pre))), f"target edge {te} has {len(pre)} preimages, needs exactly 1")
    return None


def validate_contraction_model(m: MinorModel) -> Optional[Violation]:
    """Contraction validity: conditions 1-3, empty STAR preimage, edges covered."""
    _check_map_shape(m, allow_star=True)
    stars = m.star_edges()
    if stars:
        return Violation("star", (tuple(sorted(stars)[:5]),), "contraction model must not discard edges")
    v = _validate_conditions_1_to_3(m)
    if v is not None:
        return v
    for te, pre in _edge_preimages(m).items():
        if not pre:
            return Violation("edge-cover", (te,), f"target edge {te} has no preimage")
    return None


def validate_c_contraction(cm: CContractionModel) -> Optional[Violation]:
    v = validate_contraction_model(cm.base)
    if v is not None:
        return v
    if cm.c < 0:
        return Violation("c", (cm.c,), "parameter must be non-negative")
    gl = cm.source
    for tv, pre in _vertex_preimages(cm.base).items():
        cov = _covered_vertices(gl, pre)
        internal = [
            e for e, u, w in gl.base.edges() if u in cov and w in cov
        ]
        # The induced subgraph of the base graph over the preimage's vertices.
        if len(internal) > cm.c:
            return Violation("c", (tv, len(internal)), f"preimage of {tv} induces {len(internal)} edges > c = {cm.c}")
    return None


def _validate_conditions_1_to_3(m: MinorModel) -> Optional[Violation]:
    gl = m.source
    h = m.target
    vpre = _vertex_preimages(m)

    # Condition 1: every vertex preimage is a non-empty solid set.
    for tv in h.sorted_vertices():
        pre = vpre[tv]
        if not pre:
            return Violation(1, (tv,), f"preimage of vertex {tv} is empty")
        if not is_solid(gl, pre):
            return Violation(1, (tv, tuple(sorted(pre))), f"preimage of vertex {tv} is not solid")

    # Condition 2: preimages of distinct vertices share no endpoints.  A
    # single pass over covered vertices finds any collision.
    owner: dict[int, int] = {}
    for tv in h.sorted_vertices():
        for x in _covered_vertices(gl, vpre[tv]):
            if x in owner and owner[x] != tv:
                return Violation(2, (owner[x], tv, x), f"vertex {x} is an endpoint in the preimages of both {owner[x]} and {tv}")
            owner[x] = tv

    # Condition 3: edge preimages are non-loops attached to both sides.
    for e, val in sorted(m.map.items()):
        if not (isinstance(val, tuple) and val[0] == "e"):
            continue
        te = val[1]
        t1, t2 = h.endpoints(te)
        u, w = gl.graph.endpoints(e)
        if u == w:
            return Violation(3, (te, e), f"preimage {e} of target edge {te} is a loop")
        if t1 == t2:
            return Violation(3, (te, e), f"target edge {te} is a loop; models require loopless targets")
        ok = (owner.get(u) == t1 and owner.get(w) == t2) or (owner.get(u) == t2 and owner.get(w) == t1)
        if not ok:
            return Violation(3, (te, e, u, w), f"preimage {e} of target edge {te} does not join the two vertex preimages")
    return None


def validate_distance_minor(m: MinorModel) -> Optional[Violation]:
    """Minor-model conditions plus distance domination (condition 5).

    Condition 5 ranges over all pairs of non-loop, non-STAR source edges: the
    target distance of the images must not exceed the source distance.  The
    check groups edges by image (the required target distance is constant on
    a group pair, and the smallest source distance between two groups comes
    from one multi-source BFS per group), which keeps large grids tractable.
    """
    v = validate_minor_model(m)
    if v is not None:
        return v
    gl, h = m.source, m.target
    g = gl.base
    loops = gl.loop_ids()

    groups: dict[tuple, list[int]] = {}
    for e, val in m.map.items():
        if val == STAR or e in loops:
            continue
        groups.setdefault(val, []).append(e)
    if not groups:
        return None

    verts = g.sorted_vertices()
    vidx = {x: i for i, x in enumerate(verts)}
    n = len(verts)
    adj: list[list[int]] = [[] for _ in range(n)]
    for _, u, w in g.edges():
        iu, iw = vidx[u], vidx[w]
        if iu != iw:
            adj[iu].append(iw)
            adj[iw].append(iu)

    big = n + 10

    def multi_bfs(sources: list[int]) -> list[int]:
        d = [big] * n
        dq = deque()
        for s in sources:
            d[s] = 0
            dq.append(s)
        while dq:
            x = dq.popleft()
            nd = d[x] + 1
            for y in adj[x]:
                if d[y] > nd:
                    d[y] = nd
                    dq.append(y)
        return d

    hdist = {x: h.bfs_distances(x) for x in h.vertices}

    def dh_between(val1: tuple, val2: tuple) -> float:
        k1, id1 = val1
        k2, id2 = val2
        if k1 == "v" and k2 == "v":
            if id1 == id2:
                return 0
            return hdist[id1].get(id2, INF)
        if k1 == "v":
            a, b = h.endpoints(id2)
            return 1 + min(hdist[id1].get(a, INF), hdist[id1].get(b, INF))
        if k2 == "v":
            a, b = h.endpoints(id1)
            return 1 + min(hdist[id2].get(a, INF), hdist[id2].get(b, INF))
        if id1 == id2:
            return 1
        a1, b1 = h.endpoints(id1)
        a2, b2 = h.endpoints(id2)
        best = min(
            hdist[a1].get(a2, INF),
            hdist[a1].get(b2, INF),
            hdist[b1].get(a2, INF),
            hdist[b1].get(b2, INF),
        )
        return best + 2

    images = sorted(groups)
    endpoint_idx: dict[tuple, list[int]] = {}
    for val, eids in groups.items():
        pts: set[int] = set()
        for e in eids:
            u, w = g.endpoints(e)
            pts.update((vidx[u], vidx[w]))
        endpoint_idx[val] = sorted(pts)

    for i, val1 in enumerate(images):
        d = multi_bfs(endpoint_idx[val1])
        for val2 in images[i:]:
            if val2 == val1:
                # Same image: distance 0 (vertex) or 1 (single edge preimage)
                # never exceeds any source distance.
                continue
            near = min(d[q] for q in endpoint_idx[val2])
            if near >= big:
                continue
            dg = near + 2
            dh = dh_between(val1, val2)
            if dh > dg:
                e1, e2 = _witness_pair(g, groups[val1], groups[val2], vidx, d, near)
                return Violation(5, (e1, e2, dh, dg), f"target distance {dh} exceeds source distance {dg}")
    return None


def _witness_pair(g, eids1, eids2, vidx, d, near):
    """Recover a concrete edge pair achieving the smallest group distance."""
    best2 = min(
        eids2,
        key=lambda e: min(d[vidx[x]] for x in g.endpoints(e)),
    )
    # Any edge of the first group works for the report; pick the smallest id.
    return min(eids1), best2


# -- witness conversions ------------------------------------------------------


def model_from_witness(
    h: Multigraph,
    g: Multigraph,
    branch_sets: Mapping[int, frozenset[int] | set[int]],
    branch_edges: Mapping[int, int],
) -> MinorModel:
    """Build the canonical model from branch sets and branch edges.

    Spanning-tree edges and loops of each branch set map to its vertex, each
    branch edge maps to its target edge, everything else to STAR.
    """
    if not g.is_simple():
        raise GraphError("witness host must be a simple graph")
    gl = with_loops(g)
    if set(branch_sets) != set(h.vertices):
        raise GraphError("need exactly one branch set per target vertex")
    if set(branch_edges) != set(h.edge_dict):
        raise GraphError("need exactly one branch edge per target edge")

    mapping: dict[int, MapValue] = {e: STAR for e in gl.edge_ids()}
    used: set[int] = set()
    for tv in sorted(branch_sets):
        bs = set(branch_sets[tv])
        if not bs:
            raise GraphError(f"branch set of {tv} is empty")
        if used & bs:
            raise GraphError(f"branch set of {tv} overlaps another branch set")
        used |= bs
        sub = g.subgraph(bs)
        if not sub.is_connected():
            raise GraphError(f"branch set of {tv} is not connected")
        # Deterministic spanning tree: BFS from the smallest vertex.
        root = min(bs)
        seen = {root}
        queue = [root]
        tree_edges: list[int] = []
        while queue:
            x = queue.pop(0)
            for e, u, w in sub.edges():
                other = None
                if u == x and w not in seen:
                    other = w
                elif w == x and u not in seen:
                    other = u
                if other is not None:
                    seen.add(other)
                    queue.append(other)
                    tree_edges.append(e)
        for e in tree_edges:
            mapping[e] = ("v", tv)
        for v in bs:
            mapping[gl.loop_of[v]] = ("v", tv)

    for te in sorted(branch_edges):
        ge = branch_edges[te]
        if mapping[ge] != STAR:
            raise GraphError(f"branch edge {ge} already used inside a branch set")
        x, y = h.endpoints(te)
        u, w = g.endpoints(ge)
        if not ((u in branch_sets[x] and w in branch_sets[y]) or (u in branch_sets[y] and w in branch_sets[x])):
            raise GraphError(f"branch edge {ge} does not join the branch sets of {te}")
        mapping[ge] = ("e", te)

    return MinorModel(source=gl, target=h, map=mapping)


def witness_from_model(m: MinorModel) -> tuple[dict[int, frozenset[int]], dict[int, int]]:
    """Extract branch sets and branch edges from a valid model."""
    v = validate_minor_model(m)
    if v is not None:
        raise GraphError(f"invalid model: {v}")
    gl = m.source
    branch_sets = {
        tv: frozenset(_covered_vertices(gl, pre))
        for tv, pre in _vertex_preimages(m).items()
    }
    branch_edges = {te: pre[0] for te, pre in _edge_preimages(m).items()}
    return branch_sets, branch_edges


def identity_model(g: Multigraph) -> MinorModel:
    """The model of a simple graph in itself: loops to vertices, edges to edges."""
    gl = with_loops(g)
    mapping: dict[int, MapValue] = {}
    for v, le in gl.loop_of.items():
        mapping[le] = ("v", v)
    for e in g.edge_dict:
        mapping[e] = ("e", e)
    return MinorModel(source=gl, target=g, map=mapping)


def identity_contraction(g: Multigraph) -> CContractionModel:
    m = identity_model(g)
    return CContractionModel(base=ContractionModel(source=m.source, target=m.target, map=m.map), c=0)


def contraction_model_from_classes(
    g: Multigraph, classes: Sequence[Iterable[int]], c: Optional[int] = None
) -> tuple[CContractionModel, Multigraph, dict[int, int]]:
    """Contract the given connected vertex classes of a simple graph.

    Returns the certificate, the (simple) target, and the vertex map.  Class
    ids in the target are 0..len(classes)-1 in the given order.  When c is
    None the tightest parameter (max induced edge count) is used.
    """
    if not g.is_simple():
        raise GraphError("contraction source must be simple")
    gl = with_loops(g)
    cls = [sorted(set(cl)) for cl in classes]
    flat = [v for cl in cls for v in cl]
    if len(flat) != len(set(flat)) or set(flat) != set(g.vertices):
        raise GraphError("classes must partition the vertex set")
    vmap: dict[int, int] = {}
    for i, cl in enumerate(cls):
        if not g.subgraph(cl).is_connected():
            raise GraphError(f"class {i} is not connected")
        for v in cl:
            vmap[v] = i

    h_edges: dict[int, tuple[int, int]] = {}
    pair_to_edge: dict[tuple[int, int], int] = {}
    mapping: dict[int, MapValue] = {}
    max_internal = 0
    internal_count = [0] * len(cls)
    nxt = 0
    for e, u, w in g.edges():
        a, b = vmap[u], vmap[w]
        if a == b:
            mapping[e] = ("v", a)
            internal_count[a] += 1
        else:
            pair = (a, b) if a <= b else (b, a)
            if pair not in pair_to_edge:
                pair_to_edge[pair] = nxt
                h_edges[nxt] = pair
                nxt += 1
            mapping[e] = ("e", pair_to_edge[pair])
    for v, le in gl.loop_of.items():
        mapping[le] = ("v", vmap[v])
    max_internal = max(internal_count, default=0)
    if c is None:
        c = max_internal
    h = Multigraph(range(len(cls)), h_edges)
    cm = CContractionModel(base=ContractionModel(source=gl, target=h, map=mapping), c=c)
    viol = validate_c_contraction(cm)
    if viol is not None:
        raise GraphError(f"constructed contraction invalid: {viol}")
    return cm, h, vmap


# -- composition (minor through a contraction) --------------------------------


def compose_models(psi1: MinorModel, psi2: MinorModel) -> MinorModel:
    """Given a contraction A->B and a minor model A->C, produce a model B->C.

    Requires the uniqueness property: for every target edge of C, its unique
    preimage in A must be an edge that psi1 keeps as an edge of B.  The
    result maps that B-edge to the C-edge, maps the psi1-images of each
    C-vertex preimage (edges and loops of the corresponding connected piece
    of B) to the C-vertex, and discards the rest.
    """
    if psi1.source.base != psi2.source.base:
        raise GraphError("models must share the same source graph")
    v = validate_contraction_model(psi1)
    if v is not None:
        raise GraphError(f"first model is not a valid contraction: {v}")
    v = validate_minor_model(psi2)
    if v is not None:
        raise GraphError(f"second model is not a valid minor model: {v}")

    b = psi1.target
    cgraph = psi2.target
    if not b.is_simple():
        raise GraphError("intermediate graph must be simple to be re-looped")
    bl = with_loops(b)

    # Uniqueness check and edge bijection eta: E(C) -> E(B).
    eta_inv: dict[int, int] = {}
    for ce, pre in _edge_preimages(psi2).items():
        sources_in_b = [ae for ae in pre if isinstance(psi1.map[ae], tuple) and psi1.map[ae][0] == "e"]
        if len(sources_in_b) != 1:
            raise CertificateError(
                f"uniqueness condition fails for target edge {ce}: {len(sources_in_b)} kept preimages"
            )
        be = psi1.map[sources_in_b[0]][1]
        if be in eta_inv.values():
            raise CertificateError(f"target edges share the intermediate edge {be}")
        eta_inv[ce] = be

    mapping: dict[int, MapValue] = {e: STAR for e in bl.edge_ids()}
    for ce, be in eta_inv.items():
        mapping[be] = ("e", ce)

    for cv, pre in _vertex_preimages(psi2).items():
        b_edges: set[int] = set()
        b_vertices: set[int] = set()
        for ae in pre:
            val = psi1.map[ae]
            if val[0] == "e":
                b_edges.add(val[1])
            else:
                b_vertices.add(val[1])
        for be in b_edges:
            u, w = b.endpoints(be)
            b_vertices.update((u, w))
        for be in sorted(b_edges):
            if mapping[be] != STAR:
                raise CertificateError(
                    f"intermediate edge {be} claimed by both vertex {cv} and {mapping[be]}"
                )
            mapping[be] = ("v", cv)
        for bv in sorted(b_vertices):
            le = bl.loop_of[bv]
            if mapping[le] != STAR and mapping[le] != ("v", cv):
                raise CertificateError(
                    f"intermediate vertex {bv} claimed by {mapping[le]} and vertex {cv}"
                )
            mapping[le] = ("v", cv)

    out = MinorModel(source=bl, target=cgraph, map=mapping)
    viol = validate_minor_model(out)
    if viol is not None:
        raise CertificateError(f"composed model invalid: {viol}")
    return out


# -- path threading -----------------------------------------------------------


@dataclass(frozen=True)
class ThreadedPath:
    """An s-t path across ordered parts, with a marked central segment.

    `path` is the full vertex sequence; `edge_ids` the corresponding edges.
    `part_edge_ids` is the marked contiguous segment: it contains no edge
    internal to a part outside [alpha, beta] and includes the crossing edges
    entering part alpha and leaving part beta where those exist, so with both
    boundary edges present its length is at least beta - alpha + 2.
    `cross_edge_ids` lists the r-1 crossing edges in order.
    """

    path: list[int]
    edge_ids: list[int]
    part_edge_ids: list[int]
    cross_edge_ids: list[int]


def threaded_path(
    g: Multigraph,
    parts: Sequence[Iterable[int]],
    s: int,
    t: int,
    alpha: int,
    beta: int,
    part_edge_sets: Optional[Sequence[Iterable[int]]] = None,
    cross_edge_choices: Optional[Sequence[int]] = None,
) -> ThreadedPath:
    """Thread a path through consecutive connected parts and mark a segment.

    Parts are 1-indexed, pairwise disjoint; requires 1 <= alpha <= beta <= r
    (alpha < beta in the usual case; equality marks a single part);
    consecutive parts must be joined by an edge.  `part_edge_sets` optionally
    restricts the walk inside part i to the given edge ids (e.g. the solid
    set of a certificate branch); `cross_edge_choices` optionally fixes the
    crossing edge between part i and i+1.
    """
    r = len(parts)
    psets = [sorted(set(p)) for p in parts]
    if not (1 <= alpha <= beta <= r):
        raise GraphError(f"need 1 <= alpha <= beta <= r, got {alpha}, {beta}, r={r}")
    if s not in psets[0] or t not in psets[-1]:
        raise GraphError("s must lie in the first part and t in the last")
    flat = [v for ps in psets for v in ps]
    if len(flat) != len(set(flat)):
        raise GraphError("parts must be pairwise disjoint")

    subs: list[Multigraph] = []
    for i, ps in enumerate(psets):
        if part_edge_sets is None:
            sub = g.subgraph(ps)
        else:
            pool = {
                e: g.endpoints(e)
                for e in part_edge_sets[i]
                if not g.is_loop(e)
            }
            for e, (u, w) in pool.items():
                if u not in psets[i] or w not in psets[i]:
                    raise GraphError(f"edge {e} of part {i + 1} leaves the part")
            sub = Multigraph(ps, pool)
        if not sub.is_connected():
            raise GraphError(f"part {i + 1} does not induce a connected graph")
        subs.append(sub)

    # Crossing edges: caller's choice, else smallest edge id between parts.
    cross: list[tuple[int, int, int]] = []  # (edge id, endpoint in i, endpoint in i+1)
    for i in range(r - 1):
        a, b = set(psets[i]), set(psets[i + 1])
        if cross_edge_choices is not None and cross_edge_choices[i] is not None:
            e = cross_edge_choices[i]
            u, w = g.endpoints(e)
            if u in a and w in b:
                cross.append((e, u, w))
            elif w in a and u in b:
                cross.append((e, w, u))
            else:
                raise GraphError(f"chosen crossing edge {e} does not join parts {i + 1},{i + 2}")
            continue
        cands = []
        for e, u, w in g.edges():
            if u in a and w in b:
                cands.append((e, u, w))
            elif w in a and u in b:
                cands.append((e, w, u))
        if not cands:
            raise GraphError(f"no edge between part {i + 1} and part {i + 2}")
        cross.append(min(cands))

    def inner_path(sub: Multigraph, a: int, b: int) -> list[int]:
        if a == b:
            return [a]
        prev: dict[int, int] = {a: a}
        queue = deque([a])
        while queue:
            x = queue.popleft()
            if x == b:
                break
            for y in sorted(sub.neighbors(x)):
                if y not in prev:
                    prev[y] = x
                    queue.append(y)
        if b not in prev:
            raise GraphError("part is not connected")
        seq = [b]
        while seq[-1] != a:
            seq.append(prev[seq[-1]])
        return list(reversed(seq))

    def edge_id_for(sub: Multigraph, u: int, w: int) -> int:
        return min(sub.edges_between(u, w))

    entries = [s] + [c[2] for c in cross]
    exits = [c[1] for c in cross] + [t]

    full: list[int] = []
    edge_ids: list[int] = []
    tagged: list[tuple[int, str, int]] = []  # (edge id, kind, part index)
    for i in range(r):
        seg = inner_path(subs[i], entries[i], exits[i])
        for j in range(len(seg) - 1):
            eid = edge_id_for(subs[i], seg[j], seg[j + 1])
            edge_ids.append(eid)
            tagged.append((eid, "internal", i + 1))
        full.extend(seg)
        if i < r - 1:
            edge_ids.append(cross[i][0])
            tagged.append((cross[i][0], "cross", i + 1))

    part_edge_ids = [
        eid
        for (eid, kind, i) in tagged
        if (kind == "internal" and alpha <= i <= beta)
        or (kind == "cross" and alpha - 1 <= i <= beta)
    ]

    if len(set(full)) != len(full):
        raise GraphError("threaded walk revisits a vertex")
    return ThreadedPath(
        path=full,
        edge_ids=edge_ids,
        part_edge_ids=part_edge_ids,
        cross_edge_ids=[c[0] for c in cross],
    )


# -- contraction-edit distance -------------------------------------------------


def cdist_witness_check(
    a: Multigraph, m1: CContractionModel, m2: CContractionModel, c: int
) -> bool:
    """Certify that the contraction-edit distance of the two targets is <= c.

    True when both models are valid contractions of `a` with parameter <= c.
    """
    if m1.source.base != a or m2.source.base != a:
        return False
    if m1.c > c or m2.c > c:
        return False
    for cm in (m1, m2):
        tight = CContractionModel(base=cm.base, c=min(cm.c, c))
        if validate_c_contraction(tight) is not None:
            return False
    return True
