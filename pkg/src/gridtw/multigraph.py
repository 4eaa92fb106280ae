"""Multigraphs with stable integer ids, contractions, and mixed vertex/edge distances.

All graph values are immutable after construction; every operation returns a
new graph together with explicit old->new mappings so that certificates built
on top of a graph can be rebased after a contraction.

Two contraction conventions coexist:

* the *simple* convention (`contract_edge`, `contract_edge_set`): loops and
  parallel edges produced by the contraction are deleted, which is the right
  notion for minor-theoretic work;
* the *multigraph* quotient (`quotient_multi`): parallel edges between merged
  classes survive, loops are still dropped.  Planarization uses this to keep
  one edge per crossing until an explicit simplification step.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional


class GraphError(ValueError):
    """Malformed graph input or violated operation precondition."""


class CapExceeded(GraphError):
    """Instance is larger than the configured cap of an exact operation."""


Edge = tuple[int, int]


class Multigraph:
    """Undirected multigraph: integer vertex ids, integer edge ids, loops allowed."""

    __slots__ = ("_vertices", "_edges", "_adj")

    def __init__(self, vertices: Iterable[int], edges: Mapping[int, Edge] | Iterable[tuple[int, int, int]] = ()):
        vs = frozenset(int(v) for v in vertices)
        if isinstance(edges, Mapping):
            items = [(int(e), (int(u), int(w))) for e, (u, w) in edges.items()]
        else:
            items = [(int(e), (int(u), int(w))) for (e, u, w) in edges]
        ed: dict[int, Edge] = {}
        for eid, (u, w) in items:
            if eid in ed:
                raise GraphError(f"duplicate edge id {eid}")
            if u not in vs or w not in vs:
                raise GraphError(f"edge {eid} has unknown endpoint ({u},{w})")
            ed[eid] = (u, w) if u <= w else (w, u)
        self._vertices = vs
        self._edges = ed
        adj: dict[int, set[int]] = {v: set() for v in vs}
        for (u, w) in ed.values():
            adj[u].add(w)
            adj[w].add(u)
        self._adj = adj

    # -- basic accessors ---------------------------------------------------

    @property
    def vertices(self) -> frozenset[int]:
        return self._vertices

    def sorted_vertices(self) -> list[int]:
        return sorted(self._vertices)

    @property
    def edge_dict(self) -> dict[int, Edge]:
        return dict(self._edges)

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield (edge id, u, v) in id order."""
        for eid in sorted(self._edges):
            u, w = self._edges[eid]
            yield eid, u, w

    def edge_ids(self) -> list[int]:
        return sorted(self._edges)

    def endpoints(self, eid: int) -> Edge:
        try:
            return self._edges[eid]
        except KeyError:
            raise GraphError(f"unknown edge id {eid}") from None

    def has_vertex(self, v: int) -> bool:
        return v in self._vertices

    def has_edge_id(self, eid: int) -> bool:
        return eid in self._edges

    def num_vertices(self) -> int:
        return len(self._vertices)

    def num_edges(self) -> int:
        return len(self._edges)

    def is_loop(self, eid: int) -> bool:
        u, w = self.endpoints(eid)
        return u == w

    def neighbors(self, v: int) -> set[int]:
        if v not in self._adj:
            raise GraphError(f"unknown vertex {v}")
        return set(self._adj[v]) - {v}

    def incident_edges(self, v: int) -> list[int]:
        return [e for e, (u, w) in sorted(self._edges.items()) if v in (u, w)]

    def edges_between(self, u: int, w: int) -> list[int]:
        a, b = (u, w) if u <= w else (w, u)
        return [e for e, uv in sorted(self._edges.items()) if uv == (a, b)]

    def degree(self, v: int) -> int:
        """Simple-graph degree: number of distinct neighbors other than v."""
        return len(self.neighbors(v))

    def is_simple(self) -> bool:
        seen: set[Edge] = set()
        for u, w in self._edges.values():
            if u == w or (u, w) in seen:
                return False
            seen.add((u, w))
        return True

    def max_edge_id(self) -> int:
        return max(self._edges, default=-1)

    def max_vertex_id(self) -> int:
        return max(self._vertices, default=-1)

    # -- derived graphs ----------------------------------------------------

    def simplify(self) -> "Multigraph":
        """Drop loops and deduplicate parallel edges (smallest id survives)."""
        kept: dict[Edge, int] = {}
        for eid in sorted(self._edges):
            u, w = self._edges[eid]
            if u == w:
                continue
            kept.setdefault((u, w), eid)
        return Multigraph(self._vertices, {e: uv for uv, e in kept.items()})

    def subgraph(self, vs: Iterable[int]) -> "Multigraph":
        keep = set(vs)
        unknown = keep - self._vertices
        if unknown:
            raise GraphError(f"unknown vertices {sorted(unknown)}")
        ed = {e: (u, w) for e, (u, w) in self._edges.items() if u in keep and w in keep}
        return Multigraph(keep, ed)

    def edge_subgraph(self, eids: Iterable[int]) -> "Multigraph":
        """Subgraph spanned by the given edges (vertices = their endpoints)."""
        ids = set(eids)
        vs: set[int] = set()
        ed: dict[int, Edge] = {}
        for e in ids:
            u, w = self.endpoints(e)
            vs.update((u, w))
            ed[e] = (u, w)
        return Multigraph(vs, ed)

    # -- traversal ---------------------------------------------------------

    def components(self) -> list[frozenset[int]]:
        seen: set[int] = set()
        comps: list[frozenset[int]] = []
        for start in sorted(self._vertices):
            if start in seen:
                continue
            comp = {start}
            dq = deque([start])
            while dq:
                v = dq.popleft()
                for w in self._adj[v]:
                    if w not in comp:
                        comp.add(w)
                        dq.append(w)
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def bfs_distances(self, source: int) -> dict[int, int]:
        if source not in self._vertices:
            raise GraphError(f"unknown vertex {source}")
        dist = {source: 0}
        dq = deque([source])
        while dq:
            v = dq.popleft()
            d = dist[v] + 1
            for w in self._adj[v]:
                if w not in dist:
                    dist[w] = d
                    dq.append(w)
        return dist

    # -- equality / repr ----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self):  # pragma: no cover - graphs are not meant as dict keys
        return hash((self._vertices, tuple(sorted(self._edges.items()))))

    def __repr__(self) -> str:
        return f"Multigraph(|V|={len(self._vertices)}, |E|={len(self._edges)})"


@dataclass(frozen=True)
class LoopedGraph:
    """A simple base graph with exactly one marker loop added per vertex."""

    base: Multigraph
    graph: Multigraph
    loop_of: Mapping[int, int] = field(repr=False)

    def loop_ids(self) -> frozenset[int]:
        return frozenset(self.loop_of.values())

    def is_added_loop(self, eid: int) -> bool:
        return eid in self.loop_ids()

    def vertex_of_loop(self, eid: int) -> int:
        u, w = self.graph.endpoints(eid)
        if u != w or eid not in self.loop_ids():
            raise GraphError(f"edge {eid} is not an added loop")
        return u

    def edge_ids(self) -> list[int]:
        return self.graph.edge_ids()


def with_loops(g: Multigraph) -> LoopedGraph:
    """Add one loop per vertex of a simple graph.

    Loop ids are allocated deterministically after the largest base edge id,
    in increasing vertex order.
    """
    if not g.is_simple():
        raise GraphError("with_loops requires a simple graph")
    nxt = g.max_edge_id() + 1
    loops: dict[int, int] = {}
    ed = g.edge_dict
    for v in g.sorted_vertices():
        ed[nxt] = (v, v)
        loops[v] = nxt
        nxt += 1
    return LoopedGraph(base=g, graph=Multigraph(g.vertices, ed), loop_of=loops)


# -- contraction ------------------------------------------------------------


def contract_edge(g: Multigraph, eid: int) -> tuple[Multigraph, dict[int, int]]:
    """Contract a non-loop edge under the simple-contraction convention.

    The two endpoints are replaced by a fresh vertex adjacent (simply) to the
    union of their former neighbors; loops and parallels created by the merge
    are deleted.  Returns the new graph and the old->new vertex mapping.
    """
    u, w = g.endpoints(eid)
    if u == w:
        raise GraphError(f"cannot contract loop {eid}")
    return contract_edge_set(g, {eid})


def _quotient(g: Multigraph, eids: Iterable[int], keep_parallel: bool) -> tuple[Multigraph, dict[int, int]]:
    ids = set(eids)
    for e in ids:
        if not g.has_edge_id(e):
            raise GraphError(f"unknown edge id {e}")
        if g.is_loop(e):
            raise GraphError(f"cannot contract loop {e}")

    # Union-find over the contracted edge classes.
    parent: dict[int, int] = {v: v for v in g.vertices}

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in sorted(ids):
        u, w = g.endpoints(e)
        ru, rw = find(u), find(w)
        if ru != rw:
            parent[max(ru, rw)] = min(ru, rw)

    classes: dict[int, list[int]] = {}
    for v in g.sorted_vertices():
        classes.setdefault(find(v), []).append(v)

    # Untouched vertices keep their id; merged classes get fresh ids in order
    # of their smallest member, so the result is deterministic.
    nxt = g.max_vertex_id() + 1
    vmap: dict[int, int] = {}
    for root in sorted(classes):
        members = classes[root]
        if len(members) == 1:
            vmap[members[0]] = members[0]
        else:
            for v in members:
                vmap[v] = nxt
            nxt += 1

    new_edges: dict[int, Edge] = {}
    seen_pairs: set[Edge] = set()
    for e in sorted(g.edge_dict):
        if e in ids:
            continue
        u, w = g.endpoints(e)
        a, b = vmap[u], vmap[w]
        if a == b:
            # Pre-existing loops on untouched vertices survive; loops created
            # by the contraction are deleted under both conventions.
            if u == w and vmap[u] == u:
                new_edges[e] = (a, b)
            continue
        pair = (a, b) if a <= b else (b, a)
        if not keep_parallel:
            if pair in seen_pairs:
                continue
            seen_pairs.add(pair)
        new_edges[e] = pair

    return Multigraph(set(vmap.values()), new_edges), vmap


def contract_edge_set(g: Multigraph, eids: Iterable[int]) -> tuple[Multigraph, dict[int, int]]:
    """Contract a set of non-loop edges; simple-contraction convention.

    Equals iterated `contract_edge` in any order (up to isomorphism); the
    implementation is the quotient by connected classes of the contracted
    edge set, which makes order-independence structural.
    """
    return _quotient(g, eids, keep_parallel=False)


def quotient_multi(g: Multigraph, eids: Iterable[int]) -> tuple[Multigraph, dict[int, int]]:
    """Multigraph quotient: parallels between merged classes are kept."""
    return _quotient(g, eids, keep_parallel=True)


# -- solid sets ---------------------------------------------------------------


def is_solid(gl: LoopedGraph, eids: Iterable[int]) -> bool:
    """Check that an edge set of the looped graph is solid.

    A set F is solid when every two vertices covered by F are joined by a
    walk within F in which every second edge, starting with the first, is a
    loop (loop, edge, loop, edge, ...; the walk may stop right after an
    edge).  Equivalently: at most one covered vertex lacks its loop in F,
    and the loop-bearing covered vertices are connected by the non-loop
    edges of F running between them.
    """
    ids = set(eids)
    g = gl.graph
    covered: set[int] = set()
    nonloop: list[Edge] = []
    for e in ids:
        u, w = g.endpoints(e)
        covered.update((u, w))
        if u != w:
            nonloop.append((u, w))
    if not covered:
        return True
    looped = {v for v in covered if gl.loop_of.get(v) in ids}
    if len(covered - looped) > 1:
        return False
    if not looped:
        # Only possible for an empty F (covered would be empty); a non-loop
        # edge covers two loopless vertices, caught above.
        return not covered
    # Walks traverse interior vertices only through their loops, so the
    # loop-bearing vertices must be connected among themselves; a loopless
    # covered vertex is always an endpoint of a non-loop F-edge into them.
    adj: dict[int, set[int]] = {v: set() for v in looped}
    for u, w in nonloop:
        if u in looped and w in looped:
            adj[u].add(w)
            adj[w].add(u)
    start = next(iter(looped))
    seen = {start}
    dq = deque([start])
    while dq:
        v = dq.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                dq.append(w)
    return seen == looped


def solid_walk_exists(gl: LoopedGraph, eids: Iterable[int], v1: int, v2: int) -> bool:
    """Explicit alternating-walk check between two vertices (test oracle).

    Walk shape from a: loop at a, edge, loop, edge, ...; it may stop right
    after an edge, so only the final vertex may lack its loop.  A pair is
    joined when a walk exists in either direction.  Kept independent of
    `is_solid` so the two can be cross-checked.
    """
    ids = set(eids)
    g = gl.graph
    if v1 == v2:
        return True
    adj: dict[int, set[int]] = {}
    for e in ids:
        u, w = g.endpoints(e)
        if u != w:
            adj.setdefault(u, set()).add(w)
            adj.setdefault(w, set()).add(u)

    def has_loop(v: int) -> bool:
        return gl.loop_of.get(v) in ids

    def reaches(a: int, b: int) -> bool:
        if not has_loop(a):
            return False
        seen = {a}
        dq = deque([a])
        while dq:
            v = dq.popleft()
            for w in adj.get(v, ()):
                if w == b:
                    return True
                if w not in seen and has_loop(w):
                    seen.add(w)
                    dq.append(w)
        return False

    return reaches(v1, v2) or reaches(v2, v1)


# -- mixed vertex/edge distance ----------------------------------------------

INF = float("inf")


def _as_endpoint_set(g: Multigraph, x: int | tuple[str, int]) -> tuple[str, tuple[int, ...]]:
    """Normalize a vertex or ("v"/"e", id) argument to its endpoint vertices."""
    if isinstance(x, tuple):
        kind, ident = x
        if kind == "v":
            if not g.has_vertex(ident):
                raise GraphError(f"unknown vertex {ident}")
            return "v", (ident,)
        if kind == "e":
            u, w = g.endpoints(ident)
            return "e", (u, w)
        raise GraphError(f"bad dist argument {x!r}")
    if not g.has_vertex(x):
        raise GraphError(f"unknown vertex {x}")
    return "v", (x,)


def dist(
    g: Multigraph,
    x: int | tuple[str, int],
    y: int | tuple[str, int],
    vdist: Optional[Mapping[int, Mapping[int, int]]] = None,
) -> float:
    """Smallest length of a path containing both arguments.

    Arguments are vertices (plain int or ("v", id)) or edges ("e", id).
    dist(v, v) = 0, dist(e, e) = 1, adjacent edges are at distance 2;
    unreachable pairs give infinity.  `vdist` optionally supplies precomputed
    vertex distances (dict of dicts from BFS) to avoid repeated searches.
    """
    kx, ex = _as_endpoint_set(g, x)
    ky, ey = _as_endpoint_set(g, y)

    def d(a: int, b: int) -> float:
        if a == b:
            return 0
        if vdist is not None:
            return vdist[a].get(b, INF)
        return g.bfs_distances(a).get(b, INF)

    if kx == "v" and ky == "v":
        return d(ex[0], ey[0])
    if kx == "v" and ky == "e":
        return 1 + min(d(ex[0], q) for q in ey)
    if kx == "e" and ky == "v":
        return 1 + min(d(p, ey[0]) for p in ex)
    # edge/edge
    if isinstance(x, tuple) and isinstance(y, tuple) and x == y:
        return 1
    best = min(d(p, q) for p in ex for q in ey)
    return best + 2
