"""Shared test fixtures: standard small graphs and conversion utilities."""

from __future__ import annotations

import random

import networkx as nx

from gridtw.multigraph import Multigraph


def complete(n: int) -> Multigraph:
    edges = {}
    eid = 0
    for u in range(n):
        for w in range(u + 1, n):
            edges[eid] = (u, w)
            eid += 1
    return Multigraph(range(n), edges)


def path(n: int) -> Multigraph:
    return Multigraph(range(n), {i: (i, i + 1) for i in range(n - 1)})


def cycle(n: int) -> Multigraph:
    edges = {i: (i, (i + 1) % n) for i in range(n)}
    return Multigraph(range(n), edges)


def star(leaves: int) -> Multigraph:
    return Multigraph(range(leaves + 1), {i: (0, i + 1) for i in range(leaves)})


def to_nx(g: Multigraph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(g.vertices)
    for _, u, w in g.simplify().edges():
        out.add_edge(u, w)
    return out


def from_nx(g: nx.Graph) -> Multigraph:
    nodes = {v: i for i, v in enumerate(sorted(g.nodes(), key=repr))}
    edges = {}
    for eid, (u, w) in enumerate(sorted((tuple(sorted((nodes[a], nodes[b]))) for a, b in g.edges()))):
        edges[eid] = (u, w)
    return Multigraph(range(len(nodes)), edges)


def isomorphic(a: Multigraph, b: Multigraph) -> bool:
    return nx.is_isomorphic(to_nx(a), to_nx(b))


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
    """Random spanning tree plus extra edges; always connected."""
    edges = {}
    eid = 0
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        u = order[i]
        w = order[rng.randrange(i)]
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
