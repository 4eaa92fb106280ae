"""Tree decompositions: validation, exact width at desk scale, cheap bounds,
and lifting a decomposition through a bounded contraction.

The exact algorithm is dynamic programming over vertex subsets along
elimination orderings: for a prefix S already eliminated, the cost of
eliminating v next is the number of vertices outside S reachable from v
through S, and the treewidth is the min-max over all orderings.  Graphs are
simplified (loops and parallels dropped) first; treewidth is invariant under
that.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .config import DEFAULT_TW_CAP
from .models import CContractionModel, Violation, validate_c_contraction
from .multigraph import CapExceeded, GraphError, Multigraph


@dataclass(frozen=True)
class TreeDecomposition:
    tree: Multigraph
    bags: dict[int, frozenset[int]]

    @property
    def width(self) -> int:
        if not self.bags:
            return -1
        return max(len(b) for b in self.bags.values()) - 1


def validate_decomposition(g: Multigraph, d: TreeDecomposition) -> Optional[Violation]:
    """Check the three decomposition properties; None means valid."""
    t = d.tree
    if set(d.bags) != set(t.vertices):
        return Violation("tree", (), "bags and tree nodes disagree")
    if t.num_vertices() == 0:
        return Violation("tree", (), "decomposition tree is empty")
    if not t.is_simple() and t.num_edges() > 0:
        return Violation("tree", (), "decomposition tree has loops or parallel edges")
    if t.num_edges() != t.num_vertices() - 1 or not t.is_connected():
        return Violation("tree", (), "decomposition tree is not a tree")

    union = set().union(*d.bags.values()) if d.bags else set()
    if union != set(g.vertices):
        missing = set(g.vertices) - union
        return Violation(1, (tuple(sorted(missing))[:5],), "bags do not cover the vertex set")

    for e, u, w in g.edges():
        if not any(u in bag and w in bag for bag in d.bags.values()):
            return Violation(2, (e, u, w), f"no bag contains both ends of edge {e}")

    for v in g.sorted_vertices():
        nodes = {t_ for t_, bag in d.bags.items() if v in bag}
        sub = t.subgraph(nodes)
        if not sub.is_connected():
            return Violation(3, (v,), f"bags containing {v} do not induce a subtree")
    return None


# -- elimination machinery -----------------------------------------------------


def _elimination_decomposition(g: Multigraph, order: list[int]) -> TreeDecomposition:
    """Tree decomposition from an elimination ordering (bags are fill cliques)."""
    vs = list(g.sorted_vertices())
    if not vs:
        return TreeDecomposition(tree=Multigraph([0]), bags={0: frozenset()})
    adj: dict[int, set[int]] = {v: g.neighbors(v) for v in vs}
    bags_seq: list[tuple[int, frozenset[int]]] = []
    for v in order:
        nb = adj[v]
        bags_seq.append((v, frozenset(nb | {v})))
        for a in nb:
            adj[a].update(nb - {a})
            adj[a].discard(v)
        for a in adj:
            adj[a].discard(v)
        del adj[v]

    # Attach each bag to the first later bag containing its clique remainder.
    node_of = {v: i for i, (v, _) in enumerate(bags_seq)}
    tree_edges: dict[int, tuple[int, int]] = {}
    eid = 0
    for i, (v, bag) in enumerate(bags_seq):
        rest = bag - {v}
        if not rest:
            if i + 1 < len(bags_seq):
                tree_edges[eid] = (i, i + 1)
                eid += 1
            continue
        # The earliest-eliminated vertex of `rest` owns a bag containing rest.
        nxt = min(rest, key=lambda x: node_of[x])
        tree_edges[eid] = (i, node_of[nxt])
        eid += 1
    bags = {i: bag for i, (_, bag) in enumerate(bags_seq)}
    return TreeDecomposition(tree=Multigraph(range(len(bags_seq)), tree_edges), bags=bags)


def _min_fill_order(g: Multigraph) -> list[int]:
    adj: dict[int, set[int]] = {v: g.neighbors(v) for v in g.sorted_vertices()}
    order: list[int] = []
    while adj:
        best_v, best_fill = None, None
        for v in sorted(adj):
            nb = list(adj[v])
            fill = 0
            for i in range(len(nb)):
                for j in range(i + 1, len(nb)):
                    if nb[j] not in adj[nb[i]]:
                        fill += 1
            if best_fill is None or fill < best_fill:
                best_v, best_fill = v, fill
        nb = adj[best_v]
        for a in nb:
            adj[a].update(nb - {a})
            adj[a].discard(best_v)
        del adj[best_v]
        order.append(best_v)
    return order


def treewidth_upper(g: Multigraph) -> tuple[int, TreeDecomposition]:
    """Greedy minimum-fill-in elimination; always a valid decomposition."""
    gs = g.simplify()
    order = _min_fill_order(gs)
    d = _elimination_decomposition(gs, order)
    return d.width, d


def treewidth_lower(g: Multigraph) -> int:
    """Iterated min-degree under edge contraction (minor-min-width)."""
    gs = g.simplify()
    if gs.num_vertices() == 0:
        return -1
    adj: dict[int, set[int]] = {v: gs.neighbors(v) for v in gs.sorted_vertices()}
    best = 0
    while adj:
        v = min(sorted(adj), key=lambda x: len(adj[x]))
        d = len(adj[v])
        best = max(best, d)
        if d == 0:
            del adj[v]
            continue
        # Contract v into the neighbor sharing the fewest common neighbors.
        u = min(sorted(adj[v]), key=lambda x: len(adj[x] & adj[v]))
        merged = (adj[v] | adj[u]) - {u, v}
        for w in adj[v]:
            adj[w].discard(v)
        del adj[v]
        for w in merged:
            adj[w].add(u)
            adj[w].discard(v)
        adj[u] = merged
    return best


_EXACT_CACHE: dict[tuple, tuple[int, list[int]]] = {}


def _canonical_key(g: Multigraph) -> tuple:
    return (tuple(sorted(g.vertices)), tuple(sorted((u, w) for _, u, w in g.edges())))


def treewidth_exact(
    g: Multigraph, cap: int = DEFAULT_TW_CAP, shortcut: bool = True
) -> tuple[int, TreeDecomposition]:
    """Exact treewidth with an optimal decomposition.

    Subset dynamic programming over elimination orderings; `cap` bounds the
    graph size.  With `shortcut` enabled, the DP is skipped when the cheap
    lower bound already meets the min-fill upper bound (the value is then
    certified by the matching bound pair).
    """
    gs = g.simplify()
    n = gs.num_vertices()
    if n > cap:
        raise CapExceeded(f"graph has {n} vertices, cap is {cap}")
    if n == 0:
        d = TreeDecomposition(tree=Multigraph([0]), bags={0: frozenset()})
        return -1, d

    ub_width, ub_dec = treewidth_upper(gs)
    if shortcut:
        lb = treewidth_lower(gs)
        if lb >= ub_width:
            return ub_width, ub_dec

    key = _canonical_key(gs)
    if key in _EXACT_CACHE:
        width, order = _EXACT_CACHE[key]
        return width, _elimination_decomposition(gs, order)

    vs = gs.sorted_vertices()
    idx = {v: i for i, v in enumerate(vs)}
    nbr = [0] * n
    for _, u, w in gs.edges():
        nbr[idx[u]] |= 1 << idx[w]
        nbr[idx[w]] |= 1 << idx[u]

    full = (1 << n) - 1
    dp = [0] * (1 << n)
    choice = [0] * (1 << n)

    for s in range(1, 1 << n):
        best = n + 1
        best_v = -1
        rem = s
        while rem:
            bit = rem & -rem
            v = bit.bit_length() - 1
            rem ^= bit
            prev = dp[s ^ bit]
            if prev >= best:
                continue
            t = s ^ bit
            # Component of v in G[t | bit], then its outside neighborhood.
            comp = bit
            nb = nbr[v]
            add = nb & t & ~comp
            while add:
                comp |= add
                grow = add
                while grow:
                    b2 = grow & -grow
                    nb |= nbr[b2.bit_length() - 1]
                    grow ^= b2
                add = nb & t & ~comp
            q = bin(nb & ~t & ~bit).count("1")
            val = prev if prev > q else q
            if val < best:
                best = val
                best_v = v
        dp[s] = best
        choice[s] = best_v

    width = dp[full]
    # Reconstruct the elimination order by peeling the chosen last vertex.
    order_rev: list[int] = []
    s = full
    while s:
        v = choice[s]
        order_rev.append(vs[v])
        s ^= 1 << v
    order = list(reversed(order_rev))
    _EXACT_CACHE[key] = (width, order)

    d = _elimination_decomposition(gs, order)
    if d.width != width:  # pragma: no cover - internal consistency guard
        raise GraphError(f"internal: decomposition width {d.width} != dp width {width}")
    return width, d


# -- lifting through contractions ----------------------------------------------


def lift_decomposition(d: TreeDecomposition, cm: CContractionModel) -> TreeDecomposition:
    """Pull a decomposition of the contraction target back to the source.

    Each bag's vertices are replaced by their preimage classes; the lifted
    width is at most (c+1) * (width + 1) - 1 because every class spans at
    most c+1 vertices.
    """
    viol = validate_c_contraction(cm)
    if viol is not None:
        raise GraphError(f"invalid contraction certificate: {viol}")
    h = cm.target
    viol = validate_decomposition(h, d)
    if viol is not None:
        raise GraphError(f"invalid decomposition of the target: {viol}")

    gl = cm.source
    classes: dict[int, set[int]] = {tv: set() for tv in h.vertices}
    for e, val in cm.map.items():
        if isinstance(val, tuple) and val[0] == "v":
            u, w = gl.graph.endpoints(e)
            classes[val[1]].update((u, w))

    bound = (cm.c + 1) * (d.width + 1) - 1
    bags = {
        node: frozenset(x for tv in bag for x in classes[tv])
        for node, bag in d.bags.items()
    }
    lifted = TreeDecomposition(tree=d.tree, bags=bags)
    if lifted.width > bound:  # pragma: no cover - impossible for valid inputs
        raise GraphError(f"internal: lifted width {lifted.width} exceeds bound {bound}")
    return lifted
