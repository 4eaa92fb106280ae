"""Vertex cover three ways: brute force, tree-decomposition DP, and the
win/win route that either solves by DP on a narrow decomposition or refutes
via a certified grid minor.

The win/win NO-certificate is exact: the smallest grid side r with
floor(r^2/2) > k is inverted through the exact inequality chain to a
treewidth threshold; a treewidth lower bound at or above the threshold
forces a grid minor whose cover demand already exceeds k.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .config import DEFAULT_VC_CAP
from .multigraph import CapExceeded, GraphError, Multigraph
from .planarize import ChainReport, chain_grid_side
from .treewidth import (
    TreeDecomposition,
    treewidth_lower,
    treewidth_upper,
    validate_decomposition,
)


def vc_brute(g: Multigraph, cap: int = DEFAULT_VC_CAP) -> tuple[int, frozenset[int]]:
    """Exact minimum vertex cover by branch and bound over edges."""
    gs = g.simplify()
    if gs.num_vertices() > cap:
        raise CapExceeded(f"graph has {gs.num_vertices()} vertices, cap is {cap}")
    forced = {u for e, u, w in g.edges() if u == w}
    adj = {v: gs.neighbors(v) - forced for v in gs.vertices if v not in forced}
    for v in adj:
        adj[v] = {w for w in adj[v] if w in adj}

    best_set: set[int] = set(adj)  # all vertices always cover
    best = [len(best_set) + len(forced)]
    best_holder = [frozenset(best_set | forced)]

    def matching_bound(live: dict[int, set[int]]) -> int:
        used: set[int] = set()
        count = 0
        for v in sorted(live):
            if v in used:
                continue
            for w in sorted(live[v]):
                if w not in used and w != v:
                    used.update((v, w))
                    count += 1
                    break
        return count

    def search(live: dict[int, set[int]], chosen: set[int]):
        # Strip isolated vertices.
        live = {v: nb for v, nb in live.items() if nb}
        if not live:
            total = len(chosen) + len(forced)
            if total < best[0]:
                best[0] = total
                best_holder[0] = frozenset(chosen | forced)
            return
        if len(chosen) + len(forced) + matching_bound(live) >= best[0]:
            return
        # Branch on an endpoint of the highest-degree vertex's first edge.
        v = max(sorted(live), key=lambda x: len(live[x]))
        w = min(live[v])
        for pick in (v, w):
            nxt = {a: set(nb) for a, nb in live.items()}
            for b in nxt.pop(pick, ()):  # remove pick and its edges
                nxt[b].discard(pick)
            search(nxt, chosen | {pick})

    search(adj, set())
    return best[0], best_holder[0]


def is_vertex_cover(g: Multigraph, cover: frozenset[int]) -> bool:
    return all(u in cover or w in cover for _, u, w in g.edges())


# -- DP over a tree decomposition -------------------------------------------------


@dataclass
class _NiceNode:
    kind: str  # "leaf" | "introduce" | "forget" | "join"
    bag: frozenset[int]
    children: list
    vertex: Optional[int] = None


def _nicify(d: TreeDecomposition) -> _NiceNode:
    """Expand a decomposition into leaf/introduce/forget/join form."""
    nodes = d.tree.sorted_vertices()
    root = nodes[0]
    children: dict[int, list[int]] = {n: [] for n in nodes}
    parent: dict[int, Optional[int]] = {root: None}
    order = [root]
    seen = {root}
    qi = 0
    while qi < len(order):
        x = order[qi]
        qi += 1
        for y in sorted(d.tree.neighbors(x)):
            if y not in seen:
                seen.add(y)
                parent[y] = x
                children[x].append(y)
                order.append(y)

    def chain(from_bag: frozenset[int], to_bag: frozenset[int], child: _NiceNode) -> _NiceNode:
        """Introduce/forget chain transforming child's bag into from_bag."""
        node = child
        cur = to_bag
        for v in sorted(cur - from_bag):
            cur = cur - {v}
            node = _NiceNode(kind="forget", bag=cur, children=[node], vertex=v)
        for v in sorted(from_bag - cur):
            cur = cur | {v}
            node = _NiceNode(kind="introduce", bag=cur, children=[node], vertex=v)
        return node

    def build(t: int) -> _NiceNode:
        bag = d.bags[t]
        kids = children[t]
        if not kids:
            base = _NiceNode(kind="leaf", bag=frozenset(), children=[])
            return chain(bag, frozenset(), base)
        parts = []
        for c in kids:
            parts.append(chain(bag, d.bags[c], build(c)))
        node = parts[0]
        for p in parts[1:]:
            node = _NiceNode(kind="join", bag=bag, children=[node, p])
        return node

    top = build(root)
    # Forget down to the empty bag at the very top.
    return chain(frozenset(), d.bags[root], top)


def vc_dp(g: Multigraph, d: TreeDecomposition) -> tuple[int, frozenset[int]]:
    """Exact minimum vertex cover by DP over a valid tree decomposition."""
    gs = g.simplify()
    viol = validate_decomposition(gs, d)
    if viol is not None:
        raise GraphError(f"invalid decomposition: {viol}")
    forced = {u for e, u, w in g.edges() if u == w}
    root = _nicify(d)
    adjacency = {v: gs.neighbors(v) for v in gs.vertices}

    def solve(node: _NiceNode) -> dict[frozenset[int], frozenset[int]]:
        """Map bag-subset -> smallest partial cover agreeing with it."""
        if node.kind == "leaf":
            return {frozenset(): frozenset()}
        if node.kind == "introduce":
            child = solve(node.children[0])
            v = node.vertex
            out: dict[frozenset[int], frozenset[int]] = {}
            for s, cov in child.items():
                with_v = s | {v}
                cand = cov | {v}
                if with_v not in out or len(cand) < len(out[with_v]):
                    out[with_v] = cand
                # v uncovered: all bag-internal edges at v need the other side.
                if all(u in s for u in adjacency[v] & (node.bag - {v})):
                    if s not in out or len(cov) < len(out[s]):
                        out[s] = cov
            return out
        if node.kind == "forget":
            child = solve(node.children[0])
            v = node.vertex
            out = {}
            for s, cov in child.items():
                key = s - {v}
                if key not in out or len(cov) < len(out[key]):
                    out[key] = cov
            return out
        # join
        left = solve(node.children[0])
        right = solve(node.children[1])
        out = {}
        for s, lcov in left.items():
            rcov = right.get(s)
            if rcov is None:
                continue
            cand = lcov | rcov
            if s not in out or len(cand) < len(out[s]):
                out[s] = cand
        return out

    table = solve(root)
    if frozenset() not in table:
        raise GraphError("internal: DP finished without a root state")
    cover = table[frozenset()] | forced
    if not is_vertex_cover(g.simplify(), cover):  # pragma: no cover - guard
        raise GraphError("internal: DP produced a non-cover")
    return len(cover), frozenset(cover)


# -- the win/win solver ------------------------------------------------------------


@dataclass(frozen=True)
class WinWinOutcome:
    answer: str  # "YES" | "NO"
    route: str  # "dp" | "grid-no-certificate" | "dp-fallback"
    cover: Optional[frozenset[int]]
    width_used: int
    r_min: int
    t_threshold: int
    tw_lower_value: int
    tw_upper_value: Optional[int]
    chain: ChainReport

    def as_dict(self) -> dict:
        return {
            "answer": self.answer,
            "route": self.route,
            "cover": sorted(self.cover) if self.cover is not None else None,
            "width_used": self.width_used,
            "r_min": self.r_min,
            "t_threshold": self.t_threshold,
            "tw_lower": self.tw_lower_value,
            "tw_upper": self.tw_upper_value,
            "chain": self.chain.as_dict(),
        }


def grid_cover_demand(r: int) -> int:
    """Minimum vertex cover of the r x r grid: floor(r^2 / 2)."""
    return r * r // 2


def winwin_vertex_cover(gb: Multigraph, xi_value: int, k: int) -> WinWinOutcome:
    """Decide vc(gb) <= k by decomposition DP or a grid-minor refutation.

    `gb` must be the intersection graph of an arrangement with parameter
    `xi_value`; the grid route is sound because the exact chain converts a
    treewidth lower bound into a grid side whose cover demand exceeds k.
    """
    if k < 0:
        raise GraphError("cover budget must be non-negative")
    r_min = 1
    while grid_cover_demand(r_min) <= k:
        r_min += 1

    t = 0
    while chain_grid_side(t, xi_value).r_target < r_min:
        t += 1
    t_threshold = t

    lb = treewidth_lower(gb)
    if lb >= t_threshold:
        chain = chain_grid_side(lb, xi_value)
        return WinWinOutcome(
            answer="NO",
            route="grid-no-certificate",
            cover=None,
            width_used=lb,
            r_min=r_min,
            t_threshold=t_threshold,
            tw_lower_value=lb,
            tw_upper_value=None,
            chain=chain,
        )

    ub, dec = treewidth_upper(gb)
    route = "dp" if ub < t_threshold else "dp-fallback"
    size, cover = vc_dp(gb, dec)
    answer = "YES" if size <= k else "NO"
    return WinWinOutcome(
        answer=answer,
        route=route,
        cover=cover if answer == "YES" else None,
        width_used=dec.width,
        r_min=r_min,
        t_threshold=t_threshold,
        tw_lower_value=lb,
        tw_upper_value=ub,
        chain=chain_grid_side(ub, xi_value),
    )
