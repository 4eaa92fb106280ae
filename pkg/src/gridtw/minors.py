"""Ground-truth minor containment by exhaustive branch-set search.

The oracle enumerates mappings of the pattern's vertices to disjoint
connected subsets of the host ("branch sets") and demands a host edge
between the branch sets of every pattern edge.  Deliberately small-scale:
it is the reference every certificate-based operation is tested against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .config import DEFAULT_MINOR_CAP
from .multigraph import CapExceeded, GraphError, Multigraph, contract_edge_set


@dataclass(frozen=True)
class MinorWitness:
    """Branch sets (one disjoint connected host set per pattern vertex) plus
    one host branch edge realizing each pattern edge."""

    branch_sets: dict[int, frozenset[int]]
    branch_edges: dict[int, int]  # pattern edge id -> host edge id


def check_witness(h: Multigraph, g: Multigraph, witness: MinorWitness) -> None:
    """Verify a witness by direct definition; raises GraphError when invalid."""
    sets = witness.branch_sets
    if set(sets) != set(h.vertices):
        raise GraphError("witness must give one branch set per pattern vertex")
    used: set[int] = set()
    for x, bs in sets.items():
        if not bs:
            raise GraphError(f"empty branch set for {x}")
        if used & bs:
            raise GraphError(f"branch set of {x} overlaps another branch set")
        used |= bs
        if not g.subgraph(bs).is_connected():
            raise GraphError(f"branch set of {x} is not connected")
    if set(witness.branch_edges) != set(h.edge_dict):
        raise GraphError("witness must give one branch edge per pattern edge")
    for he, ge in witness.branch_edges.items():
        x, y = h.endpoints(he)
        if x == y:
            raise GraphError("pattern loops are not supported by witnesses")
        u, w = g.endpoints(ge)
        if not ((u in sets[x] and w in sets[y]) or (u in sets[y] and w in sets[x])):
            raise GraphError(f"branch edge {ge} does not join the branch sets of pattern edge {he}")
    if len(set(witness.branch_edges.values())) != len(witness.branch_edges):
        raise GraphError("branch edges must be distinct host edges")


def contract_witness(g: Multigraph, witness: MinorWitness) -> Multigraph:
    """Contract the witness down to the pattern it claims.

    Takes the subgraph consisting of the branch sets' internal edges plus the
    branch edges only, contracts each branch set, and returns the result;
    comparing it to the pattern by isomorphism is an independent confirmation
    path for a witness.
    """
    if not witness.branch_sets:
        return Multigraph([])
    keep = set().union(*witness.branch_sets.values())
    internal = [
        e
        for e, u, w in g.edges()
        if any(u in bs and w in bs for bs in witness.branch_sets.values())
    ]
    chosen = set(internal) | set(witness.branch_edges.values())
    sub = Multigraph(keep, {e: g.endpoints(e) for e in chosen})
    quotient, _ = contract_edge_set(sub, internal)
    return quotient.simplify()


def _connected_subsets(g: Multigraph, allowed: frozenset[int], max_size: int):
    """Yield every connected subset of `allowed` exactly once.

    Each subset is produced in the branch of its smallest member; within a
    branch, a vertex that finished its subtree is banned for later siblings,
    the classic duplicate-free connected-subgraph enumeration.
    """

    def grow(current: frozenset[int], frontier: frozenset[int], pool: frozenset[int]):
        banned: set[int] = set()
        for v in sorted(frontier):
            nxt = current | {v}
            yield nxt
            if len(nxt) < max_size:
                f2 = (frontier | frozenset(n for n in g.neighbors(v) if n in pool)) - nxt - banned - {v}
                yield from grow(nxt, f2, pool)
            banned.add(v)

    for anchor in sorted(allowed):
        base = frozenset([anchor])
        yield base
        if max_size <= 1:
            continue
        pool = frozenset(v for v in allowed if v > anchor)
        yield from grow(base, frozenset(n for n in g.neighbors(anchor) if n in pool), pool)


def is_minor_brute(
    h: Multigraph, g: Multigraph, cap: int = DEFAULT_MINOR_CAP
) -> tuple[bool, Optional[MinorWitness]]:
    """Decide h <= g (minor order) exhaustively; host size limited by `cap`."""
    if g.num_vertices() > cap:
        raise CapExceeded(f"host has {g.num_vertices()} vertices, cap is {cap}")
    if not h.is_simple():
        raise GraphError("patterns must be simple graphs")
    hs = h
    nh, ng = hs.num_vertices(), g.num_vertices()
    if nh > ng or hs.num_edges() > g.simplify().num_edges():
        return False, None
    if nh == 0:
        return True, MinorWitness({}, {})

    order = sorted(hs.vertices, key=lambda v: (-hs.degree(v), v))
    sets: dict[int, frozenset[int]] = {}
    available = frozenset(g.vertices)

    def place(i: int, available: frozenset[int]) -> bool:
        if i == len(order):
            return True
        x = order[i]
        remaining = len(order) - i - 1
        max_size = len(available) - remaining
        if max_size < 1:
            return False
        placed_nbrs = [y for y in hs.neighbors(x) if y in sets]
        for cand in _connected_subsets(g, available, max_size):
            ok = True
            for y in placed_nbrs:
                by = sets[y]
                if not any(w in by for v in cand for w in g.neighbors(v)):
                    ok = False
                    break
            if not ok:
                continue
            sets[x] = cand
            if place(i + 1, available - cand):
                return True
            del sets[x]
        return False

    if not place(0, available):
        return False, None

    branch_edges: dict[int, int] = {}
    for he, x, y in hs.edges():
        bx, by = sets[x], sets[y]
        ge = min(
            e
            for e, u, w in g.edges()
            if (u in bx and w in by) or (u in by and w in bx)
        )
        branch_edges[he] = ge
    witness = MinorWitness(dict(sets), branch_edges)
    check_witness(hs, g, witness)
    return True, witness
