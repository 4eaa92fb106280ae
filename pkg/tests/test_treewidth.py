import random

import pytest

from gridtw.grids import make_grid
from gridtw.models import contraction_model_from_classes, identity_contraction
from gridtw.multigraph import CapExceeded, Multigraph
from gridtw.treewidth import (
    TreeDecomposition,
    lift_decomposition,
    treewidth_exact,
    treewidth_lower,
    treewidth_upper,
    validate_decomposition,
)

from helpers import complete, cycle, path, random_connected_graph, random_graph


def random_c_contraction(rng, g, c):
    """Random partition into connected classes each inducing at most c edges."""
    labels = {v: v for v in g.vertices}

    def groups():
        out = {}
        for v, l in labels.items():
            out.setdefault(l, set()).add(v)
        return out

    def internal(cls):
        return sum(1 for _, u, w in g.edges() if u in cls and w in cls)

    tries = rng.randrange(0, g.num_edges() + 1) if g.num_edges() else 0
    eids = g.edge_ids()
    for _ in range(tries):
        e = rng.choice(eids)
        u, w = g.endpoints(e)
        if labels[u] == labels[w]:
            continue
        merged = groups()[labels[u]] | groups()[labels[w]]
        if internal(merged) > c:
            continue
        lu, lw = labels[u], labels[w]
        for v in list(labels):
            if labels[v] == lw:
                labels[v] = lu
    return contraction_model_from_classes(g, list(groups().values()), c=c)


class TestValidate:
    def test_single_bag(self):
        g = complete(4)
        d = TreeDecomposition(tree=Multigraph([0]), bags={0: frozenset(g.vertices)})
        assert validate_decomposition(g, d) is None
        assert d.width == 3

    def test_path_decomposition(self):
        g = path(4)
        d = TreeDecomposition(
            tree=Multigraph([0, 1, 2], {0: (0, 1), 1: (1, 2)}),
            bags={0: frozenset({0, 1}), 1: frozenset({1, 2}), 2: frozenset({2, 3})},
        )
        assert validate_decomposition(g, d) is None
        assert d.width == 1

    def test_missing_edge_detected(self):
        g = complete(3)
        d = TreeDecomposition(
            tree=Multigraph([0, 1], {0: (0, 1)}),
            bags={0: frozenset({0, 1}), 1: frozenset({1, 2})},
        )
        v = validate_decomposition(g, d)
        assert v is not None and v.condition == 2

    def test_broken_subtree_detected(self):
        g = path(3)
        d = TreeDecomposition(
            tree=Multigraph([0, 1, 2], {0: (0, 1), 1: (1, 2)}),
            bags={0: frozenset({0, 1}), 1: frozenset({1, 2}), 2: frozenset({0, 2})},
        )
        v = validate_decomposition(g, d)
        assert v is not None and v.condition == 3


class TestExact:
    def test_tree_width_one(self):
        g = random_connected_graph(random.Random(1), 7, extra_p=0.0)
        w, d = treewidth_exact(g)
        assert w == 1
        assert validate_decomposition(g, d) is None

    def test_grid3_width_three(self):
        g = make_grid(3).graph
        w, d = treewidth_exact(g, shortcut=False)
        assert w == 3
        assert validate_decomposition(g, d) is None

    def test_k5_width_four(self):
        w, d = treewidth_exact(complete(5), shortcut=False)
        assert w == 4
        assert validate_decomposition(complete(5), d) is None

    def test_cycle_width_two(self):
        w, _ = treewidth_exact(cycle(6), shortcut=False)
        assert w == 2

    def test_cap(self):
        with pytest.raises(CapExceeded):
            treewidth_exact(complete(17))

    def test_shortcut_agrees_with_dp(self):
        rng = random.Random(2)
        for _ in range(40):
            g = random_graph(rng, rng.randrange(2, 8), 0.45)
            w1, d1 = treewidth_exact(g, shortcut=True)
            w2, d2 = treewidth_exact(g, shortcut=False)
            assert w1 == w2
            assert validate_decomposition(g, d1) is None
            assert validate_decomposition(g, d2) is None


class TestBounds:
    def test_bounds_sandwich_exact(self):
        rng = random.Random(3)
        for _ in range(60):
            g = random_graph(rng, rng.randrange(2, 9), 0.4)
            w, _ = treewidth_exact(g, shortcut=False)
            lo = treewidth_lower(g)
            hi, d = treewidth_upper(g)
            assert lo <= w <= hi
            assert validate_decomposition(g, d) is None

    def test_upper_tree(self):
        g = path(6)
        hi, _ = treewidth_upper(g)
        assert hi == 1

    def test_upper_grid4_range(self):
        g = make_grid(4).graph
        hi, d = treewidth_upper(g)
        assert 4 <= hi <= 6
        assert validate_decomposition(g, d) is None

    def test_upper_clique_tight(self):
        hi, _ = treewidth_upper(complete(6))
        assert hi == 5

    def test_lower_k5(self):
        assert treewidth_lower(complete(5)) >= 4

    def test_lower_tree(self):
        assert treewidth_lower(path(7)) == 1

    def test_lower_grid3(self):
        lo = treewidth_lower(make_grid(3).graph)
        assert 2 <= lo <= 3


class TestGrid4Exact:
    def test_grid4_width_four(self):
        w, d = treewidth_exact(make_grid(4).graph)
        assert w == 4
        assert validate_decomposition(make_grid(4).graph, d) is None


class TestLift:
    def test_identity_contraction_keeps_width(self):
        g = make_grid(3).graph
        cm = identity_contraction(g)
        w, d = treewidth_exact(g)
        lifted = lift_decomposition(d, cm)
        assert lifted.width == w
        assert validate_decomposition(g, lifted) is None

    def test_randomized_bound(self):
        rng = random.Random(17)
        for _ in range(120):
            g = random_connected_graph(rng, rng.randrange(3, 10))
            c = rng.randrange(0, 4)
            cm, h, _ = random_c_contraction(rng, g, c)
            wh, dh = treewidth_exact(h)
            lifted = lift_decomposition(dh, cm)
            assert validate_decomposition(g, lifted) is None
            assert lifted.width <= (c + 1) * (wh + 1) - 1
            wg, _ = treewidth_exact(g)
            assert wg <= (c + 1) * (wh + 1) - 1
