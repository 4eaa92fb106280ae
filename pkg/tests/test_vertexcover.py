import random

import pytest

from gridtw.generators import segments_arrangement
from gridtw.grids import make_grid
from gridtw.multigraph import CapExceeded, Multigraph
from gridtw.planarize import intersection_graph
from gridtw.treewidth import TreeDecomposition, treewidth_upper
from gridtw.vertexcover import (
    grid_cover_demand,
    is_vertex_cover,
    vc_brute,
    vc_dp,
    winwin_vertex_cover,
)

from helpers import complete, cycle, path, random_graph, star


class TestBrute:
    def test_four_cycle(self):
        size, cover = vc_brute(cycle(4))
        assert size == 2
        assert is_vertex_cover(cycle(4), cover)

    def test_grid3(self):
        size, _ = vc_brute(make_grid(3).graph)
        assert size == 4

    def test_star(self):
        size, cover = vc_brute(star(5))
        assert size == 1 and cover == frozenset({0})

    def test_grid_cover_demand(self):
        for r in (2, 3, 4):
            size, _ = vc_brute(make_grid(r).graph)
            assert size == grid_cover_demand(r) == r * r // 2

    def test_cap(self):
        with pytest.raises(CapExceeded):
            vc_brute(complete(21))

    def test_loop_forces_vertex(self):
        g = Multigraph([0, 1, 2], {0: (0, 0), 1: (1, 2)})
        size, cover = vc_brute(g)
        assert 0 in cover and size == 2


class TestDp:
    def test_path_width_one(self):
        g = path(4)
        _, dec = treewidth_upper(g)
        size, cover = vc_dp(g, dec)
        assert size == 2
        assert is_vertex_cover(g, cover)

    def test_single_bag_degenerates_to_enumeration(self):
        g = complete(4)
        dec = TreeDecomposition(tree=Multigraph([0]), bags={0: frozenset(g.vertices)})
        size, _ = vc_dp(g, dec)
        assert size == vc_brute(g)[0] == 3

    def test_grid4_with_min_fill(self):
        g = make_grid(4).graph
        _, dec = treewidth_upper(g)
        size, cover = vc_dp(g, dec)
        assert size == 8
        assert is_vertex_cover(g, cover)

    def test_matches_brute_on_random_graphs(self):
        rng = random.Random(6)
        for _ in range(80):
            g = random_graph(rng, rng.randrange(2, 11), 0.4)
            _, dec = treewidth_upper(g)
            size_dp, cover = vc_dp(g, dec)
            size_bf, _ = vc_brute(g)
            assert size_dp == size_bf
            assert is_vertex_cover(g, cover)


class TestWinWin:
    def test_trivial_yes_for_large_budget(self):
        arr = segments_arrangement(seed=3, n=6)
        gb = intersection_graph(arr)
        from gridtw.geometry import xi as arr_xi

        out = winwin_vertex_cover(gb, arr_xi(arr), gb.num_vertices())
        assert out.answer == "YES"
        assert out.cover is not None and len(out.cover) <= gb.num_vertices()

    def test_agrees_with_brute_across_all_budgets(self):
        rng = random.Random(11)
        for trial in range(12):
            arr = segments_arrangement(seed=100 + trial, n=rng.randrange(3, 9))
            gb = intersection_graph(arr)
            from gridtw.geometry import xi as arr_xi

            xi_val = arr_xi(arr)
            size, _ = vc_brute(gb)
            for k in range(gb.num_vertices() + 1):
                out = winwin_vertex_cover(gb, xi_val, k)
                assert (out.answer == "YES") == (size <= k)
                if out.answer == "YES":
                    assert is_vertex_cover(gb, out.cover)
                    assert len(out.cover) <= k

    def test_monotone_in_budget(self):
        arr = segments_arrangement(seed=17, n=8)
        gb = intersection_graph(arr)
        from gridtw.geometry import xi as arr_xi

        xi_val = arr_xi(arr)
        answers = [winwin_vertex_cover(gb, xi_val, k).answer for k in range(gb.num_vertices() + 1)]
        if "YES" in answers:
            first = answers.index("YES")
            assert all(a == "YES" for a in answers[first:])

    def test_no_certificate_is_conservative(self):
        # The grid route must never fire unless the chain clears the bound.
        arr = segments_arrangement(seed=23, n=10)
        gb = intersection_graph(arr)
        from gridtw.geometry import xi as arr_xi

        xi_val = arr_xi(arr)
        for k in range(gb.num_vertices() + 1):
            out = winwin_vertex_cover(gb, xi_val, k)
            if out.route == "grid-no-certificate":
                assert out.chain.r_target >= out.r_min
                size, _ = vc_brute(gb)
                assert size > k
