"""Tests for domination predicates, legal moves and the pruned enumerator"""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from domlab.errors import OccupiedVertexError, ResourceCapExceeded, VertexSetError
from domlab.graph.bitset import from_members
from domlab.graph.generators import atlas_graphs, random_connected
from domlab.graph.spec import generate
from domlab.core.kernel import (
    Move,
    covered,
    enumerate_dominating,
    is_dominating,
    is_secure_dominating,
    legal_moves,
    naive_dominating,
)

from .strategies import small_graphs


class TestDominating:
    def test_path4_pairs(self, path4):
        assert is_dominating(path4, from_members([1, 2]))
        assert not is_dominating(path4, from_members([0, 1]))

    def test_covered_is_union_of_closed_neighbourhoods(self, path4):
        assert covered(path4, from_members([0])) == from_members([0, 1])

    def test_foreign_vertex_rejected(self, path4):
        with pytest.raises(VertexSetError):
            is_dominating(path4, from_members([6]))

    def test_whole_vertex_set_is_secure(self, house9):
        assert is_secure_dominating(house9, house9.full)

    def test_triangle_of_paw2_is_not_secure(self, paw2):
        triangle = from_members([0, 1, 2])
        assert is_dominating(paw2, triangle)
        assert not is_secure_dominating(paw2, triangle)


class TestLegalMoves:
    def test_single_response_on_path4(self, path4):
        assert legal_moves(path4, from_members([1, 3]), 2) == [Move(3, 2)]

    def test_every_guard_may_respond_on_intro6(self):
        g = generate("intro6")
        start = g.vertex_set("a,b,c")
        moves = legal_moves(g, start, g.vertex("p"))
        assert [m.source for m in moves] == [g.vertex("a"), g.vertex("b"), g.vertex("c")]

    def test_leaf_attack_on_paw2_triangle_has_no_answer(self, paw2):
        assert legal_moves(paw2, from_members([0, 1, 2]), paw2.vertex("l_1")) == []

    def test_attack_on_guarded_vertex(self, path4):
        with pytest.raises(OccupiedVertexError):
            legal_moves(path4, from_members([1, 3]), 1)

    def test_apply_slides_one_guard(self):
        assert Move(3, 2).apply(from_members([1, 3])) == from_members([1, 2])


class TestEnumeration:
    def test_path4_size_two(self, path4):
        expected = [from_members(s) for s in ([0, 2], [1, 2], [0, 3], [1, 3])]
        assert enumerate_dominating(path4, 2) == sorted(expected)

    def test_no_dominating_singleton_on_path4(self, path4):
        assert enumerate_dominating(path4, 1) == []

    @pytest.mark.parametrize("k", [-1, 0, 5])
    def test_sizes_outside_range(self, path4, k):
        assert enumerate_dominating(path4, k) == []

    def test_cap(self):
        with pytest.raises(ResourceCapExceeded) as info:
            enumerate_dominating(generate("complete:6"), 3, cap=10)
        assert (info.value.k, info.value.cap) == (3, 10)

    def test_cap_not_hit_at_exact_count(self):
        # K_5 has exactly ten 3-sets, all dominating
        assert len(enumerate_dominating(generate("complete:5"), 3, cap=10)) == 10

    def test_matches_naive_on_atlas(self):
        for g in atlas_graphs(6):
            for k in range(1, g.n + 1):
                assert enumerate_dominating(g, k) == naive_dominating(g, k), (g.name, k)

    @pytest.mark.slow
    def test_matches_naive_up_to_order_eight(self):
        graphs = list(atlas_graphs(7)) + [random_connected(8, p, seed=s) for p in (0.2, 0.4, 0.6) for s in range(10)]
        for g in graphs:
            for k in range(1, g.n + 1):
                assert enumerate_dominating(g, k) == naive_dominating(g, k), (g.name, k)

    @given(small_graphs(max_vertices=8), st.integers(min_value=1, max_value=8))
    def test_matches_naive_on_random_graphs(self, g, k):
        assert enumerate_dominating(g, k) == naive_dominating(g, k)

    @given(small_graphs(max_vertices=8), st.integers(min_value=1, max_value=8))
    def test_every_set_has_size_k_and_dominates(self, g, k):
        for s in enumerate_dominating(g, k):
            assert bin(s).count("1") == k
            assert is_dominating(g, s)
