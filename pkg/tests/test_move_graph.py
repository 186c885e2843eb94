"""Tests for the move graph, its components and family certificates"""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from domlab.core.kernel import Move, is_secure_dominating, legal_moves
from domlab.core.move_graph import (
    FamilyCertificate,
    UnionFind,
    build_move_graph,
    verify_family,
    verify_family_sets,
)
from domlab.errors import CertificateError, VertexSetError
from domlab.graph.bitset import from_members
from domlab.graph.spec import generate

from .strategies import small_graphs


class TestUnionFind:
    def test_components_and_labels(self):
        uf = UnionFind(5)
        uf.union(3, 4)
        uf.union(0, 2)
        uf.union(4, 3)
        assert uf.num_components == 3
        assert uf.labels() == [0, 1, 0, 2, 2]

    def test_lower_root_wins(self):
        uf = UnionFind(3)
        uf.union(2, 1)
        assert uf.find(2) == 1


class TestPath4:
    @pytest.fixture
    def mg(self, path4):
        return build_move_graph(path4, 2)

    def test_nodes_ascending(self, mg):
        assert mg.nodes == (0b0101, 0b0110, 0b1001, 0b1010)

    def test_edges_form_a_four_cycle(self, mg):
        assert mg.edges == ((1, 2), (0, 3), (0, 3), (1, 2))
        assert mg.component_count == 1

    def test_every_node_secure(self, mg):
        assert all(mg.secure)
        assert mg.secure_components() == [0]

    def test_slides_that_break_domination(self, mg):
        # from {a_1, a_3} the slide a_3 -> a_2 leaves a_4 uncovered
        assert not mg.all_slides_dominating[0]

    def test_responses_and_moves(self, mg):
        origin = mg.node_id(from_members([1, 3]))
        (response,) = mg.responses(origin, 2)
        assert mg.nodes[response] == from_members([1, 2])
        assert mg.move_between(origin, response) == Move(3, 2)

    def test_certificate(self, mg):
        certificate = mg.certificate(0)
        assert certificate == FamilyCertificate(2, (0,), 0b0101, 4)
        assert verify_family(mg, certificate)
        assert certificate.to_dict(mg.graph.labels)["representative_labels"] == "{a_1, a_3}"

    def test_lookup_errors(self, mg):
        with pytest.raises(VertexSetError):
            mg.node_id(from_members([0, 1]))
        with pytest.raises(CertificateError):
            mg.members(1)

    def test_certificate_for_other_size(self, mg):
        with pytest.raises(CertificateError):
            verify_family(mg, FamilyCertificate(3, (0,), 0b0111, 1))

    def test_wrong_size_claim_fails(self, mg):
        assert not verify_family(mg, FamilyCertificate(2, (0,), 0b0101, 3))


def test_size_zero_rejected(path4):
    with pytest.raises(ValueError):
        build_move_graph(path4, 0)


def test_house9_size_three_has_unanswerable_attacks(house9):
    mg = build_move_graph(house9, 3)
    stuck = mg.node_id(house9.vertex_set("b_1,b_3,b_4"))
    assert mg.unanswerable(stuck) == house9.vertex_set("b_2,b_5")
    assert not mg.secure[stuck]
    assert mg.secure_components() == []


def test_family_sets_reject_open_family(paw2):
    mg = build_move_graph(paw2, 3)
    assert not verify_family_sets(paw2, [from_members([0, 1, 2])])
    assert not verify_family_sets(paw2, [])
    for cid in mg.secure_components():
        assert verify_family_sets(paw2, [mg.nodes[i] for i in mg.members(cid)])


def test_secure_components_match_first_principles():
    g = generate("house")
    for k in range(2, 5):
        mg = build_move_graph(g, k)
        for cid in mg.secure_components():
            assert verify_family(mg, mg.certificate(cid))


@given(small_graphs(max_vertices=7), st.integers(min_value=1, max_value=7))
def test_flags_match_predicates(g, k):
    mg = build_move_graph(g, k)
    for i, s in enumerate(mg.nodes):
        assert mg.secure[i] == is_secure_dominating(g, s)
        for attack in range(g.n):
            if s >> attack & 1:
                continue
            expected = sorted(mg.index[m.apply(s)] for m in legal_moves(g, s, attack))
            assert mg.responses(i, attack) == expected


@given(small_graphs(max_vertices=7), st.integers(min_value=1, max_value=7))
def test_adjacency_is_symmetric(g, k):
    mg = build_move_graph(g, k)
    for i, nbrs in enumerate(mg.edges):
        for j in nbrs:
            assert i in mg.edges[j]
