import math

import networkx as nx
import pytest

from gonlab.errors import ContractError, GuardExceeded
from gonlab.graph import Multigraph, circulant, harary
from gonlab.scramble import (
    Scramble,
    TreeCutDecomposition,
    egg_cut_number,
    harary4_path_decomposition,
    hitting_number,
    path_decomposition,
    scramble_order,
    tcd_tally,
    tcd_width,
)


def test_eggs_must_be_connected():
    G = circulant(6, [1])
    with pytest.raises(ContractError):
        Scramble(G, [[0, 2]])
    with pytest.raises(ContractError):
        Scramble(G, [[]])
    Scramble(G, [[0, 1, 2]])


def test_hitting_number_small():
    G = circulant(6, [1])
    S = Scramble(G, [[0, 1], [1, 2], [3, 4], [4, 5]])
    assert hitting_number(S) == 2
    assert hitting_number(Scramble.singletons(G)) == 6


def test_hitting_guard():
    G = circulant(10, [1])
    with pytest.raises(GuardExceeded):
        hitting_number(Scramble.singletons(G), guard=5)


def test_egg_cut_is_edge_connectivity_for_singletons():
    for G in (harary(4, 9), harary(3, 8), circulant(7, [1])):
        S = Scramble.singletons(G)
        H = nx.Graph(e[:2] for e in G.edges())
        assert egg_cut_number(S) == nx.edge_connectivity(H)


def test_egg_cut_counts_multiplicity():
    G = Multigraph(3, [(0, 1, 3), (1, 2, 2)])
    S = Scramble(G, [[0], [2]])
    assert egg_cut_number(S) == 2


def test_overlapping_eggs_have_no_cut():
    G = circulant(5, [1])
    S = Scramble(G, [[0, 1], [1, 2]])
    assert egg_cut_number(S) == math.inf
    assert scramble_order(S) == 1


def test_vertex_cut_variant():
    G = circulant(8, [1])
    S = Scramble(G, [[0], [4]])
    assert egg_cut_number(S) == 2
    assert egg_cut_number(S, vertex_cuts=True) == 2
    adjacent = Scramble(G, [[0], [1]])
    assert egg_cut_number(adjacent, vertex_cuts=True) == math.inf


def test_decomposition_validation():
    with pytest.raises(ContractError):
        TreeCutDecomposition(circulant(3, [1]), (0, 1, 2))
    with pytest.raises(ContractError):
        path_decomposition(2, [0, 5])


def test_single_node_width():
    G = harary(4, 7)
    dec = path_decomposition(1, [0] * 7)
    assert tcd_width(G, dec) == 7


def test_star_tree_tunneling():
    # a path graph spread over a star: centre node 0 carries the edge 1-2 through it
    G = Multigraph(3, [(0, 1), (1, 2)])
    star = Multigraph(3, [(0, 1), (0, 2)])
    t = tcd_tally(G, TreeCutDecomposition(star, (1, 1, 2)))
    assert t.tunnels == [1, 0, 0]
    assert t.nodes == [1, 2, 1]
    assert t.width == 2


def test_harary_path_decomposition_h4_14():
    G = harary(4, 14)
    t = tcd_tally(G, harary4_path_decomposition(14))
    assert len(t.nodes) == 5
    assert set(t.links.values()) == {6}
    assert {t.nodes[0], t.nodes[-1]} == {2, 3}
    assert t.nodes[1:-1] == [6, 6, 6]
    assert t.width == 6


def test_harary_path_decomposition_small():
    # K5 split 3 | 2: six edges cross the only link
    assert tcd_width(harary(4, 5), harary4_path_decomposition(5)) == 6
    with pytest.raises(ContractError):
        harary4_path_decomposition(4)
