import pytest

from gonlab.errors import ContractError, GraphSpecError, GuardExceeded
from gonlab.graph import (
    CirculantSpec,
    Multigraph,
    alpha_harary,
    circulant,
    delete_and_pair,
    harary,
    harary_deletion_pairing,
    harary_spec,
    is_connected,
    max_independent_set,
    parse_edge_list,
    parse_graph,
)


def test_multigraph_basics():
    G = Multigraph(3, [(0, 1, 2), (1, 2)])
    assert G.valence == (2, 3, 1)
    assert G.edge_count == 3
    assert G.genus == 1
    assert not G.is_simple
    assert G.laplacian.sum(axis=1).tolist() == [0, 0, 0]
    assert list(G.edges()) == [(0, 1, 2), (1, 2, 1)]


def test_parallel_edges_accumulate():
    assert Multigraph(2, [(0, 1), (1, 0)]).multiplicity(0, 1) == 2


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 3)], [(0, 1, -1)]])
def test_bad_edges(edges):
    with pytest.raises(ContractError):
        Multigraph(3, edges)


def test_circulant_adjacency():
    G = circulant(8, [1, 4])
    assert G.valence == (3,) * 8
    assert G.multiplicity(0, 4) == 1
    assert G.multiplicity(0, 7) == 1
    assert G.key == "ci:8:1,4"


def test_complete_graph_as_circulant():
    G = circulant(5, [1, 2])
    assert G.edge_count == 10 and G.is_simple


def test_circulant_spec_validation():
    with pytest.raises(ContractError):
        CirculantSpec(6, (4,))
    with pytest.raises(ContractError):
        CirculantSpec(6, (2, 1))
    assert not CirculantSpec(6, (2,)).connected


def test_harary_families():
    assert harary_spec(4, 11).J == (1, 2)
    assert harary_spec(3, 8).J == (1, 4)
    assert harary(5, 10).valence == (5,) * 10
    with pytest.raises(ContractError):
        harary(3, 9)
    with pytest.raises(ContractError):
        harary(6, 6)


def test_equality_ignores_circulant_tag():
    a = circulant(5, [1])
    b = Multigraph(5, [(i, (i + 1) % 5) for i in range(5)])
    assert a == b and hash(a) == hash(b)


def test_connectivity():
    assert is_connected(circulant(7, [2]))
    assert not is_connected(circulant(8, [2]))


def test_max_independent_set_cycle():
    S = max_independent_set(circulant(7, [1]))
    assert len(S) == 3
    assert S == frozenset({0, 2, 4})


def test_max_independent_set_guard():
    with pytest.raises(GuardExceeded):
        max_independent_set(circulant(70, [1]), guard=64)


@pytest.mark.parametrize("k,n", [(2, 9), (4, 13), (6, 20), (8, 30)])
def test_alpha_harary_matches_exact(k, n):
    assert alpha_harary(k, n) == len(max_independent_set(harary(k, n)))


def test_delete_and_pair_recovers_smaller_harary():
    for n in range(6, 15):
        H = delete_and_pair(harary(4, n + 1), 0, harary_deletion_pairing(4, n + 1))
        assert H == harary(4, n)


def test_delete_and_pair_rejects_bad_pairing():
    G = harary(4, 8)
    with pytest.raises(ContractError):
        delete_and_pair(G, 0, [(1, 2)])  # leaves v8 and v7 unmatched


def test_parse_edge_list():
    G = parse_edge_list("# triangle with a doubled edge\nn 4\n1 2 2\n2 3\n3 1\n")
    assert G.n == 4 and G.multiplicity(0, 1) == 2 and G.valence[3] == 0
    with pytest.raises(GraphSpecError):
        parse_edge_list("1 x\n")


def test_parse_graph(tmp_path):
    assert parse_graph("harary:4,11") == harary(4, 11)
    assert parse_graph("ci:9:1,3").circulant == CirculantSpec(9, (1, 3))
    f = tmp_path / "g.txt"
    f.write_text("1 2\n2 3\n")
    assert parse_graph(f"edges:{f}").n == 3
    for bad in ("k5", "ci:5:3", "harary:3,9", f"edges:{tmp_path}/missing"):
        with pytest.raises(GraphSpecError):
            parse_graph(bad)
