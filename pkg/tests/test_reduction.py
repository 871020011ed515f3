import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gonlab import _kernels as K
from gonlab.divisor import Divisor, apply_script, fire_set
from gonlab.errors import ContractError, GuardExceeded
from gonlab.graph import Multigraph, circulant, harary
from gonlab.reduction import RankTable, dhar_burn, has_positive_rank, is_reduced, is_winnable, q_reduce, rank

from oracles import LatticeOracle
from strategies import connected_multigraphs, graph_and_divisor


def test_dhar_burns_everything_when_reduced():
    G = circulant(5, [1])
    assert dhar_burn(G, Divisor([0, 1, 0, 0, 0]), 0) == frozenset()


def test_dhar_finds_legal_set():
    G = circulant(5, [1])
    # v2 and v3 can fire together without debt
    assert dhar_burn(G, Divisor([0, 1, 1, 0, 0]), 0) == frozenset({1, 2})


def test_dhar_rejects_debt():
    with pytest.raises(ContractError):
        dhar_burn(circulant(4, [1]), Divisor([0, -1, 0, 0]), 0)


def test_unburnt_set_is_legal():
    G = harary(4, 9)
    D = Divisor([0, 2, 2, 1, 0, 3, 0, 1, 2])
    S = dhar_burn(G, D, 0)
    assert S
    assert fire_set(G, D, S).is_effective


def test_reduce_requires_connected():
    with pytest.raises(ContractError):
        q_reduce(circulant(6, [2]), Divisor.zeros(6), 0)


@settings(max_examples=150, deadline=None)
@given(graph_and_divisor(), st.data())
def test_q_reduce_properties(gd, data):
    G, D = gd
    q = data.draw(st.integers(0, G.n - 1))
    R, script = q_reduce(G, D, q, witness=True)
    assert apply_script(G, D, script) == R
    assert is_reduced(G, R, q)
    assert q_reduce(G, R, q) == R
    assert LatticeOracle(G).equivalent(D, R)


@settings(max_examples=150, deadline=None)
@given(graph_and_divisor(lo=-4, hi=5))
def test_kernel_matches_reference(gd):
    G, D = gd
    indptr, nbr, mult = G.csr
    work = D.to_numpy()
    K.reduce_offsink(indptr, nbr, mult, work, 0, K.bfs_layers(indptr, nbr, 0, G.n))
    assert work.tolist() == q_reduce(G, D, 0).to_list()


@settings(max_examples=100, deadline=None)
@given(graph_and_divisor(lo=0, hi=3))
def test_kernel_dhar_matches_reference(gd):
    G, D = gd
    indptr, nbr, mult = G.csr
    n = G.n
    burnt = np.empty(n, dtype=np.bool_)
    hits = np.empty(n, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    left = K.dhar(indptr, nbr, mult, D.to_numpy(), 0, burnt, hits, stack)
    S = dhar_burn(G, D, 0)
    assert left == len(S)
    assert {v for v in range(n) if not burnt[v]} == S


@settings(max_examples=100, deadline=None)
@given(graph_and_divisor(), st.data())
def test_winnability_is_sink_independent(gd, data):
    G, D = gd
    q = data.draw(st.integers(0, G.n - 1))
    assert is_winnable(G, D, q) == is_winnable(G, D, 0) == LatticeOracle(G).winnable(D)


def test_rank_on_trees_is_degree():
    T = Multigraph(4, [(0, 1), (1, 2), (1, 3)])
    assert rank(T, Divisor([2, 0, 1, 0])) == 3
    assert rank(T, Divisor([-1, 0, 0, 0])) == -1


def test_rank_on_cycle():
    C = circulant(5, [1])
    assert rank(C, Divisor([1, 0, 0, 0, 0])) == 0
    assert rank(C, Divisor([2, 0, 0, 0, 0])) == 1
    assert rank(C, Divisor([1, 0, 0, 0, 1])) == 1


def test_rank_guard():
    T = Multigraph(2, [(0, 1)])
    with pytest.raises(GuardExceeded):
        rank(T, Divisor([6, 0]), max_rank=4)


@settings(max_examples=60, deadline=None)
@given(graph_and_divisor(max_n=5, lo=-1, hi=2))
def test_rank_matches_lattice_oracle(gd):
    G, D = gd
    if D.degree > 4:
        return
    assert rank(G, D) == LatticeOracle(G).rank(D)


@settings(max_examples=60, deadline=None)
@given(graph_and_divisor(max_n=5, lo=-1, hi=2))
def test_positive_rank_agrees_with_rank(gd):
    G, D = gd
    if D.degree > 4:
        return
    assert has_positive_rank(G, D) == (rank(G, D) >= 1)


def test_universal_divisor_on_h4_11_has_positive_rank():
    G = harary(4, 11)
    D = Divisor([1, 3, 1, 0, 0, 0, 0, 0, 1, 3, 1])
    assert has_positive_rank(G, D)
    assert not has_positive_rank(G, Divisor([1, 3, 1, 0, 0, 0, 0, 0, 1, 3, 0]))


class TestRankTable:
    def test_class_count_is_tree_count(self):
        G = harary(4, 7)
        T = RankTable(G)
        L = G.laplacian[1:, 1:].astype(float)
        assert T.class_count == round(np.linalg.det(L))

    def test_matches_reference_rank(self):
        G = circulant(6, [1, 3])
        T = RankTable(G)
        for i in range(T.class_count):
            for d in range(-1, 4):
                D = T.representative(i, d)
                assert T.rank(D) == rank(G, D)

    def test_riemann_roch(self):
        G = Multigraph(4, [(0, 1, 2), (1, 2), (2, 3, 3), (0, 3)])
        T = RankTable(G)
        g = G.genus
        Kd = T.canonical()
        for d in range(0, 2 * g - 1):
            for i in range(T.class_count):
                D = T.representative(i, d)
                assert T.rank(D) - T.rank(Kd - D) == d - g + 1

    def test_guard(self):
        with pytest.raises(GuardExceeded):
            RankTable(harary(4, 20), guard=1000)

    @settings(max_examples=40, deadline=None)
    @given(connected_multigraphs(max_n=5, max_mult=2))
    def test_index_is_class_invariant(self, G):
        T = RankTable(G)
        o = LatticeOracle(G)
        for i in range(T.class_count):
            D = T.representative(i, 1)
            assert T.index(D) == i
            moved = fire_set(G, D, [G.n - 1])
            assert T.index(moved) == i
            assert o.equivalent(D, moved)
