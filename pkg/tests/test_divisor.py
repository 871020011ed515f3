import numpy as np
import pytest
from hypothesis import given, strategies as st

from gonlab.divisor import (
    Divisor,
    FiringScript,
    apply_script,
    fire_set,
    fire_vertex,
    is_legal_set_firing,
    outdegree,
    parse_divisor,
)
from gonlab.errors import ContractError, DivisorSyntaxError
from gonlab.graph import circulant, harary

from strategies import graph_and_divisor


def test_vector_arithmetic():
    D = Divisor([1, -2, 3])
    assert D.degree == 2
    assert not D.is_effective
    assert D.support == frozenset({0, 2})
    assert D + Divisor([0, 2, 0]) == Divisor([1, 0, 3])
    assert -D == Divisor([-1, 2, -3])
    with pytest.raises(ContractError):
        D + Divisor([1, 1])


def test_sparse_round_trip():
    D = Divisor([0, 3, 0, -1])
    assert D.to_sparse() == "v2=3,v4=-1"
    assert parse_divisor(D.to_sparse(), 4) == D
    assert Divisor.zeros(3).to_sparse() == "0"
    assert parse_divisor("0", 3) == Divisor.zeros(3)


def test_parse_dense():
    assert parse_divisor("3, 1, 0", 3) == Divisor([3, 1, 0])


@pytest.mark.parametrize("text", ["", "1,2", "v0=1", "v4=1", "v1=x", "a,b,c", "v1=1,2"])
def test_parse_errors(text):
    with pytest.raises(DivisorSyntaxError):
        parse_divisor(text, 3)


def test_rotate():
    assert Divisor([1, 2, 0, 0]).rotate(1) == Divisor([0, 1, 2, 0])


def test_fire_vertex_on_cycle():
    G = circulant(5, [1])
    D = fire_vertex(G, Divisor([2, 0, 0, 0, 0]), 0)
    assert D == Divisor([0, 1, 0, 0, 1])


def test_subset_firing_loses_outdegree():
    G = harary(4, 11)
    S = {0, 1, 2}
    D = Divisor([3] * 11)
    E = fire_set(G, D, S)
    for v in S:
        assert E[v] == 3 - outdegree(G, S, v)
    assert E.degree == D.degree
    assert is_legal_set_firing(G, D, S)
    assert not is_legal_set_firing(G, Divisor.zeros(11), S)


@given(graph_and_divisor(), st.data())
def test_set_firing_is_script_of_indicator(gd, data):
    G, D = gd
    S = data.draw(st.sets(st.integers(0, G.n - 1)))
    assert fire_set(G, D, S) == apply_script(G, D, FiringScript.indicator(G.n, S))


@given(graph_and_divisor())
def test_firing_everything_is_identity(gd):
    G, D = gd
    assert fire_set(G, D, range(G.n)) == D


def test_apply_script_matches_laplacian():
    G = harary(4, 7)
    s = FiringScript([1, 0, 2, 0, 0, -1, 0])
    D = Divisor.zeros(7)
    expect = -(G.laplacian @ np.array(s.to_list()))
    assert apply_script(G, D, s).to_list() == expect.tolist()
