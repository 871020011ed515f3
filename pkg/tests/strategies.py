from hypothesis import strategies as st

from gonlab.divisor import Divisor
from gonlab.graph import Multigraph


@st.composite
def connected_multigraphs(draw, max_n=6, max_mult=3):
    n = draw(st.integers(1, max_n))
    edges = []
    for v in range(1, n):
        edges.append((draw(st.integers(0, v - 1)), v, draw(st.integers(1, max_mult))))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if pairs:
        for u, v in draw(st.lists(st.sampled_from(pairs), max_size=n + 2)):
            edges.append((u, v, 1))
    return Multigraph(n, edges)


@st.composite
def graph_and_divisor(draw, max_n=6, lo=-3, hi=4):
    G = draw(connected_multigraphs(max_n))
    D = Divisor(draw(st.lists(st.integers(lo, hi), min_size=G.n, max_size=G.n)))
    return G, D
