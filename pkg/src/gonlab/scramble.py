"""Scramble orders and tree-cut decomposition widths.

Both are evaluated for a *given* scramble or decomposition; maximising or
minimising over all of them is not attempted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx

from .errors import ContractError, GuardExceeded
from .graph import Multigraph

__all__ = [
    "Scramble",
    "hitting_number",
    "egg_cut_number",
    "scramble_order",
    "TreeCutDecomposition",
    "TcdTally",
    "tcd_tally",
    "tcd_width",
    "path_decomposition",
    "harary4_path_decomposition",
]


def _induces_connected(G: Multigraph, egg: frozenset[int]) -> bool:
    start = next(iter(egg))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w, _ in G.neighbors[u]:
            if w in egg and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(egg)


class Scramble:
    """A family of non-empty vertex sets ("eggs"), each inducing a connected subgraph."""

    def __init__(self, G: Multigraph, eggs: Iterable[Iterable[int]]):
        self.G = G
        out = []
        for i, egg in enumerate(eggs):
            egg = frozenset(int(v) for v in egg)
            if not egg:
                raise ContractError(f"egg {i} is empty")
            if not all(0 <= v < G.n for v in egg):
                raise ContractError(f"egg {i} has a vertex outside the graph")
            if not _induces_connected(G, egg):
                raise ContractError(f"egg {i} does not induce a connected subgraph")
            out.append(egg)
        if not out:
            raise ContractError("a scramble needs at least one egg")
        self.eggs: tuple[frozenset[int], ...] = tuple(out)

    @classmethod
    def singletons(cls, G: Multigraph) -> "Scramble":
        return cls(G, ([v] for v in range(G.n)))

    def __len__(self) -> int:
        return len(self.eggs)


def hitting_number(S: Scramble, guard: int = 256) -> int:
    """Smallest number of vertices meeting every egg (branch and bound)."""
    if len(S.eggs) > guard:
        raise GuardExceeded(f"{len(S.eggs)} eggs exceeds the hitting-set guard of {guard}")
    masks = sorted({sum(1 << v for v in egg) for egg in S.eggs}, key=lambda m: bin(m).count("1"))
    best = len(masks)

    def search(unhit: list[int], size: int) -> None:
        nonlocal best
        if not unhit:
            best = min(best, size)
            return
        if size + 1 >= best:
            return
        egg = unhit[0]
        m = egg
        while m:
            low = m & -m
            search([e for e in unhit if not e & low], size + 1)
            m ^= low

    search(masks, 0)
    return best


def _pair_cut(G: Multigraph, A: frozenset[int], B: frozenset[int], vertex_cuts: bool) -> float:
    F = nx.DiGraph()
    s, t = ("egg", 0), ("egg", 1)

    def node(v):
        if v in A:
            return s
        if v in B:
            return t
        return v

    if not vertex_cuts:
        for u, v, m in G.edges():
            a, b = node(u), node(v)
            if a == b:
                continue
            for x, y in ((a, b), (b, a)):
                cap = F.get_edge_data(x, y, {"capacity": 0})["capacity"]
                F.add_edge(x, y, capacity=cap + m)
    else:
        for u, v, _ in G.edges():
            a, b = node(u), node(v)
            if a == b:
                continue
            if {a, b} == {s, t}:
                return math.inf
            for x, y in ((a, b), (b, a)):
                src = x if x in (s, t) else ("out", x)
                dst = y if y in (s, t) else ("in", y)
                F.add_edge(src, dst)  # no capacity attribute: unbounded
        for v in range(G.n):
            if v not in A and v not in B:
                F.add_edge(("in", v), ("out", v), capacity=1)
    if s not in F or t not in F:
        return 0
    return nx.maximum_flow_value(F, s, t)


def egg_cut_number(S: Scramble, vertex_cuts: bool = False) -> float:
    """Fewest edges whose removal separates some pair of disjoint eggs.

    Returns ``math.inf`` when no two eggs are disjoint.  ``vertex_cuts=True``
    counts deleted vertices (outside both eggs) instead of edges; it is kept
    for comparison only.
    """
    best = math.inf
    for A, B in combinations(S.eggs, 2):
        if A & B:
            continue
        best = min(best, _pair_cut(S.G, A, B, vertex_cuts))
    return best


def scramble_order(S: Scramble, vertex_cuts: bool = False) -> float:
    return min(hitting_number(S), egg_cut_number(S, vertex_cuts))


@dataclass(frozen=True)
class TreeCutDecomposition:
    """A tree on nodes ``0..m-1`` plus the node holding each graph vertex."""

    tree: Multigraph
    assignment: tuple[int, ...]

    def __post_init__(self):
        T = self.tree
        object.__setattr__(self, "assignment", tuple(int(a) for a in self.assignment))
        if not T.is_simple or T.edge_count != T.n - 1:
            raise ContractError("decomposition tree must be a simple tree")
        from .graph import is_connected

        if not is_connected(T):
            raise ContractError("decomposition tree must be connected")
        if any(not 0 <= a < T.n for a in self.assignment):
            raise ContractError("assignment refers to a node outside the tree")


@dataclass
class TcdTally:
    width: int
    links: dict[tuple[int, int], int]
    nodes: list[int]
    tunnels: list[int]

    def to_dict(self) -> dict:
        return {
            "width": self.width,
            "links": [{"nodes": [a + 1, b + 1], "edges": c} for (a, b), c in sorted(self.links.items())],
            "nodes": [{"node": i + 1, "value": v, "tunneling": t} for i, (v, t) in enumerate(zip(self.nodes, self.tunnels))],
        }


def tcd_tally(G: Multigraph, dec: TreeCutDecomposition) -> TcdTally:
    """Per-link edge counts and per-node values of a tree-cut decomposition.

    Each graph edge adds its multiplicity along the tree path between its
    endpoints' nodes; nodes strictly inside that path count it as tunneling.
    """
    X = dec.assignment
    if len(X) != G.n:
        raise ContractError(f"assignment covers {len(X)} vertices, graph has {G.n}")
    T = dec.tree
    m = T.n
    parent = [-1] * m
    depth = [0] * m
    order = [0]
    seen = [False] * m
    seen[0] = True
    for u in order:
        for w, _ in T.neighbors[u]:
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                depth[w] = depth[u] + 1
                order.append(w)

    def lca(a: int, b: int) -> int:
        while depth[a] > depth[b]:
            a = parent[a]
        while depth[b] > depth[a]:
            b = parent[b]
        while a != b:
            a, b = parent[a], parent[b]
        return a

    diff = [0] * m
    ends = [0] * m
    for u, v, mult in G.edges():
        a, b = X[u], X[v]
        if a == b:
            continue
        diff[a] += mult
        diff[b] += mult
        diff[lca(a, b)] -= 2 * mult
        ends[a] += mult
        ends[b] += mult
    # subtree sums give the load on the link to the parent
    load = diff[:]
    for x in reversed(order[1:]):
        load[parent[x]] += load[x]
    links = {}
    incident = [0] * m
    for x in order[1:]:
        p = parent[x]
        links[(min(x, p), max(x, p))] = load[x]
        incident[x] += load[x]
        incident[p] += load[x]
    tunnels = [(incident[w] - ends[w]) // 2 for w in range(m)]
    counts = [0] * m
    for a in X:
        counts[a] += 1
    nodes = [counts[w] + tunnels[w] for w in range(m)]
    width = max(list(links.values()) + nodes)
    return TcdTally(width, links, nodes, tunnels)


def tcd_width(G: Multigraph, dec: TreeCutDecomposition) -> int:
    return tcd_tally(G, dec).width


def path_decomposition(n_nodes: int, assignment: Sequence[int]) -> TreeCutDecomposition:
    path = Multigraph(n_nodes, [(i, i + 1) for i in range(n_nodes - 1)])
    return TreeCutDecomposition(path, tuple(assignment))


def harary4_path_decomposition(n: int) -> TreeCutDecomposition:
    """Path of ``ceil(n/3)`` nodes holding ``v1 v2 v3``, ``v4 v5 v6``, ... in turn."""
    if n < 5:
        raise ContractError("harary4_path_decomposition needs n >= 5")
    return path_decomposition(-(-n // 3), [v // 3 for v in range(n)])
