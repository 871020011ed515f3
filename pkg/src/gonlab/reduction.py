"""Dhar's burning algorithm, q-reduction, winnability and rank.

This module is plain Python and is the reference everything else checks
against; the compiled kernels in :mod:`gonlab._kernels` are tested against
it, never the other way round.
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Iterable

import numpy as np

from . import _kernels as K
from .divisor import Divisor, FiringScript, _check_len
from .errors import ContractError, GuardExceeded
from .graph import Multigraph, is_connected

__all__ = [
    "dhar_burn",
    "q_reduce",
    "is_reduced",
    "is_winnable",
    "rank",
    "has_positive_rank",
    "RankTable",
]


def _require_connected(G: Multigraph) -> None:
    ok = G.__dict__.get("_connected_cache")
    if ok is None:
        ok = G.__dict__["_connected_cache"] = is_connected(G)
    if not ok:
        raise ContractError("graph must be connected")


def _distances(G: Multigraph, q: int) -> list[int]:
    dist = [-1] * G.n
    dist[q] = 0
    frontier = [q]
    while frontier:
        nxt = []
        for u in frontier:
            for w, _ in G.neighbors[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        frontier = nxt
    return dist


def _burn(G: Multigraph, chips: list[int], q: int) -> tuple[list[bool], list[int]]:
    burnt = [False] * G.n
    hits = [0] * G.n
    burnt[q] = True
    stack = [q]
    nbrs = G.neighbors
    while stack:
        u = stack.pop()
        for w, m in nbrs[u]:
            if not burnt[w]:
                hits[w] += m
                if hits[w] > chips[w]:
                    burnt[w] = True
                    stack.append(w)
    return burnt, hits


def dhar_burn(G: Multigraph, D: Divisor, q: int) -> frozenset[int]:
    """Return the set of vertices left unburnt by a fire started at ``q``.

    It is the largest set avoiding ``q`` that can fire without debt.
    """
    _check_len(G, D)
    if any(D[v] < 0 for v in range(G.n) if v != q):
        raise ContractError("dhar_burn needs D(v) >= 0 away from q")
    burnt, _ = _burn(G, list(D), q)
    return frozenset(v for v in range(G.n) if not burnt[v])


def q_reduce(G: Multigraph, D: Divisor, q: int, witness: bool = False):
    """The unique q-reduced divisor equivalent to ``D``.

    With ``witness=True`` returns ``(reduced, script)`` where
    ``reduced == apply_script(G, D, script)``.
    """
    _check_len(G, D)
    _require_connected(G)
    n = G.n
    chips = list(D)
    script = [0] * n if witness else None
    nbrs = G.neighbors

    dist = _distances(G, q)
    layers: dict[int, list[int]] = {}
    for v, d in enumerate(dist):
        layers.setdefault(d, []).append(v)
    # Benevolence: borrow for {dist >= t}, farthest layer first.  A vertex at
    # distance t gains its edges to layer t-1; only layer t-1 pays.
    for t in range(max(dist), 0, -1):
        k = 0
        for v in layers[t]:
            if chips[v] < 0:
                inflow = sum(m for w, m in nbrs[v] if dist[w] == t - 1)
                k = max(k, -(chips[v] // inflow))
        if k:
            for v in layers[t]:
                for w, m in nbrs[v]:
                    if dist[w] == t - 1:
                        chips[v] += k * m
                        chips[w] -= k * m
            if script is not None:
                for v in range(n):
                    if dist[v] >= t:
                        script[v] -= k

    while True:
        burnt, hits = _burn(G, chips, q)
        S = [v for v in range(n) if not burnt[v]]
        if not S:
            break
        k = min(chips[v] // hits[v] for v in S if hits[v])
        for v in S:
            chips[v] -= k * hits[v]
            for w, m in nbrs[v]:
                if burnt[w]:
                    chips[w] += k * m
            if script is not None:
                script[v] += k
    out = Divisor(chips)
    if witness:
        return out, FiringScript(script)
    return out


def is_reduced(G: Multigraph, D: Divisor, q: int) -> bool:
    if any(D[v] < 0 for v in range(G.n) if v != q):
        return False
    return not dhar_burn(G, D, q)


def is_winnable(G: Multigraph, D: Divisor, q: int = 0) -> bool:
    """Whether ``D`` is equivalent to an effective divisor."""
    if D.degree < 0:
        _check_len(G, D)
        return False
    return q_reduce(G, D, q)[q] >= 0


def rank(G: Multigraph, D: Divisor, max_rank: int = 4) -> int:
    """Baker-Norine rank by exhaustive enumeration of the subtracted divisor.

    Raises :class:`GuardExceeded` if proving the rank would need subtracting
    divisors of degree above ``max_rank``.
    """
    _check_len(G, D)
    if not is_winnable(G, D):
        return -1
    R = q_reduce(G, D, 0)
    n = G.n
    r = 0
    while True:
        level = r + 1
        if level > R.degree:
            return r
        if level > max_rank:
            raise GuardExceeded(f"rank is at least {r}; proving more exceeds max_rank={max_rank}")
        for combo in combinations_with_replacement(range(n), level):
            chips = list(R)
            for v in combo:
                chips[v] -= 1
            if q_reduce(G, Divisor(chips), 0)[0] < 0:
                return r
        r = level


def has_positive_rank(G: Multigraph, D: Divisor) -> bool:
    """Whether ``D - v`` is winnable for every vertex ``v``."""
    _check_len(G, D)
    _require_connected(G)
    if D.degree < 1:
        return False
    effective = D.is_effective
    for q in range(G.n):
        if effective and D[q] >= 1:
            continue
        chips = list(D)
        chips[q] -= 1
        if q_reduce(G, Divisor(chips), q)[q] < 0:
            return False
    return True


class RankTable:
    """Rank of every divisor class, by dynamic programming over the Jacobian.

    Classes are indexed by their sink-reduced configuration off vertex 0.
    The table uses ``r(D) = -1`` when ``D`` is not winnable and otherwise
    ``r(D) = 1 + min_v r(D - v)``, computed degree by degree.

    Parameters
    ----------
    G : Multigraph
        Connected graph.
    max_degree : int
        Highest degree tabulated; defaults to ``2g - 1``.
    guard : int
        Limit on the size of the configuration box explored.
    """

    def __init__(self, G: Multigraph, max_degree: int | None = None, guard: int = 5_000_000):
        _require_connected(G)
        self.G = G
        n = G.n
        val = np.array(G.valence, dtype=np.int64)
        box = int(np.prod([max(int(v), 1) for v in val[1:]], dtype=object)) if n > 1 else 1
        if box > guard:
            raise GuardExceeded(f"configuration box {box} exceeds guard {guard}")
        indptr, nbr, mult = G.csr
        if n == 1:
            self.configs = np.zeros((1, 1), dtype=np.int64)
        else:
            self.configs = K.superstables(indptr, nbr, mult, val)
        self._radix = np.maximum(val, 1)
        self._codes = K.encode(self.configs, self._radix)
        self._dist = K.bfs_layers(indptr, nbr, 0, n)
        if n == 1:
            self.T = np.zeros((1, 1), dtype=np.int64)
        else:
            self.T = K.transitions(indptr, nbr, mult, self.configs, self._codes, self._radix, self._dist)
        self.offsink = self.configs.sum(axis=1)
        if max_degree is None:
            max_degree = max(2 * G.genus - 1, 0)
        self.max_degree = max_degree
        prev = np.full(len(self.configs), -1, dtype=np.int64)
        self._ranks = {-1: prev}
        for d in range(0, max_degree + 1):
            cur = 1 + prev[self.T].min(axis=1)
            cur[d - self.offsink < 0] = -1
            self._ranks[d] = cur
            prev = cur

    @property
    def class_count(self) -> int:
        """Number of classes per degree (the number of spanning trees)."""
        return len(self.configs)

    def index(self, D: Divisor) -> int:
        """Index of the class of ``D`` (degree is tracked separately)."""
        _check_len(self.G, D)
        work = D.to_numpy()
        indptr, nbr, mult = self.G.csr
        K.reduce_offsink(indptr, nbr, mult, work, 0, self._dist)
        work[0] = 0
        code = K.encode(work.reshape(1, -1), self._radix)[0]
        i = int(np.searchsorted(self._codes, code))
        assert self._codes[i] == code
        return i

    def ranks_at(self, d: int) -> np.ndarray:
        """Array of ranks of all classes of degree ``d`` (by class index)."""
        if d < 0:
            return np.full(len(self.configs), -1, dtype=np.int64)
        if d > self.max_degree:
            raise GuardExceeded(f"degree {d} beyond tabulated max_degree={self.max_degree}")
        return self._ranks[d]

    def rank(self, D: Divisor) -> int:
        return int(self.ranks_at(D.degree)[self.index(D)])

    def representative(self, i: int, d: int) -> Divisor:
        """The sink-reduced divisor of class ``i`` and degree ``d``."""
        row = self.configs[i].copy()
        row[0] = d - row.sum()
        return Divisor(row)

    def canonical(self) -> Divisor:
        return Divisor(v - 2 for v in self.G.valence)

    def dual_indices(self) -> np.ndarray:
        """For each class index ``i``, the index of ``K - D_i``."""
        Kd = self.canonical()
        return np.array([self.index(Kd - Divisor(row)) for row in self.configs], dtype=np.int64)
