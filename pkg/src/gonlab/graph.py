"""Loopless multigraphs, circulant and Harary constructors, independence tools.

Vertices are the integers ``0..n-1``.  Human-facing text (the CLI, reports,
sparse divisor literals) uses the 1-based names ``v1..vn`` instead.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import ContractError, GraphSpecError, GuardExceeded

__all__ = [
    "Multigraph",
    "CirculantSpec",
    "circulant",
    "harary",
    "harary_spec",
    "is_connected",
    "max_independent_set",
    "alpha_harary",
    "delete_and_pair",
    "harary_deletion_pairing",
    "parse_graph",
    "parse_edge_list",
]


class Multigraph:
    """An immutable loopless undirected multigraph on vertices ``0..n-1``.

    Parameters
    ----------
    n : int
        Number of vertices.
    edges : iterable of tuples
        ``(u, v)`` or ``(u, v, multiplicity)``; repeated pairs accumulate.
    circulant : CirculantSpec, optional
        Provenance tag set by :func:`circulant`.  Not part of equality.
    """

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = (), circulant: "CirculantSpec | None" = None):
        if n < 1:
            raise ContractError(f"a graph needs at least one vertex, got n={n}")
        mult: dict[tuple[int, int], int] = {}
        for e in edges:
            if len(e) == 2:
                u, v, m = e[0], e[1], 1
            elif len(e) == 3:
                u, v, m = e
            else:
                raise ContractError(f"edge must be (u, v) or (u, v, m), got {e!r}")
            u, v, m = int(u), int(v), int(m)
            if not (0 <= u < n and 0 <= v < n):
                raise ContractError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ContractError(f"loop at vertex v{u + 1} is not allowed")
            if m < 0:
                raise ContractError("edge multiplicity must be non-negative")
            if m == 0:
                continue
            key = (u, v) if u < v else (v, u)
            mult[key] = mult.get(key, 0) + m
        self._n = n
        self._mult = mult
        self.circulant = circulant

    # -- basic queries -------------------------------------------------
    @property
    def n(self) -> int:
        return self._n

    @property
    def vertex_count(self) -> int:
        return self._n

    def multiplicity(self, u: int, v: int) -> int:
        if u == v:
            return 0
        return self._mult.get((u, v) if u < v else (v, u), 0)

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(u, v, m)`` with ``u < v`` in sorted order."""
        for (u, v) in sorted(self._mult):
            yield u, v, self._mult[(u, v)]

    @cached_property
    def neighbors(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """``neighbors[v]`` is a sorted tuple of ``(w, multiplicity)``."""
        nb: list[list[tuple[int, int]]] = [[] for _ in range(self._n)]
        for (u, v), m in self._mult.items():
            nb[u].append((v, m))
            nb[v].append((u, m))
        return tuple(tuple(sorted(x)) for x in nb)

    @cached_property
    def valence(self) -> tuple[int, ...]:
        return tuple(sum(m for _, m in nb) for nb in self.neighbors)

    @property
    def edge_count(self) -> int:
        """Number of edges counted with multiplicity."""
        return sum(self._mult.values())

    @property
    def genus(self) -> int:
        """First Betti number ``|E| - |V| + 1`` (assumes connectedness)."""
        return self.edge_count - self._n + 1

    @property
    def is_simple(self) -> bool:
        return all(m == 1 for m in self._mult.values())

    @cached_property
    def adjacency(self) -> np.ndarray:
        a = np.zeros((self._n, self._n), dtype=np.int64)
        for (u, v), m in self._mult.items():
            a[u, v] = a[v, u] = m
        a.flags.writeable = False
        return a

    @cached_property
    def laplacian(self) -> np.ndarray:
        lap = -self.adjacency.copy()
        lap[np.diag_indices(self._n)] = self.valence
        lap.flags.writeable = False
        return lap

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """``(indptr, neighbor, multiplicity)`` int64 arrays for the kernels."""
        indptr = np.zeros(self._n + 1, dtype=np.int64)
        nbr: list[int] = []
        mul: list[int] = []
        for v, nb in enumerate(self.neighbors):
            for w, m in nb:
                nbr.append(w)
                mul.append(m)
            indptr[v + 1] = len(nbr)
        out = (indptr, np.array(nbr, dtype=np.int64), np.array(mul, dtype=np.int64))
        for arr in out:
            arr.flags.writeable = False
        return out

    # -- value semantics -----------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self._n == other._n and self._mult == other._mult

    def __hash__(self) -> int:
        return hash((self._n, frozenset(self._mult.items())))

    def __repr__(self) -> str:
        if self.circulant is not None:
            return f"Multigraph({self.circulant.key}, edges={self.edge_count})"
        return f"Multigraph(n={self._n}, edges={self.edge_count})"

    @property
    def key(self) -> str:
        """Stable identifier used for cache records and reports."""
        if self.circulant is not None:
            return self.circulant.key
        body = ";".join(f"{u + 1}-{v + 1}" + (f"x{m}" if m > 1 else "") for u, v, m in self.edges())
        return f"edges:{self._n}:{body}"


@dataclass(frozen=True)
class CirculantSpec:
    """The pair ``(n, J)`` naming the circulant graph ``Ci_n(J)``."""

    n: int
    J: tuple[int, ...]

    def __post_init__(self):
        J = tuple(int(j) for j in self.J)
        object.__setattr__(self, "J", J)
        if self.n < 1:
            raise ContractError(f"circulant needs n >= 1, got {self.n}")
        if not J:
            raise ContractError("adjacency list J must be non-empty")
        if any(b <= a for a, b in zip(J, J[1:])):
            raise ContractError(f"J must be strictly increasing, got {list(J)}")
        if J[0] <= 0:
            raise ContractError(f"J entries must be positive, got {list(J)}")
        if J[-1] > self.n // 2:
            raise ContractError(f"J entries must be <= floor(n/2) = {self.n // 2}, got {J[-1]}")

    @property
    def key(self) -> str:
        return f"ci:{self.n}:" + ",".join(map(str, self.J))

    @property
    def connected(self) -> bool:
        return math.gcd(self.n, *self.J) == 1


def circulant(spec: CirculantSpec | int, J: Iterable[int] | None = None) -> Multigraph:
    """Build ``Ci_n(J)``; accepts a spec or ``circulant(n, J)``.

    An antipodal distance ``j = n/2`` contributes a single edge per pair.
    """
    if not isinstance(spec, CirculantSpec):
        spec = CirculantSpec(int(spec), tuple(J or ()))
    n = spec.n
    edges = set()
    for i in range(n):
        for j in spec.J:
            m = (i + j) % n
            edges.add((min(i, m), max(i, m)))
    return Multigraph(n, sorted(edges), circulant=spec)


def harary_spec(k: int, n: int) -> CirculantSpec:
    if k < 1 or n < 1:
        raise ContractError("k and n must be positive")
    if k >= n:
        raise ContractError(f"Harary graph needs k <= n-1, got k={k}, n={n}")
    if k % 2 == 0:
        if k < 2:
            raise ContractError("even k must be >= 2")
        return CirculantSpec(n, tuple(range(1, k // 2 + 1)))
    if n % 2:
        raise ContractError(f"H_{{k,n}} is undefined for k and n both odd (k={k}, n={n})")
    return CirculantSpec(n, tuple(range(1, k // 2 + 1)) + (n // 2,))


def harary(k: int, n: int) -> Multigraph:
    """The k-regular Harary graph ``H_{k,n}``."""
    return circulant(harary_spec(k, n))


def is_connected(G: Multigraph) -> bool:
    seen = [False] * G.n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        u = stack.pop()
        for w, _ in G.neighbors[u]:
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    return count == G.n


def _greedy_clique_cover(cand: int, nbr: list[int]) -> int:
    # Upper bound on the independence number of the induced subgraph.
    cliques = 0
    while cand:
        low = cand & -cand
        clique_cand = cand & nbr[low.bit_length() - 1]
        cand ^= low
        while clique_cand:
            b = clique_cand & -clique_cand
            cand &= ~b
            clique_cand &= nbr[b.bit_length() - 1]
        cliques += 1
    return cliques


def max_independent_set(G: Multigraph, guard: int = 64) -> frozenset[int]:
    """Exact maximum independent set by branch and bound.

    Among maximum sets the lexicographically smallest (as a sorted vertex
    list) is returned, so results are deterministic.
    """
    if not G.is_simple:
        raise ContractError("max_independent_set requires a simple graph")
    if G.n > guard:
        raise GuardExceeded(f"{G.n} vertices exceeds the independent-set guard of {guard}")
    nbr = [0] * G.n
    for u, v, _ in G.edges():
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    best_size = 0
    best_mask = 0

    def search(cand: int, chosen: int, size: int) -> None:
        nonlocal best_size, best_mask
        if not cand:
            if size > best_size:
                best_size, best_mask = size, chosen
            return
        if size + _greedy_clique_cover(cand, nbr) <= best_size:
            return
        low = cand & -cand
        v = low.bit_length() - 1
        search(cand & ~nbr[v] & ~low, chosen | low, size + 1)
        search(cand & ~low, chosen, size)

    search((1 << G.n) - 1, 0, 0)
    return frozenset(v for v in range(G.n) if best_mask >> v & 1)


def alpha_harary(k: int, n: int) -> int:
    """Closed-form independence number of ``H_{k,n}`` for even k."""
    if k % 2:
        raise ContractError("alpha_harary is only defined for even k")
    if not 2 <= k <= n - 1:
        raise ContractError(f"need 2 <= k <= n-1, got k={k}, n={n}")
    return n // (k // 2 + 1)


def delete_and_pair(G: Multigraph, v: int, pairing: Iterable[tuple[int, int]]) -> Multigraph:
    """Delete ``v`` and join its neighbors pairwise.

    ``pairing`` must use every neighbor slot of ``v`` exactly once, where a
    neighbor joined by ``m`` parallel edges occupies ``m`` slots.  Remaining
    vertices are renumbered ``0..n-2`` preserving order.
    """
    if not 0 <= v < G.n:
        raise ContractError(f"vertex {v} out of range")
    if G.valence[v] % 2:
        raise ContractError(f"v{v + 1} has odd valence {G.valence[v]}")
    pairing = [tuple(p) for p in pairing]
    slots = Counter({w: m for w, m in G.neighbors[v]})
    used: Counter[int] = Counter()
    for p in pairing:
        if len(p) != 2:
            raise ContractError(f"pairs must have two entries, got {p!r}")
        a, b = p
        if a == b:
            raise ContractError(f"pairing v{a + 1} with itself would create a loop")
        used[a] += 1
        used[b] += 1
    if used != slots:
        raise ContractError("pairing is not a perfect matching on the neighbor slots of the deleted vertex")

    def relabel(x: int) -> int:
        return x if x < v else x - 1

    edges = [(relabel(a), relabel(b), m) for a, b, m in G.edges() if v not in (a, b)]
    edges += [(relabel(a), relabel(b), 1) for a, b in pairing]
    return Multigraph(G.n - 1, edges)


def harary_deletion_pairing(k: int, n: int) -> list[tuple[int, int]]:
    """Pairing of the neighbors of vertex 0 in ``H_{k,n}`` (k even).

    Neighbor ``i`` for ``1 <= i <= k/2`` is joined to ``i - (k/2 + 1) mod n``;
    deleting vertex 0 with this pairing yields ``H_{k,n-1}``.
    """
    if k % 2:
        raise ContractError("the deletion pairing needs even k")
    half = k // 2
    return [(i, (i - half - 1) % n) for i in range(1, half + 1)]


# -- text formats ------------------------------------------------------

_CI_RE = re.compile(r"^ci:(\d+):(\d+(?:,\d+)*)$")
_HARARY_RE = re.compile(r"^harary:(\d+),(\d+)$")


def parse_edge_list(text: str) -> Multigraph:
    """Parse ``u v [mult]`` lines (1-based); ``#`` starts a comment.

    An optional first line ``n <count>`` fixes the vertex count, otherwise it
    is the largest label seen.
    """
    edges = []
    n = 0
    declared = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "n" and len(parts) == 2 and declared is None and not edges:
            declared = int(parts[1])
            continue
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise GraphSpecError(f"edge list line {lineno}: expected integers, got {raw!r}") from None
        if len(nums) not in (2, 3) or min(nums[:2]) < 1:
            raise GraphSpecError(f"edge list line {lineno}: expected 'u v [mult]' with 1-based labels")
        u, v = nums[0] - 1, nums[1] - 1
        edges.append((u, v, nums[2] if len(nums) == 3 else 1))
        n = max(n, u + 1, v + 1)
    if declared is not None:
        if declared < n:
            raise GraphSpecError(f"declared n={declared} but labels go up to {n}")
        n = declared
    if n == 0:
        raise GraphSpecError("edge list is empty")
    try:
        return Multigraph(n, edges)
    except ContractError as exc:
        raise GraphSpecError(str(exc)) from None


def parse_graph(spec: str) -> Multigraph:
    """Parse ``ci:<n>:<j1>,...``, ``harary:<k>,<n>`` or ``edges:<path>``."""
    spec = spec.strip()
    try:
        m = _CI_RE.match(spec)
        if m:
            J = tuple(int(x) for x in m.group(2).split(","))
            return circulant(CirculantSpec(int(m.group(1)), J))
        m = _HARARY_RE.match(spec)
        if m:
            return harary(int(m.group(1)), int(m.group(2)))
    except ContractError as exc:
        raise GraphSpecError(f"{spec!r}: {exc}") from None
    if spec.startswith("edges:"):
        path = Path(spec[len("edges:"):])
        try:
            return parse_edge_list(path.read_text())
        except OSError as exc:
            raise GraphSpecError(f"cannot read edge list {path}: {exc}") from None
    raise GraphSpecError(f"unknown graph spec {spec!r}; expected ci:<n>:<J>, harary:<k>,<n> or edges:<path>")
