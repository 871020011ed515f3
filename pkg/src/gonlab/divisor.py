"""Divisors, firing scripts and the chip-firing moves that relate them."""

from __future__ import annotations

import re
from typing import Iterable, Iterator

import numpy as np

from .errors import ContractError, DivisorSyntaxError
from .graph import Multigraph

__all__ = [
    "Divisor",
    "FiringScript",
    "degree",
    "is_effective",
    "support",
    "fire_vertex",
    "fire_set",
    "outdegree",
    "is_legal_set_firing",
    "apply_script",
    "parse_divisor",
]


class _IntVector:
    __slots__ = ("_v",)

    def __init__(self, values: Iterable[int]):
        self._v = tuple(int(x) for x in values)

    def __len__(self) -> int:
        return len(self._v)

    def __iter__(self) -> Iterator[int]:
        return iter(self._v)

    def __getitem__(self, i):
        return self._v[i]

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self._v == other._v

    def __lt__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._v < other._v

    def __hash__(self) -> int:
        return hash((type(self).__name__, self._v))

    def _check(self, other) -> tuple[int, ...]:
        ov = other._v if isinstance(other, _IntVector) else tuple(other)
        if len(ov) != len(self._v):
            raise ContractError(f"length mismatch: {len(self._v)} vs {len(ov)}")
        return ov

    def __add__(self, other):
        return type(self)(a + b for a, b in zip(self._v, self._check(other)))

    def __sub__(self, other):
        return type(self)(a - b for a, b in zip(self._v, self._check(other)))

    def __neg__(self):
        return type(self)(-a for a in self._v)

    def __mul__(self, c: int):
        return type(self)(c * a for a in self._v)

    __rmul__ = __mul__

    def to_numpy(self) -> np.ndarray:
        return np.array(self._v, dtype=np.int64)

    def to_list(self) -> list[int]:
        return list(self._v)

    @classmethod
    def zeros(cls, n: int):
        return cls((0,) * n)

    @classmethod
    def unit(cls, n: int, v: int, c: int = 1):
        vals = [0] * n
        vals[v] = c
        return cls(vals)


class Divisor(_IntVector):
    """Integer chip counts indexed by vertex.

    A divisor does not know its graph; operations take the graph explicitly
    and reject length mismatches.
    """

    __slots__ = ()

    @property
    def degree(self) -> int:
        return sum(self._v)

    @property
    def is_effective(self) -> bool:
        return all(x >= 0 for x in self._v)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, x in enumerate(self._v) if x > 0)

    def to_sparse(self) -> str:
        """1-based sparse literal such as ``v2=3,v5=1`` (``0`` if empty)."""
        parts = [f"v{i + 1}={x}" for i, x in enumerate(self._v) if x]
        return ",".join(parts) if parts else "0"

    def rotate(self, shift: int) -> "Divisor":
        """Cyclic relabelling ``v_i -> v_{i+shift}``."""
        n = len(self._v)
        out = [0] * n
        for i, x in enumerate(self._v):
            out[(i + shift) % n] = x
        return Divisor(out)

    def __repr__(self) -> str:
        return f"Divisor({list(self._v)})"


class FiringScript(_IntVector):
    """Number of times each vertex fires (negative entries borrow)."""

    __slots__ = ()

    @classmethod
    def indicator(cls, n: int, S: Iterable[int]) -> "FiringScript":
        vals = [0] * n
        for v in S:
            vals[v] = 1
        return cls(vals)

    def __repr__(self) -> str:
        return f"FiringScript({list(self._v)})"


def degree(D: Divisor) -> int:
    return D.degree


def is_effective(D: Divisor) -> bool:
    return D.is_effective


def support(D: Divisor) -> frozenset[int]:
    return D.support


def _check_len(G: Multigraph, vec) -> None:
    if len(vec) != G.n:
        raise ContractError(f"vector of length {len(vec)} does not match graph with {G.n} vertices")


def fire_vertex(G: Multigraph, D: Divisor, v: int) -> Divisor:
    _check_len(G, D)
    out = list(D)
    out[v] -= G.valence[v]
    for w, m in G.neighbors[v]:
        out[w] += m
    return Divisor(out)


def outdegree(G: Multigraph, S: Iterable[int], v: int) -> int:
    """Number of edges from ``v`` to vertices outside ``S``."""
    S = S if isinstance(S, (set, frozenset)) else set(S)
    return sum(m for w, m in G.neighbors[v] if w not in S)


def fire_set(G: Multigraph, D: Divisor, S: Iterable[int]) -> Divisor:
    """Fire every vertex of ``S`` once; edges inside ``S`` cancel."""
    _check_len(G, D)
    S = frozenset(S)
    out = list(D)
    for v in S:
        for w, m in G.neighbors[v]:
            if w not in S:
                out[v] -= m
                out[w] += m
    return Divisor(out)


def is_legal_set_firing(G: Multigraph, D: Divisor, S: Iterable[int]) -> bool:
    """Whether firing ``S`` leaves no vertex of ``S`` in debt."""
    _check_len(G, D)
    S = frozenset(S)
    return all(D[v] >= outdegree(G, S, v) for v in S)


def apply_script(G: Multigraph, D: Divisor, s: FiringScript) -> Divisor:
    """Return ``D - L s`` where ``L`` is the Laplacian of ``G``."""
    _check_len(G, D)
    _check_len(G, s)
    out = list(D)
    for u, v, m in G.edges():
        flow = m * (s[u] - s[v])
        out[u] -= flow
        out[v] += flow
    return Divisor(out)


_SPARSE_TERM = re.compile(r"^v(\d+)=(-?\d+)$")


def parse_divisor(text: str, n: int) -> Divisor:
    """Parse ``3,1,0,...`` (dense, 1-based order) or ``v2=3,v3=1`` (sparse)."""
    text = text.strip().replace(" ", "")
    if not text:
        raise DivisorSyntaxError("empty divisor literal")
    if text == "0":
        return Divisor.zeros(n)
    terms = text.split(",")
    if all(t.startswith("v") for t in terms):
        vals = [0] * n
        for t in terms:
            m = _SPARSE_TERM.match(t)
            if not m:
                raise DivisorSyntaxError(f"malformed sparse term {t!r}")
            i = int(m.group(1))
            if not 1 <= i <= n:
                raise DivisorSyntaxError(f"vertex v{i} out of range 1..{n}")
            vals[i - 1] += int(m.group(2))
        return Divisor(vals)
    try:
        vals = [int(t) for t in terms]
    except ValueError:
        raise DivisorSyntaxError(f"malformed divisor literal {text!r}") from None
    if len(vals) != n:
        raise DivisorSyntaxError(f"dense divisor has {len(vals)} entries, graph has {n} vertices")
    return Divisor(vals)
