"""Exact gonality by exhaustive enumeration of reduced divisor classes.

Every positive-rank class of degree ``d`` has a unique representative that is
reduced with respect to the sink ``v1`` and carries at least one chip there.
The search enumerates exactly those representatives (entries bounded by
``val(v) - 1`` away from the sink, filtered by one Dhar pass) and tests each
for positive rank.

Candidates are scanned in lexicographic order of the chip vector.  The scan
is cut into blocks by the values on ``v1`` and ``v2``; blocks can run in
parallel worker processes, and the reported witness is always the
lexicographically least one, whatever the worker count.
"""

from __future__ import annotations

import logging
import multiprocessing as mp
import os
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from . import _kernels as K
from .constructions import independent_complement_divisor, universal_degree
from .divisor import Divisor
from .errors import BudgetExceeded, ContractError, GuardExceeded, SearchInconsistency
from .graph import Multigraph, harary, max_independent_set
from .reduction import _require_connected, dhar_burn, has_positive_rank

__all__ = [
    "SearchBudget",
    "DegreeOutcome",
    "SearchReport",
    "GonalityTable",
    "candidate_space",
    "enumerate_classes",
    "count_classes",
    "search_degree",
    "exists_positive_rank",
    "gonality_bounds",
    "gonality",
    "gonality_table",
    "resolve_workers",
]

log = logging.getLogger(__name__)

CHUNK = 1 << 14


@dataclass(frozen=True)
class SearchBudget:
    """Limits for one search.  ``None`` means unlimited.

    ``max_candidates`` caps the raw candidates scanned per degree; a degree
    whose candidate space is larger than the cap is refused up front.
    """

    time_ms: float | None = None
    max_candidates: int | None = 10**9


@dataclass
class DegreeOutcome:
    degree: int
    exists: bool
    witness: Divisor | None
    classes: int
    candidates: int
    elapsed_ms: float


@dataclass
class SearchReport:
    """Result of :func:`gonality`.

    ``degrees_excluded`` lists ``(degree, classes)`` for every degree below
    the gonality, where ``classes`` counts the reduced representatives with a
    chip on the sink that were tested and found to have rank 0.
    """

    graph_key: str
    gonality: int
    witness: Divisor
    degrees_excluded: list[tuple[int, int]]
    elapsed_ms: float
    worker_count: int
    upper_bound: int
    from_cache: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "graph": self.graph_key,
            "status": "ok",
            "gonality": self.gonality,
            "witness": self.witness.to_sparse(),
            "upper_bound": self.upper_bound,
            "degrees_excluded": [{"degree": d, "classes": c} for d, c in self.degrees_excluded],
            "elapsed_ms": round(self.elapsed_ms, 3),
            "worker_count": self.worker_count,
        }


def resolve_workers(workers: int | None = None) -> int:
    """Explicit argument, else ``GONLAB_WORKERS``, else the CPU count."""
    if workers is None:
        env = os.environ.get("GONLAB_WORKERS")
        if env:
            try:
                workers = int(env)
            except ValueError:
                raise ContractError(f"GONLAB_WORKERS must be an integer, got {env!r}") from None
        else:
            workers = os.cpu_count() or 1
    if workers < 1:
        raise ContractError("worker count must be >= 1")
    return workers


# -- candidate space ---------------------------------------------------

def _bounds(G: Multigraph) -> np.ndarray:
    ub = np.array([v - 1 for v in G.valence], dtype=np.int64)
    ub[ub < 0] = 0
    return ub


def _poly_count(ub: Iterable[int], upto: int) -> list[int]:
    coeff = [1] + [0] * upto
    for u in ub:
        u = int(u)
        # multiply by 1 + x + ... + x^u via prefix sums
        pref = [0]
        for c in coeff:
            pref.append(pref[-1] + c)
        coeff = [pref[s + 1] - pref[max(0, s - u)] for s in range(upto + 1)]
    return coeff


def candidate_space(G: Multigraph, d: int, min_sink: int = 1, symmetric: bool = False) -> int:
    """Number of raw candidates the search scans at degree ``d``."""
    ub = _bounds(G)[1:]
    if d < min_sink:
        return 0
    if not symmetric:
        coeff = _poly_count(ub, d - min_sink)
        return sum(coeff)
    total = 0
    for x0 in range(min_sink, d + 1):
        total += _poly_count(np.minimum(ub, x0), d - x0)[d - x0]
    return total


def enumerate_classes(G: Multigraph, d: int, q: int = 0, min_sink: int = 0) -> Iterator[Divisor]:
    """Yield the q-reduced effective divisors of degree ``d``.

    Entries away from ``q`` run over ``0..val(v)-1``, the remaining chips go
    on ``q`` (at least ``min_sink`` of them), and only candidates that burn
    completely from ``q`` are yielded.  This is one divisor per effective
    class of degree ``d``.
    """
    _require_connected(G)
    if d < 0:
        return
    others = [v for v in range(G.n) if v != q]
    ub = [max(G.valence[v] - 1, 0) for v in others]
    cap = [0] * (len(others) + 1)
    for i in range(len(others) - 1, -1, -1):
        cap[i] = cap[i + 1] + ub[i]
    chips = [0] * G.n

    def rec(i: int, left: int) -> Iterator[Divisor]:
        if i == len(others):
            if left >= min_sink:
                chips[q] = left
                D = Divisor(chips)
                if not dhar_burn(G, D, q):
                    yield D
            return
        v = others[i]
        for c in range(min(ub[i], left) + 1):
            chips[v] = c
            yield from rec(i + 1, left - c)
        chips[v] = 0

    yield from rec(0, d)


# -- block scanning ----------------------------------------------------

@dataclass
class _Plan:
    arrays: tuple[np.ndarray, np.ndarray, np.ndarray]
    ub: np.ndarray
    d: int
    blocks: list[tuple[int, ...]]
    symmetric: bool
    test_rank: bool

    def block_ub(self, prefix: tuple[int, ...]) -> np.ndarray:
        if not self.symmetric:
            return self.ub
        ub = np.minimum(self.ub, prefix[0])
        ub[0] = self.ub[0]
        return ub


def _plan(G: Multigraph, d: int, min_sink: int, symmetric: bool, test_rank: bool) -> _Plan:
    _require_connected(G)
    n = G.n
    ub = _bounds(G)
    ub[0] = d  # the sink is unbounded; its value is fixed by the block
    blocks: list[tuple[int, ...]] = []
    for x0 in range(min_sink, d + 1):
        if n == 1:
            if x0 == d:
                blocks.append((x0,))
            continue
        row = np.minimum(ub, x0) if symmetric else ub
        rest_cap = int(row[2:].sum())
        for x1 in range(0, min(int(row[1]), d - x0) + 1):
            if d - x0 - x1 <= rest_cap:
                blocks.append((x0, x1))
    return _Plan(G.csr, ub, d, blocks, symmetric, test_rank)


def _run_block(plan: _Plan, idx: int, should_stop: Callable[[int], bool]):
    """Scan one block; returns ``(status, raw, classes, witness)``.

    ``status`` is ``K.DONE``, ``K.FOUND`` or ``"stopped"``.
    """
    indptr, nbr, mult = plan.arrays
    prefix = plan.blocks[idx]
    n = len(plan.ub)
    ub = plan.block_ub(prefix)
    x = np.zeros(n, dtype=np.int64)
    x[: len(prefix)] = prefix
    order = np.arange(n, dtype=np.int64)[::-1].copy()
    counts = np.zeros(2, dtype=np.int64)
    status = K.scan_block(indptr, nbr, mult, ub, x, len(prefix), plan.d, False, CHUNK, plan.test_rank, order, counts)
    while status == K.PAUSED:
        if should_stop(int(counts[0])):
            return "stopped", int(counts[0]), int(counts[1]), None
        status = K.scan_block(indptr, nbr, mult, ub, x, len(prefix), plan.d, True, CHUNK, plan.test_rank, order, counts)
    witness = tuple(int(c) for c in x) if status == K.FOUND else None
    return status, int(counts[0]), int(counts[1]), witness


def _scan_serial(plan: _Plan, deadline: float | None, max_raw: int | None):
    results = {}
    total = 0
    for i in range(len(plan.blocks)):
        base = total

        def stop(raw: int) -> bool:
            if deadline is not None and time.monotonic() > deadline:
                return True
            return max_raw is not None and base + raw > max_raw

        status, raw, cls, wit = _run_block(plan, i, stop)
        total += raw
        results[i] = (status, raw, cls, wit)
        if status == K.FOUND or status == "stopped":
            break
    return results


def _worker(plan, next_idx, best, abort, raw_total, deadline, max_raw, queue):
    try:
        while True:
            with next_idx.get_lock():
                i = next_idx.value
                next_idx.value += 1
            if i >= len(plan.blocks) or abort.value or i > best.value:
                break
            last = [0]

            def stop(raw: int) -> bool:
                with raw_total.get_lock():
                    raw_total.value += raw - last[0]
                    total = raw_total.value
                last[0] = raw
                if best.value < i or abort.value:
                    return True
                if (deadline is not None and time.monotonic() > deadline) or (
                    max_raw is not None and total > max_raw
                ):
                    abort.value = 1
                    return True
                return False

            status, raw, cls, wit = _run_block(plan, i, stop)
            with raw_total.get_lock():
                raw_total.value += raw - last[0]
            if status == K.FOUND:
                with best.get_lock():
                    if i < best.value:
                        best.value = i
            queue.put((i, status, raw, cls, wit))
    finally:
        queue.put(None)


def _scan_parallel(plan: _Plan, workers: int, deadline: float | None, max_raw: int | None):
    ctx = mp.get_context("fork")
    next_idx = ctx.Value("q", 0)
    best = ctx.Value("q", len(plan.blocks))
    abort = ctx.Value("b", 0)
    raw_total = ctx.Value("q", 0)
    queue = ctx.Queue()
    procs = [
        ctx.Process(target=_worker, args=(plan, next_idx, best, abort, raw_total, deadline, max_raw, queue), daemon=True)
        for _ in range(workers)
    ]
    for p in procs:
        p.start()
    results = {}
    finished = 0
    while finished < workers:
        item = queue.get()
        if item is None:
            finished += 1
            continue
        i, status, raw, cls, wit = item
        results[i] = (status, raw, cls, wit)
    for p in procs:
        p.join()
    return results


_warm = False


def _warmup() -> None:
    # Compile kernels in the parent so forked workers inherit them.
    global _warm
    if _warm:
        return
    G = Multigraph(3, [(0, 1), (1, 2), (0, 2)])
    plan = _plan(G, 2, 1, False, True)
    _run_block(plan, 0, lambda raw: False)
    _warm = True


def search_degree(
    G: Multigraph,
    d: int,
    workers: int = 1,
    budget: SearchBudget | None = None,
    symmetric: bool = False,
) -> DegreeOutcome:
    """Decide whether ``G`` has a positive-rank divisor of degree ``d``.

    Raises :class:`BudgetExceeded` when the verdict is unknown.
    ``symmetric=True`` additionally assumes the sink carries at least as many
    chips as any other vertex, which is only sound for vertex-transitive
    graphs (circulants).
    """
    if d < 1:
        raise ContractError("degree must be >= 1")
    if symmetric and G.circulant is None:
        raise ContractError("the rotation filter is only sound for circulant graphs")
    budget = budget or SearchBudget()
    space = candidate_space(G, d, 1, symmetric)
    if budget.max_candidates is not None and space > budget.max_candidates:
        raise BudgetExceeded(
            f"degree {d}: candidate space {space} exceeds the limit of {budget.max_candidates}", degree=d
        )
    t0 = time.monotonic()
    deadline = None if budget.time_ms is None else t0 + budget.time_ms / 1000.0
    plan = _plan(G, d, 1, symmetric, True)
    _warmup()
    if workers > 1 and len(plan.blocks) > 1:
        results = _scan_parallel(plan, workers, deadline, budget.max_candidates)
    else:
        results = _scan_serial(plan, deadline, budget.max_candidates)
    elapsed = (time.monotonic() - t0) * 1000.0
    raw = sum(r[1] for r in results.values())
    classes = sum(r[2] for r in results.values())
    found = sorted(i for i, r in results.items() if r[0] == K.FOUND)
    if found:
        w = Divisor(results[found[0]][3])
        return DegreeOutcome(d, True, w, classes, raw, elapsed)
    complete = all(results.get(i, ("missing",))[0] == K.DONE for i in range(len(plan.blocks)))
    if not complete:
        raise BudgetExceeded(f"degree {d}: budget exhausted after {raw} candidates", degree=d)
    return DegreeOutcome(d, False, None, classes, raw, elapsed)


def exists_positive_rank(
    G: Multigraph, d: int, workers: int = 1, budget: SearchBudget | None = None, symmetric: bool = False
) -> Divisor | None:
    """A positive-rank divisor of degree ``d``, or ``None`` if there is none."""
    return search_degree(G, d, workers, budget, symmetric).witness


def count_classes(G: Multigraph, d: int, min_sink: int = 0) -> int:
    """Number of sink-reduced effective classes of degree ``d`` (sink ``v1``)."""
    if d < 0:
        return 0
    if d < min_sink:
        return 0
    plan = _plan(G, d, min_sink, False, False)
    results = _scan_serial(plan, None, None)
    return sum(r[2] for r in results.values())


# -- gonality ----------------------------------------------------------

def gonality_bounds(G: Multigraph) -> dict[str, int]:
    """Known upper bounds on the gonality of ``G``, by name."""
    bounds = {"all_vertices": G.n}
    if G.is_simple:
        try:
            bounds["independent_complement"] = max(1, G.n - len(max_independent_set(G)))
        except GuardExceeded:
            pass
    spec = G.circulant
    if spec is not None and spec.connected:
        bounds["universal"] = universal_degree(spec.J)
        if spec.n % 2 == 0 and spec.J[-1] == spec.n // 2 and len(spec.J) > 1:
            bounds["antipodal"] = 2 * universal_degree(spec.J[:-1])
    return bounds


def gonality(
    G: Multigraph,
    lower_hint: int | None = None,
    upper_hint: int | None = None,
    workers: int | None = 1,
    budget: SearchBudget | None = None,
    cache=None,
    symmetric: bool = False,
    preflight: bool = True,
) -> SearchReport:
    """Exact gonality by an ascending scan over degrees.

    ``upper_hint`` defaults to the best known bound; passing it without a
    witness is an internal error.  With ``preflight`` the whole scan up to
    that bound is refused if its candidate space exceeds the budget.
    ``cache`` is any object with ``lookup(key, d)`` and ``store(key, outcome)``.
    """
    _require_connected(G)
    workers = resolve_workers(workers)
    budget = budget or SearchBudget()
    upper = min(gonality_bounds(G).values())
    if upper_hint is not None:
        upper = min(upper, upper_hint)
    lower = max(1, lower_hint or 1)
    if lower > upper:
        raise ContractError(f"inconsistent hints: lower {lower} > upper {upper}")
    if preflight and budget.max_candidates is not None:
        total = sum(candidate_space(G, d, 1, symmetric) for d in range(lower, upper + 1))
        if total > budget.max_candidates:
            raise BudgetExceeded(
                f"scanning degrees {lower}..{upper} needs {total} candidates, over the limit of {budget.max_candidates}",
                degree=lower,
            )
    t0 = time.monotonic()
    deadline = None if budget.time_ms is None else t0 + budget.time_ms / 1000.0
    excluded: list[tuple[int, int]] = []
    cached: list[int] = []
    key = G.key
    for d in range(lower, upper + 1):
        rec = cache.lookup(key, d) if cache is not None else None
        if rec is not None and (not rec.exists or (rec.witness is not None and has_positive_rank(G, rec.witness))):
            outcome = rec
            cached.append(d)
        else:
            left = None if deadline is None else max(0.0, (deadline - time.monotonic()) * 1000.0)
            sub = SearchBudget(time_ms=left, max_candidates=budget.max_candidates)
            try:
                outcome = search_degree(G, d, workers, sub, symmetric)
            except BudgetExceeded as exc:
                exc.partial = list(excluded)
                raise
            if cache is not None:
                cache.store(key, outcome)
        if outcome.exists:
            return SearchReport(
                key, d, outcome.witness, excluded, (time.monotonic() - t0) * 1000.0, workers, upper, cached
            )
        excluded.append((d, outcome.classes))
    raise SearchInconsistency(f"no positive-rank divisor of degree <= {upper} found, contradicting a proven bound")


@dataclass
class GonalityTable:
    k: int
    rows: list[tuple[int, SearchReport | None, str | None]]

    @property
    def values(self) -> dict[int, int]:
        return {n: rep.gonality for n, rep, _ in self.rows if rep is not None}

    def monotone_violations(self) -> list[tuple[int, int]]:
        """Consecutive ``(n, n+1)`` with gon decreasing (none expected for even k)."""
        vals = self.values
        return [(n, n + 1) for n in sorted(vals) if n + 1 in vals and vals[n + 1] < vals[n]]


def gonality_table(
    k: int,
    ns: Sequence[int],
    workers: int | None = 1,
    budget: SearchBudget | None = None,
    cache=None,
    symmetric: bool = False,
) -> GonalityTable:
    """Gonality of ``H_{k,n}`` for each ``n``; budget failures are recorded per row."""
    rows = []
    for n in ns:
        G = harary(k, n)
        try:
            rows.append((n, gonality(G, workers=workers, budget=budget, cache=cache, symmetric=symmetric), None))
        except BudgetExceeded as exc:
            rows.append((n, None, str(exc)))
    table = GonalityTable(k, rows)
    if k % 2 == 0 and table.monotone_violations():
        log.warning("gonality table for k=%d is not monotone: %s", k, table.monotone_violations())
    return table
