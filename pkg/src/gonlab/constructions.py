"""Explicit positive-rank divisors on circulant graphs and their certificates."""

from __future__ import annotations

from dataclasses import dataclass, field

from .divisor import Divisor, fire_set
from .errors import ContractError
from .graph import CirculantSpec, Multigraph, circulant, max_independent_set

__all__ = [
    "block_profile",
    "universal_divisor",
    "universal_degree",
    "harary_even_bound",
    "harary_odd_bound",
    "antipodal_divisor",
    "TranslationStep",
    "TranslationCertificate",
    "verify_translation",
    "independent_complement_divisor",
]


def block_profile(J) -> list[int]:
    """Chip counts of one block: entry ``a-1`` is ``sum_i max(0, j_i - |j_k - a|)``.

    The block has ``2*j_k - 1`` entries, peaks at ``a = j_k`` and sums to
    ``sum(j**2 for j in J)``.
    """
    J = tuple(J)
    jk = J[-1]
    return [sum(max(0, j - abs(jk - a)) for j in J) for a in range(1, 2 * jk)]


def _two_blocks(n: int, J) -> list[int]:
    # One block read forward from v1, its mirror read backward from vn;
    # where they overlap the contributions add.
    prof = block_profile(J)
    chips = [0] * n
    for o, c in enumerate(prof):
        chips[o % n] += c
        chips[(n - 1 - o) % n] += c
    return chips


def universal_divisor(spec: CirculantSpec) -> Divisor:
    """The divisor of degree ``2 * sum(j**2)`` with positive rank on ``Ci_n(J)``."""
    if not spec.connected:
        raise ContractError(f"{spec.key} is disconnected")
    return Divisor(_two_blocks(spec.n, spec.J))


def universal_degree(J) -> int:
    return 2 * sum(j * j for j in J)


def harary_even_bound(k: int) -> int:
    if k % 2 or k < 2:
        raise ContractError("harary_even_bound needs even k >= 2")
    return k * (k + 1) * (k + 2) // 12


def harary_odd_bound(k: int) -> int:
    if k % 2 == 0 or k < 3:
        raise ContractError("harary_odd_bound needs odd k >= 3")
    return (k - 1) * k * (k + 1) // 6


def _split_antipodal(n: int, J) -> tuple[int, ...]:
    if n % 2:
        raise ContractError(f"antipodal construction needs even n, got {n}")
    J = tuple(J)
    if not J or J[-1] != n // 2:
        raise ContractError(f"J must end with n/2 = {n // 2}, got {list(J)}")
    rest = J[:-1]
    if not rest:
        raise ContractError("J needs at least one entry besides n/2")
    return rest


def antipodal_divisor(n: int, J) -> Divisor:
    """Two copies of the two-block divisor, the second rotated by ``n/2``.

    ``J`` is the full adjacency list including ``n/2`` as its last entry.
    """
    rest = _split_antipodal(n, J)
    base = Divisor(_two_blocks(n, rest))
    return base + base.rotate(n // 2)


@dataclass
class TranslationStep:
    fired: frozenset[int]
    divisor: Divisor

    def to_dict(self) -> dict:
        return {"fired": sorted(v + 1 for v in self.fired), "divisor": self.divisor.to_sparse()}


@dataclass
class TranslationCertificate:
    """Outcome of replaying the block-translation firing sequence.

    ``steps`` logs every set fired and the divisor it produced.  When the
    replay does not apply (antipodal copies too close together) ``method``
    is ``"rank"`` and validity comes from the reduction engine instead.
    """

    valid: bool
    method: str
    initial: Divisor
    steps: list[TranslationStep] = field(default_factory=list)
    failed_step: int | None = None
    reason: str | None = None

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "method": self.method,
            "steps": len(self.steps),
            "failed_step": self.failed_step,
            "reason": self.reason,
            "log": [s.to_dict() for s in self.steps],
        }


def _expected(n: int, prof: list[int], s: int, copies: int) -> list[int]:
    chips = [0] * n
    for c in range(copies):
        off = c * n // copies
        for o, val in enumerate(prof):
            chips[(o + s + off) % n] += val
            chips[(n - 1 - o - s + off) % n] += val
    return chips


def verify_translation(spec: CirculantSpec, antipodal: bool = False) -> TranslationCertificate:
    """Replay the firing sequence that slides the chip blocks around the cycle.

    Step ``t`` fires the arc ``v1..v_{j_k+t}`` together with
    ``v_{n-j_k+1-t}..vn`` (and, in antipodal mode, the same arc rotated by
    ``n/2``).  Each step must keep the divisor effective and move the left
    blocks one vertex clockwise and the right blocks one counterclockwise.
    The replay stops once every vertex has held a chip at some step.
    """
    G = circulant(spec)
    n = spec.n
    if antipodal:
        J = _split_antipodal(n, spec.J)
        D0 = antipodal_divisor(n, spec.J)
        copies = 2
        if n < 8 * J[-1] - 6:
            from .reduction import has_positive_rank

            ok = has_positive_rank(G, D0)
            return TranslationCertificate(ok, "rank", D0, reason=None if ok else "engine found no positive rank")
    else:
        if not spec.connected:
            raise ContractError(f"{spec.key} is disconnected")
        J = spec.J
        D0 = universal_divisor(spec)
        copies = 1
    jk = J[-1]
    prof = block_profile(J)
    cert = TranslationCertificate(True, "translation", D0)
    covered = set(D0.support)
    D = D0
    span = n // copies
    t = 0
    while len(covered) < n:
        if t >= (span + 1) // 2:
            cert.valid = False
            cert.failed_step = t
            cert.reason = "blocks met before every vertex received a chip"
            return cert
        arc = set(range(jk + t)) | set(range(n - jk - t, n))
        fired = frozenset((v + c * span) % n for v in arc for c in range(copies))
        D = fire_set(G, D, fired)
        cert.steps.append(TranslationStep(fired, D))
        if not D.is_effective:
            cert.valid = False
            cert.failed_step = t
            cert.reason = "firing introduced debt"
            return cert
        if list(D) != _expected(n, prof, t + 1, copies):
            cert.valid = False
            cert.failed_step = t
            cert.reason = "blocks did not translate by one position"
            return cert
        covered |= D.support
        t += 1
    return cert


def independent_complement_divisor(G: Multigraph, guard: int = 64) -> Divisor:
    """One chip on every vertex outside a maximum independent set."""
    S = max_independent_set(G, guard)
    return Divisor(0 if v in S else 1 for v in range(G.n))
