"""Closed-form size and rank bounds, and their evaluation on concrete matroids.

Theorem identifiers (the ``--theorem`` values of the CLI):

``T1.1``  binary, one k-loose element:    ``|E| <= 2^k (r - k + 1)``
``T1.2``  GF(q), two k-loose elements:     ``r <= (q+1)(k-1) + 2q`` unless they form a cocircuit
``C1.3``  GF(q), k-paving:                 same rank bound unless ``M`` is a circuit
``C3.4``  binary k-paving:                 ``r <= 3k + 1`` unless a circuit
``C3.5``  ternary k-paving:                ``r <= 4k + 2`` unless a circuit
``T1.4``  binary k-paving, ``r >= k + 4``:  ``r <= 3k + 1`` and ``|E| <= (r+1) + sum_{i<=t} C(k, i)``
``C1.6``  binary 3-paving, rank >= 7:      ``r <= 10`` and ``|E| <= 12, 13, 11, 12`` for ``r = 7..10``
``T3.1``  ternary, one 1-loose element:    ``|E| <= floor((41r-101)/2)`` (r > 10), else ``floor((35r-35)/2)``
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

from .field import SUPPORTED_ORDERS
from .io import format_matrix
from .loose import paving_report
from .matroid import MatroidRep, coloops, is_circuit_matroid, is_cocircuit_pair, is_simple

THEOREMS = ("T1.1", "T1.2", "C1.3", "T1.4", "C1.6", "T3.1", "C3.4", "C3.5")

HOLDS = "holds"
ATTAINED = "attained"
NOT_MET = "hypothesis-not-met"
VIOLATION = "VIOLATION"


class BoundError(ValueError):
    pass


def bound_size_one_loose(r: int, k: int) -> int:
    return 2**k * (r - k + 1)


def one_loose_applicable(r: int, k: int) -> bool:
    return r >= 5 and 0 <= k and 3 * k <= r - 2


def bound_rank_two_loose(q: int, k: int) -> int:
    if q not in SUPPORTED_ORDERS:
        raise BoundError(f"unsupported field order {q}")
    return (q + 1) * (k - 1) + 2 * q


def kpaving_t(r: int, k: int) -> int:
    return (3 * k + 1 - r) // 2


def bound_size_kpaving(r: int, k: int) -> int:
    """``(r + 1) + sum_{i=0}^{t} C(k, i)`` with ``t = floor((3k + 1 - r) / 2)``.

    For ``t < 0`` the sum is empty; see :func:`kpaving_applicable`.
    """
    t = kpaving_t(r, k)
    return (r + 1) + sum(comb(k, i) for i in range(t + 1))


def kpaving_applicable(r: int, k: int) -> bool:
    return k + 4 <= r <= 3 * k + 1


def bound_ternary_one_loose(r: int) -> int:
    if r < 5:
        raise BoundError(f"the ternary size bound needs rank >= 5, got {r}")
    if r > 10:
        return (41 * r - 101) // 2
    return (35 * r - 35) // 2


THREE_PAVING_TABLE = {r: bound_size_kpaving(r, 3) for r in range(7, 11)}


@dataclass
class BoundEvaluation:
    theorem: str
    params: dict
    hypotheses: list[dict] = field(default_factory=list)
    bound_value: int | None = None
    observed_value: int | None = None
    verdict: str = NOT_MET
    escape: str | None = None
    flags: list[str] = field(default_factory=list)
    certificate: str | None = None

    def check(self, name: str, passed: bool) -> None:
        self.hypotheses.append({"name": name, "passed": bool(passed)})

    @property
    def hypotheses_met(self) -> bool:
        return all(h["passed"] for h in self.hypotheses)

    def as_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "params": self.params,
            "hypotheses": self.hypotheses,
            "bound_value": self.bound_value,
            "observed_value": self.observed_value,
            "verdict": self.verdict,
            "escape": self.escape,
            "flags": self.flags,
            "certificate": self.certificate,
        }


_FIELD_OF = {"T1.1": 2, "T1.4": 2, "C1.6": 2, "C3.4": 2, "C3.5": 3, "T3.1": 3}
_FIXED_K = {"C1.6": 3, "T3.1": 1}


def _compare(ev: BoundEvaluation) -> None:
    if ev.observed_value > ev.bound_value:
        ev.verdict = VIOLATION
    elif ev.observed_value == ev.bound_value:
        ev.verdict = ATTAINED
    else:
        ev.verdict = HOLDS


def evaluate(M: MatroidRep, theorem: str, k: int | None = None) -> BoundEvaluation:
    """Check a theorem's hypotheses on ``M`` and compare its bound with ``M``.

    Size bounds observe ``|E(M)|``; rank bounds observe ``rank(M)``.
    """
    if theorem not in THEOREMS:
        raise BoundError(f"unknown theorem {theorem!r}; choose from {', '.join(THEOREMS)}")
    want_q = _FIELD_OF.get(theorem)
    if want_q is not None and M.field.q != want_q:
        raise BoundError(f"{theorem} needs a GF({want_q}) matroid, got GF({M.field.q})")
    if theorem in _FIXED_K:
        if k is not None and k != _FIXED_K[theorem]:
            raise BoundError(f"{theorem} is stated for k = {_FIXED_K[theorem]} only")
        k = _FIXED_K[theorem]
    if k is None:
        raise BoundError(f"{theorem} needs k")
    if k < 0:
        raise BoundError("k must be non-negative")

    q, r, n = M.field.q, M.rank, M.n
    rep = paving_report(M)
    ev = BoundEvaluation(theorem, {"q": q, "r": r, "k": k})
    ev.check("simple", is_simple(M))
    ev.check("no coloops", not coloops(M))
    loose = [x.element for x in rep.per_element if x.is_k_loose(k)]

    if theorem == "T1.1":
        ev.check("rank >= 5", r >= 5)
        ev.check("0 <= k <= (r-2)/3", 3 * k <= r - 2)
        ev.check("k-loose element exists", bool(loose))
        ev.bound_value, ev.observed_value = bound_size_one_loose(r, k), n
        if ev.hypotheses_met:
            _compare(ev)

    elif theorem == "T1.2":
        if k == 0:
            ev.flags.append("outside stated range: k = 0")
        ev.check("two k-loose elements", len(loose) >= 2)
        ev.bound_value, ev.observed_value = bound_rank_two_loose(q, k), r
        if ev.hypotheses_met:
            if r <= ev.bound_value:
                _compare(ev)
            else:
                bad = next(
                    ((e, f) for e, f in itertools.combinations(loose, 2) if not is_cocircuit_pair(M, e, f)),
                    None,
                )
                if bad is None:
                    ev.verdict, ev.escape = HOLDS, "cocircuit-pair"
                else:
                    ev.verdict = VIOLATION
                    ev.flags.append(f"pair {bad[0]},{bad[1]} is not a cocircuit")

    elif theorem in ("C1.3", "C3.4", "C3.5"):
        if k == 0:
            ev.flags.append("outside stated range: k = 0")
        ev.check("k-paving", rep.is_k_paving(k))
        ev.bound_value, ev.observed_value = bound_rank_two_loose(q, k), r
        if ev.hypotheses_met:
            if is_circuit_matroid(M):
                ev.verdict, ev.escape = HOLDS, "circuit"
            else:
                _compare(ev)

    elif theorem in ("T1.4", "C1.6"):
        ev.check("k-paving", rep.is_k_paving(k))
        ev.check("not a circuit", not is_circuit_matroid(M))
        ev.check("rank >= k+4", r >= k + 4)
        ev.observed_value = n
        if r > 3 * k + 1:
            ev.flags.append("rank exceeds 3k+1")
        else:
            ev.bound_value = THREE_PAVING_TABLE.get(r) if theorem == "C1.6" else bound_size_kpaving(r, k)
        if ev.hypotheses_met:
            if ev.bound_value is None:
                ev.verdict = VIOLATION
            else:
                _compare(ev)

    elif theorem == "T3.1":
        ev.check("rank >= 5", r >= 5)
        ev.check("1-loose element exists", bool(loose))
        ev.bound_value = bound_ternary_one_loose(r) if r >= 5 else None
        ev.observed_value = n
        if ev.hypotheses_met:
            _compare(ev)

    if ev.verdict == VIOLATION:
        ev.certificate = format_matrix(M)
    return ev


def applicable_ks(M: MatroidRep, theorem: str) -> list[int]:
    """The k values at which ``theorem`` says something about ``M``."""
    r = M.rank
    if theorem in _FIXED_K:
        return [_FIXED_K[theorem]]
    if theorem == "T1.1":
        return list(range(0, (r - 2) // 3 + 1)) if r >= 2 else []
    if theorem == "T1.4":
        return [k for k in range(0, r + 1) if k + 4 <= r]
    return list(range(1, r + 2))
