"""Girth, local girth, k-loose elements and k-paving matroids.

An element ``e`` of a rank-``r`` matroid is k-loose when every circuit through
it has more than ``r - k`` elements, i.e. ``local_girth(e) > r - k``.  The
matroid is k-paving when all of its elements are, i.e. ``girth > r - k``.

Local girth is ``1 +`` the least number of other columns whose span contains
column ``e``.  It is computed by breadth-first search from the zero vector
over the ``q**rank`` points of the column space, stepping by nonzero
multiples of the other columns, until column ``e`` is reached.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .field import VectorSpace
from .matroid import MatroidError, MatroidRep, StandardForm, coloops, standardize

INFINITE = math.inf

MAX_RANK_BINARY = 20
MAX_RANK_OTHER = 12
MAX_STATES_OTHER = 1 << 22
DEFAULT_ORACLE_BUDGET = 20_000_000


class BudgetError(RuntimeError):
    """A computation would exceed its declared size or node budget."""


@dataclass(frozen=True)
class LooseReport:
    element: int
    local_girth: int | float
    looseness_index: int
    witness: tuple[int, ...] | None
    rank: int

    @property
    def coloop(self) -> bool:
        return self.local_girth == INFINITE

    def is_k_loose(self, k: int) -> bool:
        return self.local_girth > self.rank - k

    def as_dict(self) -> dict:
        return {
            "element": self.element,
            "local_girth": "infinite" if self.coloop else int(self.local_girth),
            "looseness_index": self.looseness_index,
            "coloop": self.coloop,
            "witness": list(self.witness) if self.witness is not None else None,
        }


@dataclass(frozen=True)
class PavingReport:
    rank: int
    girth: int | float
    paving_index: int
    per_element: tuple[LooseReport, ...] = field(repr=False)

    def is_k_paving(self, k: int) -> bool:
        return self.girth > self.rank - k

    def as_dict(self) -> dict:
        return {
            "rank": self.rank,
            "girth": "infinite" if self.girth == INFINITE else int(self.girth),
            "paving_index": self.paving_index,
            "elements": [rep.as_dict() for rep in self.per_element],
        }


def _check_state_space(M: MatroidRep) -> None:
    q, r = M.field.q, M.rank
    if q == 2:
        if r > MAX_RANK_BINARY:
            raise BudgetError(f"binary rank {r} exceeds the search cap {MAX_RANK_BINARY}")
    elif r > MAX_RANK_OTHER or q**r > MAX_STATES_OTHER:
        raise BudgetError(f"GF({q}) rank {r} exceeds the search cap ({q}^{r} states)")


def _bfs(space: VectorSpace, gens: np.ndarray, target: int) -> np.ndarray:
    """Layer distances from 0 using steps in ``gens``; stops once ``target`` is labelled.

    Every layer before the target's is complete, which is all the witness
    reconstruction needs.
    """
    dist = np.full(space.size, -1, dtype=np.int16)
    dist[0] = 0
    frontier = np.zeros(1, dtype=np.int64)
    layer = 0
    while frontier.size and dist[target] < 0:
        layer += 1
        found = []
        for g in gens:
            nb = space.add(frontier, int(g))
            nb = nb[dist[nb] < 0]
            if nb.size:
                dist[nb] = layer
                found.append(nb)
        frontier = np.unique(np.concatenate(found)) if found else np.zeros(0, dtype=np.int64)
    return dist


def local_girth(M: MatroidRep, e: int) -> tuple[int | float, tuple[int, ...] | None]:
    """Size of the smallest circuit through ``e`` and the lexicographically least such circuit.

    Returns ``(INFINITE, None)`` when ``e`` is a coloop.
    """
    e = M.check_element(e)
    codes = M.reduced_codes
    target = int(codes[e])
    if target == 0:
        return 1, (e,)
    if e in coloops(M):
        return INFINITE, None
    _check_state_space(M)
    space = VectorSpace(M.field, M.rank)

    others = [j for j in range(M.n) if j != e and codes[j] != 0]
    mults = {j: space.multiples(int(codes[j])) for j in others}
    gens = np.array(sorted({v for j in others for _, v in mults[j]}), dtype=np.int64)
    dist = _bfs(space, gens, target)
    need = int(dist[target])
    if need < 0:  # unreachable: e is outside the span of the rest
        return INFINITE, None

    # Greedy smallest-label reconstruction.  A label lies on some shortest
    # combination for t iff one of its multiples steps t down one layer, and
    # the remainder's shortest combinations never reuse a chosen label.
    chosen = []
    t = target
    while need:
        for j in others:
            hit = None
            for _, v in mults[j]:
                s = int(space.add(np.int64(t), v))
                if dist[s] == need - 1:
                    hit = s
                    break
            if hit is not None:
                chosen.append(j)
                t = hit
                need -= 1
                break
        else:  # pragma: no cover - guarded by the BFS layering
            raise AssertionError("witness reconstruction failed")
    return len(chosen) + 1, tuple(sorted(chosen + [e]))


def looseness_index(M: MatroidRep, e: int) -> LooseReport:
    lg, witness = local_girth(M, e)
    r = M.rank
    idx = 0 if lg == INFINITE else max(0, r - lg + 1)
    return LooseReport(int(e), lg, idx, witness, r)


def is_k_loose(M: MatroidRep, e: int, k: int) -> bool:
    if k < 0:
        raise ValueError("k must be non-negative")
    return local_girth(M, e)[0] > M.rank - k


def paving_report(M: MatroidRep) -> PavingReport:
    cached = M.__dict__.get("_paving_report")
    if cached is not None:
        return cached
    reps = tuple(looseness_index(M, e) for e in range(M.n))
    g = min((rep.local_girth for rep in reps), default=INFINITE)
    idx = 0 if g == INFINITE else max(0, M.rank - g + 1)
    report = PavingReport(M.rank, g, idx, reps)
    M.__dict__["_paving_report"] = report
    return report


def girth(M: MatroidRep) -> int | float:
    return paving_report(M).girth


def is_k_paving(M: MatroidRep, k: int) -> bool:
    if k < 0:
        raise ValueError("k must be non-negative")
    return girth(M) > M.rank - k


# -- brute-force oracle ---------------------------------------------------------


def circuits_through_oracle(
    M: MatroidRep, e: int, size_cap: int, budget: int = DEFAULT_ORACLE_BUDGET
) -> list[frozenset[int]]:
    """Every circuit through ``e`` with at most ``size_cap`` elements.

    Plain enumeration of independent subsets ``T`` of the other columns; ``T + e``
    is a circuit iff column ``e`` is a combination of ``T`` with every
    coefficient nonzero.  Works on the raw matrix, independent of the
    row-reduced data used by :func:`local_girth`.
    """
    e = M.check_element(e)
    if size_cap > M.n:
        raise ValueError(f"size_cap {size_cap} exceeds the ground set size {M.n}")
    if size_cap < 1:
        return []
    if not any(M.entries[:, e]):
        return [frozenset({e})]
    others = [j for j in range(M.n) if j != e]
    if M.field.q == 2:
        found = _oracle_gf2(M, e, others, size_cap - 1, budget)
    else:
        found = _oracle_gfq(M, e, others, size_cap - 1, budget)
    return sorted(found, key=lambda c: (len(c), sorted(c)))


def _oracle_gf2(M, e, others, depth, budget):
    col = [int(sum(int(x) << i for i, x in enumerate(M.entries[:, j]))) for j in range(M.n)]
    target = col[e]
    found = []
    nodes = 0

    def rec(start, T, acc, basis):
        nonlocal nodes
        for pos in range(start, len(others)):
            j = others[pos]
            nodes += 1
            if nodes > budget:
                raise BudgetError(f"oracle enumeration exceeded {budget} nodes")
            x = col[j]
            for b in basis:
                x = min(x, x ^ b)
            if x == 0:
                continue
            s = acc ^ col[j]
            if s == target:
                found.append(frozenset(T + [j, e]))
                continue
            if len(T) + 1 < depth:
                nb = sorted(basis + [x], reverse=True)
                rec(pos + 1, T + [j], s, nb)

    if depth > 0:
        rec(0, [], 0, [])
    return found


def _oracle_gfq(M, e, others, depth, budget):
    F = M.field
    add = F.add_table.tolist()
    mul = F.mul_table.tolist()
    neg = F.neg_table.tolist()
    inv = F.inv_table.tolist()
    cols = [tuple(int(x) for x in M.entries[:, j]) for j in range(M.n)]
    target = cols[e]
    rows = len(target)
    found = []
    nodes = 0

    def axpy(y, a, x):  # y - a*x
        na = neg[a]
        return [add[yi][mul[na][xi]] for yi, xi in zip(y, x)]

    def reduce(v, size, echelon):
        """Reduce ``v`` by the echelon rows, tracking the coefficients over T."""
        v = list(v)
        combo = [0] * size
        for p, b, c in echelon:
            a = v[p]
            if a:
                v = axpy(v, a, b)
                combo = [add[ci][mul[a][bi]] for ci, bi in zip(combo, c)]
        return v, combo

    def rec(start, T, echelon):
        nonlocal nodes
        size = len(T) + 1
        for pos in range(start, len(others)):
            j = others[pos]
            nodes += 1
            if nodes > budget:
                raise BudgetError(f"oracle enumeration exceeded {budget} nodes")
            grown = [(p, b, c + [0]) for p, b, c in echelon]
            v, combo = reduce(cols[j], size, grown)
            piv = next((i for i in range(rows) if v[i]), None)
            if piv is None:
                continue
            # row v = t_j - sum(combo_i t_i), scaled so the pivot is 1
            c = [neg[x] for x in combo]
            c[-1] = 1
            s = inv[v[piv]]
            row = (piv, [mul[s][x] for x in v], [mul[s][x] for x in c])
            ech = grown + [row]
            rest, lam = reduce(target, size, ech)
            if not any(rest) and all(lam):
                found.append(frozenset(T + [j, e]))
                continue
            if size < depth:
                rec(pos + 1, T + [j], ech)

    if depth > 0:
        rec(0, [], [])
    return found


def oracle_local_girth(M: MatroidRep, e: int, budget: int = DEFAULT_ORACLE_BUDGET) -> int | float:
    """Smallest circuit size through ``e`` by deepening the oracle's size cap."""
    for cap in range(1, M.n + 1):
        hits = circuits_through_oracle(M, e, cap, budget)
        if hits:
            return len(hits[0])
    return INFINITE


def is_circuit(M: MatroidRep, S) -> bool:
    """Rank test: ``S`` is dependent and each one-smaller subset is independent."""
    S = sorted(set(S))
    if not S or M.rank_of(S) != len(S) - 1:
        return False
    return all(M.rank_of(S[:i] + S[i + 1 :]) == len(S) - 1 for i in range(len(S)))


# -- standard forms used by the counting arguments ----------------------------


def _extend_to_basis(M: MatroidRep, part: Sequence[int]) -> list[int]:
    chosen = list(part)
    for j in range(M.n):
        if len(chosen) == M.rank:
            break
        if j not in chosen and M.rank_of(chosen + [j]) == len(chosen) + 1:
            chosen.append(j)
    return chosen


def zero_block_form(M: MatroidRep, e: int) -> tuple[StandardForm, int]:
    """Standard form in which column ``e`` is zero on the top ``k`` rows and one below.

    ``k`` is the looseness index of ``e``.  The basis is the smallest circuit
    through ``e`` minus ``e``, extended by ``k`` further elements placed on the
    top rows.  Binary matroids only.
    """
    if M.field.q != 2:
        raise MatroidError("zero-block forms are defined for binary matroids")
    rep = looseness_index(M, e)
    if rep.witness is None:
        raise MatroidError(f"element {e} is a coloop")
    circuit_rest = [x for x in rep.witness if x != e]
    full = _extend_to_basis(M, circuit_rest)
    top = full[len(circuit_rest) :]
    return standardize(M, basis=top + circuit_rest), rep.looseness_index


def loose_column_counts(M: MatroidRep, e: int) -> tuple[int, list[int]]:
    """For each Q-column other than ``e`` in :func:`zero_block_form`, count the zeroes
    among its top ``k`` entries plus the nonzero entries below them.  Each count
    is at most ``k + 1`` whenever ``e`` has looseness index ``k``.
    """
    sf, k = zero_block_form(M, e)
    pos = sf.position[e]
    counts = []
    for i in range(sf.r, sf.base.n):
        if i == pos:
            continue
        col = sf.base.entries[:, i]
        counts.append(int(np.sum(col[:k] == 0) + np.sum(col[k:] != 0)))
    return k, counts


def paving_sum_zero_counts(M: MatroidRep, max_terms: int = 3) -> tuple[int, dict[int, int]]:
    """Largest zero count of a sum of ``m`` distinct Q-columns, for ``m <= max_terms``.

    The standard form uses a basis containing ``C - e`` for the least smallest
    circuit ``C``.  For a binary matroid whose paving index is ``k`` every
    such sum has at most ``k + m - 1`` zeroes.  Returns ``(k, {m: worst})``.
    """
    if M.field.q != 2:
        raise MatroidError("defined for binary matroids")
    rep = paving_report(M)
    if rep.girth == INFINITE:
        raise MatroidError("matroid has no circuits")
    e = min(
        (x for x in rep.per_element if x.local_girth == rep.girth),
        key=lambda x: x.witness,
    )
    rest = [x for x in e.witness if x != e.element]
    sf = standardize(M, basis=_extend_to_basis(M, rest))
    Q = np.asarray(sf.Q, dtype=np.int64)
    worst = {}
    for m in range(1, max_terms + 1):
        best = -1
        for combo in itertools.combinations(range(Q.shape[1]), m):
            h = np.bitwise_xor.reduce(Q[:, list(combo)], axis=1)
            best = max(best, int(np.sum(h == 0)))
        if best >= 0:
            worst[m] = best
    return rep.paving_index, worst
