"""Seeded random matroid generators for the property suites."""

from __future__ import annotations

import numpy as np

from .constructions import extremal_k_loose
from .field import FieldSpec, VectorSpace, make_field
from .loose import looseness_index
from .matroid import MatroidRep, coloops, row_reduce


def random_matrix(rng: np.random.Generator, q: int, r_rows: int, n: int) -> MatroidRep:
    """Uniform entries; loops, parallel pairs and coloops all allowed."""
    return MatroidRep(make_field(q), rng.integers(0, q, size=(r_rows, n)))


def _normalized_codes(F: FieldSpec, r: int) -> np.ndarray:
    space = VectorSpace(F, r)
    codes = np.arange(1, space.size, dtype=np.int64)
    d = space.digits(codes)
    first = d[np.arange(len(codes)), np.argmax(d != 0, axis=1)]
    return codes[first == 1]


def random_simple(
    rng: np.random.Generator, q: int, r: int, n: int, coloop_free: bool = True, tries: int = 10_000
) -> MatroidRep:
    """Random simple rank-``r`` matroid on ``n`` elements (distinct projective points)."""
    F = make_field(q)
    pool = _normalized_codes(F, r)
    if n > len(pool):
        raise ValueError(f"GF({q})^{r} has only {len(pool)} points")
    space = VectorSpace(F, r)
    for _ in range(tries):
        codes = rng.choice(pool, size=n, replace=False)
        scales = rng.integers(1, q, size=n)
        cols = np.array([int(space.scale(np.int64(c), int(s))) for c, s in zip(codes, scales)])
        M = MatroidRep.from_codes(F, r, cols)
        if M.rank == r and not (coloop_free and coloops(M)):
            return M
    raise RuntimeError(f"no simple matroid found for q={q}, r={r}, n={n}")


def random_invertible(rng: np.random.Generator, F: FieldSpec, r: int) -> np.ndarray:
    while True:
        A = rng.integers(0, F.q, size=(r, r))
        if len(row_reduce(F, A)[1]) == r:
            return A


def scramble(rng: np.random.Generator, M: MatroidRep, keep=()) -> tuple[MatroidRep, list[int]]:
    """Random row operations, column scalings and a column shuffle.

    The matroid is unchanged up to relabelling; returns the new matroid and
    the old-to-new label map.  Labels in ``keep`` are tracked like any other.
    """
    F = M.field
    A = random_invertible(rng, F, M.r_rows)
    prod = np.zeros_like(M.entries)
    for i in range(M.r_rows):
        acc = np.zeros(M.n, dtype=np.int64)
        for t in range(M.r_rows):
            acc = F.add_table[acc, F.mul_table[A[i, t], M.entries[t]]]
        prod[i] = acc
    if F.q > 2:
        s = rng.integers(1, F.q, size=M.n)
        prod = F.mul_table[s[None, :], prod]
    perm = rng.permutation(M.n)  # new column j holds old column perm[j]
    new_of_old = [0] * M.n
    for j, old in enumerate(perm):
        new_of_old[int(old)] = j
    return MatroidRep(F, prod[:, perm]), new_of_old


def perturbed_extremal(rng: np.random.Generator, r: int, k: int, max_n: int = 24) -> MatroidRep:
    """An extremal k-loose construction with columns dropped and random columns added."""
    M, e = extremal_k_loose(r, k)
    F = M.field
    extra = [j for j in range(r + 1, M.n)]
    drop_floor = max(0, M.n - max_n + 3)
    drop = set(rng.choice(extra, size=min(len(extra), drop_floor + int(rng.integers(0, 4))), replace=False).tolist())
    cols = [int(c) for j, c in enumerate(M.column_codes) if j not in drop]
    pool = [int(c) for c in _normalized_codes(F, r) if int(c) not in set(cols)]
    add = int(rng.integers(0, 3))
    cols += [int(c) for c in rng.choice(pool, size=min(add, len(pool)), replace=False)]
    cols = cols[:max_n]
    return scramble(rng, MatroidRep.from_codes(F, r, cols))[0]


def series_pair_instance(rng: np.random.Generator, q: int, r: int, k: int, extras: int):
    """Rank-``r`` matroid containing a series pair ``{e, f}`` of k-loose elements.

    Built from a rank ``r - 1`` circuit with ``extras`` random columns added,
    by splitting its full-support column ``g`` into ``e = (g, 1)`` and
    ``f = (0, 1)``.  Returns ``None`` when ``g`` is not k-loose in the base.
    Returns ``(M, e, f)`` after scrambling otherwise.
    """
    F = make_field(q)
    s = r - 1
    g = rng.integers(1, q, size=s)
    cols = [np.eye(s, dtype=np.int64)[:, i] for i in range(s)] + [g]
    space = VectorSpace(F, s)
    seen = {int(space.undigits(np.array(c))) for c in cols}
    for _ in range(extras):
        c = rng.integers(0, q, size=s)
        code = int(space.undigits(c))
        if c.any() and code not in seen:
            cols.append(c)
            seen.add(code)
    N = MatroidRep.from_columns(F, s, cols)
    if not looseness_index(N, s).is_k_loose(k):
        return None
    A = np.zeros((r, N.n + 1), dtype=np.int64)
    A[:s, : N.n] = N.entries
    A[s, s] = 1  # e = (g, 1)
    A[s, N.n] = 1  # f = (0, 1)
    M, relabel = scramble(rng, MatroidRep(F, A))
    return M, relabel[s], relabel[N.n]
