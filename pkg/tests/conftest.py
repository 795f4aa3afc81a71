import itertools

import numpy as np
import pytest

from kloose.matroid import MatroidRep


def dependent(M: MatroidRep, S) -> bool:
    return M.rank_of(S) < len(S)


def brute_circuits_through(M: MatroidRep, e: int, cap: int):
    """All circuits through e of size <= cap, by subset enumeration and rank tests."""
    others = [j for j in range(M.n) if j != e]
    out = []
    for size in range(1, cap + 1):
        for rest in itertools.combinations(others, size - 1):
            S = (e,) + rest
            if dependent(M, S) and all(not dependent(M, S[:i] + S[i + 1 :]) for i in range(len(S))):
                out.append(frozenset(S))
    return out


def brute_local_girth(M: MatroidRep, e: int, cap: int | None = None):
    hits = brute_circuits_through(M, e, cap or M.n)
    return min((len(c) for c in hits), default=float("inf"))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def identity(q, r):
    return MatroidRep(q, np.eye(r, dtype=int))


def identity_plus_ones(r, q=2):
    return MatroidRep(q, np.concatenate([np.eye(r, dtype=int), np.ones((r, 1), dtype=int)], axis=1))


U23 = MatroidRep(2, [[1, 0, 1], [0, 1, 1]])
