"""Explicit binary matroids: the extremal k-loose family, Reed-Muller R(1, m), circuits."""

from __future__ import annotations

import itertools

import numpy as np

from .field import make_field
from .matroid import MatroidRep


class ConstructionError(ValueError):
    pass


def extremal_k_loose(r: int, k: int) -> tuple[MatroidRep, int]:
    """Rank-``r`` binary matroid of size ``2**k * (r - k + 1)`` with a k-loose element.

    Returns the matroid and the label of the loose element, which is the first
    column after the identity.  The loose column is zero on the top ``k`` rows
    and one below.  The remaining columns come in groups sharing their top-``k``
    pattern (a nonzero ``k``-bit integer, ascending; bit ``i`` is row ``i``).
    Each group's lower parts run through the ``r - k`` unit vectors, followed
    by the zero vector when the pattern has weight two or more.
    """
    if r < 2 or not 0 <= k <= r - 2:
        raise ConstructionError(f"need r >= 2 and 0 <= k <= r - 2, got r={r}, k={k}")
    low = r - k
    cols = [np.eye(r, dtype=np.int64)[:, i] for i in range(r)]
    e = np.zeros(r, dtype=np.int64)
    e[k:] = 1
    cols.append(e)
    for pattern in range(1, 1 << k):
        top = [(pattern >> i) & 1 for i in range(k)]
        roots = [np.eye(low, dtype=np.int64)[:, i] for i in range(low)]
        if sum(top) >= 2:
            roots.append(np.zeros(low, dtype=np.int64))
        for root in roots:
            cols.append(np.concatenate([np.array(top, dtype=np.int64), root]))
    return MatroidRep(make_field(2), np.stack(cols, axis=1)), r


def reed_muller_r1(m: int) -> MatroidRep:
    """Generator matrix of R(1, m): columns ``(1, x)`` for ``x`` in GF(2)^m, lexicographic."""
    if m < 2:
        raise ConstructionError(f"need m >= 2, got {m}")
    pts = list(itertools.product((0, 1), repeat=m))
    A = np.array([[1] * len(pts)] + [[x[i] for x in pts] for i in range(m)], dtype=np.int64)
    return MatroidRep(make_field(2), A)


def circuit_matroid(r: int) -> MatroidRep:
    """``[I_r | all-ones]``, the binary circuit on ``r + 1`` elements."""
    if r < 1:
        raise ConstructionError(f"need r >= 1, got {r}")
    A = np.concatenate([np.eye(r, dtype=np.int64), np.ones((r, 1), dtype=np.int64)], axis=1)
    return MatroidRep(make_field(2), A)
