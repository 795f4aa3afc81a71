"""Column matroids of matrices over GF(q).

A :class:`MatroidRep` is immutable; derived data (row-reduced form, rank)
is computed once on first use.  Ground-set labels are the column indices
``0..n-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .field import FieldSpec, encode_vector, make_field


class MatroidError(ValueError):
    pass


class NoDisjointBasis(MatroidError):
    """Every basis meets the avoid-set (it contains a coloop of the avoided part)."""


def row_reduce(F: FieldSpec, A: np.ndarray, order: Iterable[int] | None = None):
    """Reduced row echelon form of ``A`` with pivots chosen greedily along ``order``.

    Returns ``(R, pivots)``: ``R`` has one row per pivot (zero rows dropped) and
    column ``pivots[i]`` of ``R`` is the i-th unit vector.
    """
    A = np.array(A, dtype=np.int64, copy=True)
    nrows, ncols = A.shape
    if order is None:
        order = range(ncols)
    add, mul, neg, inv = F.add_table, F.mul_table, F.neg_table, F.inv_table
    row = 0
    pivots: list[int] = []
    for c in order:
        if row == nrows:
            break
        nz = np.flatnonzero(A[row:, c])
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            A[[row, piv]] = A[[piv, row]]
        if A[row, c] != 1:
            A[row] = mul[inv[A[row, c]], A[row]]
        f = A[:, c].copy()
        f[row] = 0
        hit = np.flatnonzero(f)
        if hit.size:
            A[hit] = add[A[hit], neg[mul[f[hit][:, None], A[row][None, :]]]]
        pivots.append(int(c))
        row += 1
    return A[:row], pivots


def _rank_gf2(codes: Iterable[int]) -> int:
    basis: dict[int, int] = {}
    for v in codes:
        v = int(v)
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


class MatroidRep:
    """The column matroid of an ``r_rows x n`` matrix over ``field``."""

    def __init__(self, field: FieldSpec | int, entries):
        if isinstance(field, int):
            field = make_field(field)
        A = np.array(entries, dtype=np.int64)
        if A.ndim != 2:
            if A.size == 0:
                A = A.reshape(0, 0)
            else:
                raise MatroidError(f"entries must be a 2-d array, got shape {A.shape}")
        if A.size and (A.min() < 0 or A.max() >= field.q):
            raise MatroidError(f"entries must lie in [0, {field.q})")
        A.flags.writeable = False
        self.field = field
        self.entries = A

    @classmethod
    def from_columns(cls, field: FieldSpec | int, r_rows: int, columns: Sequence[Sequence[int]]):
        if isinstance(field, int):
            field = make_field(field)
        A = np.zeros((r_rows, len(columns)), dtype=np.int64)
        for j, col in enumerate(columns):
            A[:, j] = col
        return cls(field, A)

    @classmethod
    def from_codes(cls, field: FieldSpec | int, r_rows: int, codes: Iterable[int]):
        """Columns given as encoded vectors ``sum(v_i q^i)``; row i holds digit i."""
        if isinstance(field, int):
            field = make_field(field)
        codes = np.asarray(list(codes), dtype=np.int64)
        pw = field.q ** np.arange(r_rows, dtype=np.int64)
        return cls(field, (codes[None, :] // pw[:, None]) % field.q)

    @property
    def r_rows(self) -> int:
        return self.entries.shape[0]

    @property
    def n(self) -> int:
        return self.entries.shape[1]

    @property
    def labels(self) -> range:
        return range(self.n)

    def __eq__(self, other):
        return (
            isinstance(other, MatroidRep)
            and self.field == other.field
            and self.entries.shape == other.entries.shape
            and bool(np.array_equal(self.entries, other.entries))
        )

    def __hash__(self):
        return hash((self.field.q, self.entries.shape, self.entries.tobytes()))

    def __repr__(self):
        return f"MatroidRep(GF({self.field.q}), {self.r_rows}x{self.n}, rank={self.rank})"

    @cached_property
    def rref(self) -> tuple[np.ndarray, list[int]]:
        R, piv = row_reduce(self.field, self.entries)
        R.flags.writeable = False
        return R, piv

    @cached_property
    def rank(self) -> int:
        if self.field.q == 2:
            return _rank_gf2(self.column_codes)
        return len(self.rref[1])

    @cached_property
    def column_codes(self) -> np.ndarray:
        """Each column encoded as ``sum(entry_i q^i)`` over the raw rows."""
        pw = self.field.q ** np.arange(self.r_rows, dtype=np.int64)
        out = pw @ self.entries if self.r_rows else np.zeros(self.n, dtype=np.int64)
        out.flags.writeable = False
        return out

    @cached_property
    def reduced_codes(self) -> np.ndarray:
        """Columns encoded in coordinates of the row-reduced form (``rank`` digits)."""
        R, _ = self.rref
        pw = self.field.q ** np.arange(R.shape[0], dtype=np.int64)
        out = pw @ R if R.shape[0] else np.zeros(self.n, dtype=np.int64)
        out.flags.writeable = False
        return out

    def column(self, j: int) -> list[int]:
        return [int(x) for x in self.entries[:, j]]

    def columns(self) -> list[list[int]]:
        return [self.column(j) for j in range(self.n)]

    def check_element(self, e) -> int:
        if isinstance(e, bool) or not isinstance(e, (int, np.integer)):
            raise MatroidError(f"element {e!r} is not an integer label")
        if not 0 <= int(e) < self.n:
            raise MatroidError(f"element {e} is not in the ground set 0..{self.n - 1}")
        return int(e)

    def rank_of(self, S: Iterable[int]) -> int:
        cols = sorted(set(S))
        if not cols:
            return 0
        if self.field.q == 2:
            return _rank_gf2(self.column_codes[cols])
        return len(row_reduce(self.field, self.entries[:, cols])[1])


def rank(M: MatroidRep) -> int:
    return M.rank


@dataclass(frozen=True)
class StandardForm:
    """``[I_r | Q]`` for a chosen basis.

    ``base`` column ``i`` represents original element ``col_map[i]``; its first
    ``r`` columns are the basis ``basis_labels`` in row order.
    """

    base: MatroidRep
    basis_labels: tuple[int, ...]
    col_map: tuple[int, ...]

    @property
    def r(self) -> int:
        return self.base.r_rows

    @property
    def Q(self) -> np.ndarray:
        return self.base.entries[:, self.r :]

    @property
    def position(self) -> dict[int, int]:
        return {label: i for i, label in enumerate(self.col_map)}

    def column_of(self, label: int) -> np.ndarray:
        return self.base.entries[:, self.position[label]]

    def to_original_labels(self, S: Iterable[int]) -> frozenset[int]:
        return frozenset(self.col_map[i] for i in S)


def standardize(
    M: MatroidRep,
    basis: Sequence[int] | None = None,
    avoid: Iterable[int] | None = None,
) -> StandardForm:
    """Row-reduce ``M`` so that a basis becomes the identity.

    With ``basis`` given, its order fixes the row order of the identity.
    Otherwise the basis is chosen greedily left to right among elements
    outside ``avoid``; :class:`NoDisjointBasis` is raised when no basis
    avoids that set.
    """
    F = M.field
    r = M.rank
    if basis is not None:
        basis = [M.check_element(b) for b in basis]
        if len(set(basis)) != len(basis) or len(basis) != r:
            raise MatroidError(f"basis must have {r} distinct elements, got {basis}")
        R, piv = row_reduce(F, M.entries, basis)
        if piv != basis:
            raise MatroidError(f"{basis} is dependent, not a basis")
    else:
        avoid_set = {M.check_element(a) for a in (avoid or ())}
        order = [j for j in range(M.n) if j not in avoid_set]
        R, piv = row_reduce(F, M.entries, order)
        if len(piv) < r:
            raise NoDisjointBasis(f"every basis meets {sorted(avoid_set)}")
    rest = [j for j in range(M.n) if j not in set(piv)]
    col_map = tuple(piv) + tuple(rest)
    base = MatroidRep(F, R[:, list(col_map)])
    return StandardForm(base, tuple(piv), col_map)


def _normalized_codes(M: MatroidRep) -> list[int]:
    F = M.field
    out = []
    for j in range(M.n):
        col = M.entries[:, j]
        nz = np.flatnonzero(col)
        if nz.size == 0:
            out.append(0)
            continue
        scaled = F.mul_table[F.inv_table[col[nz[0]]], col]
        out.append(encode_vector(F, scaled))
    return out


def is_simple(M: MatroidRep) -> bool:
    codes = _normalized_codes(M)
    return 0 not in codes and len(set(codes)) == len(codes)


def coloops(M: MatroidRep) -> frozenset[int]:
    R, piv = M.rref
    others = [j for j in range(M.n) if j not in set(piv)]
    out = set()
    for i, c in enumerate(piv):
        if not others or not R[i, others].any():
            out.add(c)
    return frozenset(out)


def is_cocircuit_pair(M: MatroidRep, e: int, f: int) -> bool:
    e, f = M.check_element(e), M.check_element(f)
    if e == f:
        raise MatroidError("a cocircuit pair needs two distinct elements")
    r = M.rank
    E = set(range(M.n))
    return (
        M.rank_of(E - {e, f}) == r - 1
        and M.rank_of(E - {e}) == r
        and M.rank_of(E - {f}) == r
    )


def delete(M: MatroidRep, S: Iterable[int]) -> tuple[MatroidRep, list[int]]:
    """Delete the columns in ``S``; returns the minor and its new-to-old label map."""
    drop = {M.check_element(s) for s in S}
    keep = [j for j in range(M.n) if j not in drop]
    return MatroidRep(M.field, M.entries[:, keep].reshape(M.r_rows, len(keep))), keep


def is_circuit_matroid(M: MatroidRep) -> bool:
    if M.n != M.rank + 1:
        return False
    R, piv = M.rref
    (c,) = [j for j in range(M.n) if j not in set(piv)]
    # kernel vector: 1 at c, -R[i, c] at piv[i]
    return bool(np.all(R[:, c] != 0))
