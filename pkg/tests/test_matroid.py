import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import U23, brute_circuits_through, identity, identity_plus_ones
from kloose.constructions import extremal_k_loose
from kloose.matroid import (
    MatroidError,
    MatroidRep,
    NoDisjointBasis,
    coloops,
    delete,
    is_circuit_matroid,
    is_cocircuit_pair,
    is_simple,
    rank,
    standardize,
)
from kloose.randgen import random_matrix


def test_rank_examples():
    assert rank(identity(2, 3)) == 3
    assert rank(identity_plus_ones(3)) == 3
    assert rank(MatroidRep(2, np.zeros((2, 3), dtype=int))) == 0


def test_rank_redundant_rows():
    M = MatroidRep(3, [[1, 2, 0], [2, 1, 0], [0, 0, 1]])
    assert M.rank == 2
    assert M.rank <= M.r_rows


def test_bad_entries_rejected():
    with pytest.raises(MatroidError):
        MatroidRep(2, [[0, 2]])
    with pytest.raises(MatroidError):
        MatroidRep(3, [1, 2, 0])


def test_standardize_already_standard():
    M = identity_plus_ones(3)
    sf = standardize(M, basis=[0, 1, 2])
    assert sf.base == M
    assert sf.col_map == (0, 1, 2, 3)


def test_standardize_avoid():
    sf = standardize(U23, avoid=[2])
    assert sf.basis_labels == (0, 1)
    assert sf.base.entries[:, :2].tolist() == [[1, 0], [0, 1]]


def test_standardize_no_disjoint_basis():
    with pytest.raises(NoDisjointBasis):
        standardize(identity(2, 2), avoid=[0])


def test_standardize_rejects_dependent_basis():
    with pytest.raises(MatroidError):
        standardize(identity_plus_ones(3), basis=[0, 1])
    M = MatroidRep(2, [[1, 1, 0], [0, 0, 1]])
    with pytest.raises(MatroidError, match="dependent"):
        standardize(M, basis=[0, 1])


def test_standardize_drops_zero_rows_and_orders_identity():
    M = MatroidRep(3, [[1, 1, 2, 0], [2, 2, 1, 0], [0, 1, 1, 1]])
    sf = standardize(M, basis=[3, 0])
    assert sf.r == M.rank == 2
    assert sf.base.entries[:, :2].tolist() == [[1, 0], [0, 1]]
    assert sf.basis_labels == (3, 0)


def test_is_simple_examples():
    assert is_simple(identity_plus_ones(3))
    assert not is_simple(MatroidRep(2, [[1, 1, 0], [0, 0, 1]]))
    assert not is_simple(MatroidRep(3, [[1, 2, 0], [2, 1, 1]]))
    assert not is_simple(MatroidRep(2, [[1, 0], [0, 0]]))


def test_coloops_examples():
    assert coloops(identity(2, 3)) == {0, 1, 2}
    assert coloops(identity_plus_ones(5)) == frozenset()


def test_coloops_of_extremal_by_deletion_rank():
    M, _ = extremal_k_loose(5, 1)
    by_deletion = {e for e in range(M.n) if delete(M, [e])[0].rank == M.rank - 1}
    assert by_deletion == set() == set(coloops(M))


def test_cocircuit_pair_examples():
    for e, f in [(0, 1), (0, 2), (1, 2)]:
        r = U23.rank
        assert U23.rank_of({0, 1, 2} - {e, f}) == r - 1
        assert is_cocircuit_pair(U23, e, f)
    assert not is_cocircuit_pair(identity(2, 2), 0, 1)
    C = identity_plus_ones(3)
    assert C.rank_of({1, 2}) == 2 and C.rank_of({1, 2, 3}) == 3
    assert is_cocircuit_pair(C, 0, 3)


def test_cocircuit_pair_errors():
    with pytest.raises(MatroidError):
        is_cocircuit_pair(U23, 1, 1)
    with pytest.raises(MatroidError):
        is_cocircuit_pair(U23, 0, 3)


def test_delete_examples():
    M, labels = delete(identity(2, 3), {2})
    assert M.entries.tolist() == [[1, 0], [0, 1], [0, 0]] and labels == [0, 1]
    N = identity_plus_ones(3)
    assert delete(N, set())[0] == N
    assert delete(N, {3})[0] == identity(2, 3)


def test_is_circuit_matroid_examples():
    assert is_circuit_matroid(identity_plus_ones(4))
    assert not is_circuit_matroid(identity(2, 3))
    assert not is_circuit_matroid(MatroidRep(2, [[1, 0, 1], [0, 1, 0]]))
    assert is_circuit_matroid(MatroidRep(3, [[1, 0, 2], [0, 1, 2]]))


matrices = st.tuples(st.sampled_from([2, 3]), st.integers(1, 5), st.integers(1, 8), st.integers(0, 2**32 - 1)).map(
    lambda t: random_matrix(np.random.default_rng(t[3]), t[0], t[1], t[2])
)


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_deletion_drops_rank_by_at_most_one(M):
    for e in range(M.n):
        assert delete(M, [e])[0].rank in (M.rank, M.rank - 1)


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_cocircuit_pair_symmetric_and_coloops_exclude_circuits(M):
    for e in range(M.n):
        for f in range(e + 1, M.n):
            assert is_cocircuit_pair(M, e, f) == is_cocircuit_pair(M, f, e)
    if coloops(M):
        assert not is_circuit_matroid(M)
    by_deletion = {e for e in range(M.n) if delete(M, [e])[0].rank == M.rank - 1}
    assert by_deletion == set(coloops(M))


def test_standard_form_preserves_small_circuits():
    rng = np.random.default_rng(2024)
    for i in range(100):
        q = 2 if i % 2 == 0 else 3
        M = random_matrix(rng, q, int(rng.integers(1, 6)), int(rng.integers(2, 9)))
        sf = standardize(M)
        cap = min(6, M.n)
        orig = set()
        for e in range(M.n):
            orig |= set(brute_circuits_through(M, e, cap))
        mapped = set()
        for i2 in range(sf.base.n):
            mapped |= {sf.to_original_labels(c) for c in brute_circuits_through(sf.base, i2, cap)}
        assert orig == mapped
