import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from anyonbraid.basis import (
    BasisError,
    FusionTree,
    computational_indices,
    enumerate_basis,
    table_order_permutation,
    sector_of,
    state_index,
    tree_at,
)

from conftest import FIB, ISING, SIGMA

CASES = [(FIB, 1), (ISING, SIGMA)]


def brute_force_count(model, a, f, N):
    """Count admissible label vectors by trying every assignment."""
    n_labels = f * (N - 1) + (f - 1)
    count = 0
    for vec in itertools.product(range(model.n_charges), repeat=n_labels):
        inner = tuple(tuple(vec[q * (N - 1):(q + 1) * (N - 1)]) for q in range(f))
        tree = FusionTree(a, f, N, inner, tuple(vec[f * (N - 1):]))
        count += tree.is_admissible(model)
    return count


def transfer_counts(model, a, f, N):
    """Per-sector counts from products of fusion matrices."""
    fa = model.fusion[a].astype(np.int64)  # fa[b, c] = N_{a b}^c
    qudit = np.linalg.matrix_power(fa, N)[model.vacuum]  # multiplicity of each qudit total
    vec = qudit.copy()
    for _ in range(1, f):
        vec = np.einsum("x,y,xyz->z", vec, qudit, model.fusion)
    return {c: int(v) for c, v in enumerate(vec) if v}


def fib_numbers(k):
    a, b = 1, 1
    out = [a, b]
    while len(out) < k:
        a, b = b, a + b
        out.append(b)
    return out


def test_table_sizes(fib13, fib23):
    assert fib13.dim == 3
    assert fib23.dim == 13
    assert len(fib23.sectors[0]) == 5
    assert len(fib23.sectors[1]) == 8


@pytest.mark.parametrize("n", range(2, 13))
def test_single_qudit_fibonacci_counts(n):
    # Fib(1) = Fib(2) = 1, so the n-anyon total is Fib(n + 1)
    assert enumerate_basis(FIB, 1, 1, n).dim == fib_numbers(n + 1)[n]


def test_regrouping_small_example():
    assert enumerate_basis(FIB, 1, 2, 2).dim == enumerate_basis(FIB, 1, 1, 4).dim == 5


@pytest.mark.parametrize("model,a", CASES, ids=["fibonacci", "ising"])
@pytest.mark.parametrize("f,N", [(f, N) for f in (1, 2, 3) for N in (2, 3, 4, 5)])
def test_counts_match_transfer_matrix(model, a, f, N):
    space = enumerate_basis(model, a, f, N)
    got = {c: len(idx) for c, idx in space.sectors.items()}
    assert got == transfer_counts(model, a, f, N)


@pytest.mark.parametrize("model,a", CASES, ids=["fibonacci", "ising"])
@pytest.mark.parametrize("f,N", [(1, 2), (1, 5), (2, 3), (2, 4), (3, 2), (3, 3), (2, 5)])
def test_counts_match_brute_force(model, a, f, N):
    assert enumerate_basis(model, a, f, N).dim == brute_force_count(model, a, f, N)


@given(st.sampled_from(CASES), st.integers(1, 3), st.integers(2, 4))
def test_regrouping_preserves_sector_sizes(case, f, N):
    model, a = case
    grouped = enumerate_basis(model, a, f, N)
    flat = enumerate_basis(model, a, 1, f * N)
    assert {c: len(v) for c, v in grouped.sectors.items()} == {c: len(v) for c, v in flat.sectors.items()}


@given(st.sampled_from(CASES), st.integers(1, 3), st.integers(2, 4))
def test_enumeration_invariants(case, f, N):
    model, a = case
    space = enumerate_basis(model, a, f, N)
    assert all(t.is_admissible(model) for t in space.states)
    assert len(set(space.states)) == space.dim
    vectors = [t.label_vector() for t in space.states]
    assert vectors == sorted(vectors)
    positions = sorted(i for idx in space.sectors.values() for i in idx)
    assert positions == list(range(space.dim))
    for c, idx in space.sectors.items():
        assert all(space.states[i].total_charge() == c for i in idx)


def test_enumeration_is_deterministic():
    a = enumerate_basis(ISING, SIGMA, 2, 4)
    b = enumerate_basis(ISING, SIGMA, 2, 4)
    assert a.states == b.states


def test_round_trip_indices(fib23):
    for i in range(fib23.dim):
        assert state_index(fib23, tree_at(fib23, i)) == i


def test_unknown_tree_raises(fib23):
    bogus = FusionTree(1, 2, 3, ((0, 0), (0, 1)), (1,))
    with pytest.raises(BasisError):
        state_index(fib23, bogus)
    with pytest.raises(BasisError):
        tree_at(fib23, 13)


def test_invalid_parameters():
    with pytest.raises(ValueError):
        enumerate_basis(FIB, 1, 0, 3)
    with pytest.raises(ValueError):
        enumerate_basis(FIB, 1, 2, 1)


def test_table_permutation_two_qubits(fib23):
    perm = table_order_permutation(fib23)
    assert sorted(perm) == list(range(13))
    inv = np.argsort(perm)
    assert np.array_equal(perm[inv], np.arange(13))
    assert np.array_equal(inv[perm], np.arange(13))
    row1 = tree_at(fib23, perm[1])
    assert row1.notation(FIB) == "|(((1, 1)_0, 1)_1, ((1, 1)_0, 1)_1)_0>"
    assert sector_of(fib23, perm[0]) == 0
    assert sector_of(fib23, perm[12]) == 1
    assert [sector_of(fib23, i) for i in perm] == [0] * 5 + [1] * 8
    # row 0 is |22>_0: both qudits carry the non-computational label i1 = 1, i2 = 0
    assert tree_at(fib23, perm[0]).inner == ((1, 0), (1, 0))


def test_table_permutation_one_qubit(fib13):
    perm = table_order_permutation(fib13)
    assert [tree_at(fib13, i).inner[0][0] for i in perm] == [1, 0, 1]
    assert sorted(perm) == [0, 1, 2]


def test_computational_indices(fib23):
    perm = table_order_permutation(fib23)
    assert computational_indices(fib23, 0) == tuple(perm[[1, 2, 3, 4]])
    assert computational_indices(fib23, 1) == tuple(perm[[9, 10, 11, 12]])
    for s in (0, 1):
        for i in computational_indices(fib23, s):
            t = tree_at(fib23, i)
            assert sector_of(fib23, i) == s
            assert all(q[-1] == 1 for q in t.inner)  # both qubits have total charge 1


def test_permutation_unsupported_space():
    with pytest.raises(BasisError):
        table_order_permutation(enumerate_basis(FIB, 1, 2, 2))
    with pytest.raises(BasisError):
        table_order_permutation(enumerate_basis(ISING, SIGMA, 2, 3))
    with pytest.raises(BasisError):
        computational_indices(enumerate_basis(FIB, 1, 1, 3), 0)


def test_notation_single_qudit(fib13):
    assert [t.notation(FIB) for t in fib13.states] == [
        "|((1, 1)_0, 1)_1>",
        "|((1, 1)_1, 1)_0>",
        "|((1, 1)_1, 1)_1>",
    ]
