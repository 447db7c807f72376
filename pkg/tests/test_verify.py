import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from anyonbraid.basis import enumerate_basis
from anyonbraid.braid import sigma, sigma_within
from anyonbraid.verify import (
    OracleCostError,
    basis_change,
    check_artin,
    leakage,
    oracle_sigma,
    spectral_distance,
)

from conftest import FIB, ISING, PSI, SIGMA, random_unitary

ORACLE_SPACES = [
    (m, a, f, N)
    for m, a in [(FIB, 1), (ISING, SIGMA)]
    for f in (1, 2, 3, 4)
    for N in (2, 3, 4)
    if f * N <= 8
]

X = np.array([[0, 1], [1, 0]], dtype=complex)


def space_id(p):
    m, a, f, N = p
    return f"{m.name}-{f}x{N}"


def test_artin_fibonacci_two_qubits(fib23):
    rep = check_artin(fib23)
    assert rep.max_residual <= 1e-13
    assert rep.max_yang_baxter_residual >= 0
    assert len(rep.relations) == 5 + 4 + 6


def test_artin_ising_2x2():
    rep = check_artin(enumerate_basis(ISING, SIGMA, 2, 2))
    assert rep.max_residual <= 1e-13


def test_artin_single_qudit(fib13):
    rep = check_artin(fib13)
    assert rep.max_yang_baxter_residual <= 1e-13
    assert rep.max_far_commutation_residual == 0.0
    assert [name for name, _ in rep.relations] == ["s1 s1^+ = I", "s2 s2^+ = I", "s1 s2 s1 = s2 s1 s2"]


def test_artin_detects_broken_generator():
    """Replacing sigma_3 by a different unitary must show up as a relation failure."""
    space = enumerate_basis(FIB, 1, 2, 3)
    sigma(space, 3)  # populate the cache, then overwrite
    bad = space._generators[3]
    space._generators[3] = type(bad)(space, 3, np.eye(13) * bad.dense()[0, 0])
    rep = check_artin(space)
    assert rep.max_yang_baxter_residual > 0.1


@pytest.mark.parametrize("params", ORACLE_SPACES, ids=space_id)
def test_oracle_matches_sigma(params):
    space = enumerate_basis(*params)
    for n in range(1, space.n_generators + 1):
        diff = np.abs(sigma(space, n).dense() - oracle_sigma(space, n).dense()).max()
        assert diff <= 1e-10


def test_oracle_is_sigma_within_for_one_qudit():
    space = enumerate_basis(FIB, 1, 1, 6)
    for n in range(1, 6):
        assert np.array_equal(oracle_sigma(space, n).dense(), sigma_within(space, n).dense())


@pytest.mark.parametrize("params", ORACLE_SPACES, ids=space_id)
def test_basis_change_unitary(params):
    space = enumerate_basis(*params)
    u, flat = basis_change(space)
    assert flat.dim == space.dim
    assert np.linalg.norm(u.conj().T @ u - np.eye(space.dim), 2) < 1e-12


def test_oracle_cost_guard():
    with pytest.raises(OracleCostError):
        oracle_sigma(enumerate_basis(FIB, 1, 3, 4), 1)


def test_oracle_ising_psi():
    space = enumerate_basis(ISING, PSI, 2, 3)
    for n in range(1, 6):
        assert np.abs(sigma(space, n).dense() - oracle_sigma(space, n).dense()).max() < 1e-10


def dense_scan_distance(u1, u2, samples=4000):
    thetas = np.linspace(0, 2 * math.pi, samples, endpoint=False)
    return min(np.linalg.norm(u1 - np.exp(1j * t) * u2, 2) for t in thetas)


def test_distance_identity_vs_x():
    d, phase = spectral_distance(np.eye(2), X)
    assert d == pytest.approx(math.sqrt(2), abs=1e-9)
    assert dense_scan_distance(np.eye(2), X) == pytest.approx(math.sqrt(2), abs=1e-6)
    # every phase gives sqrt(2) here; check the returned one is consistent
    assert np.linalg.norm(np.eye(2) - phase * X, 2) == pytest.approx(d, abs=1e-12)


def test_distance_zero_cases():
    rng = np.random.default_rng(1)
    u = random_unitary(rng, 4)
    assert spectral_distance(u, u)[0] < 1e-12
    for alpha in (0.3, 2.0, -2.9, math.pi):
        d, phase = spectral_distance(u, np.exp(1j * alpha) * u)
        assert d < 1e-10
        assert abs(phase - np.exp(-1j * alpha)) < 1e-8


def test_distance_beats_trace_alignment():
    rng = np.random.default_rng(7)
    for _ in range(20):
        u1 = random_unitary(rng, 4)
        u2 = random_unitary(rng, 4)
        d, _ = spectral_distance(u1, u2)
        t = np.angle(np.trace(u2.conj().T @ u1))
        assert d <= np.linalg.norm(u1 - np.exp(1j * t) * u2, 2) + 1e-12
        assert d <= dense_scan_distance(u1, u2) + 1e-12


def test_distance_shape_mismatch():
    with pytest.raises(ValueError):
        spectral_distance(np.eye(2), np.eye(3))
    with pytest.raises(ValueError):
        spectral_distance(np.ones((2, 3)), np.ones((2, 3)))


@given(st.integers(0, 2**32 - 1), st.integers(2, 4))
def test_distance_pseudometric(seed, d):
    rng = np.random.default_rng(seed)
    a, b, c = (random_unitary(rng, d) for _ in range(3))
    dab, dbc, dac = spectral_distance(a, b)[0], spectral_distance(b, c)[0], spectral_distance(a, c)[0]
    assert dab >= 0
    assert abs(dab - spectral_distance(b, a)[0]) < 1e-10
    assert dac <= dab + dbc + 1e-10
    assert dab <= 2 + 1e-12


def test_leakage_identity():
    assert leakage(np.eye(5), [0, 2, 3]) == pytest.approx(0.0, abs=1e-15)


def test_leakage_swap():
    u = np.eye(4)
    u[[1, 3]] = u[[3, 1]]  # swap state 1 (inside) with state 3 (outside)
    assert leakage(u, [0, 1, 2]) == pytest.approx(1.0)


def test_leakage_partial_rotation():
    t = 0.2
    u = np.eye(3, dtype=complex)
    u[np.ix_([1, 2], [1, 2])] = [[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]]
    assert leakage(u, [0, 1]) == pytest.approx(1 - math.cos(t), abs=1e-14)


def test_leakage_empty():
    with pytest.raises(ValueError):
        leakage(np.eye(2), [])


@pytest.mark.parametrize("params", [(FIB, 1, 2, 3), (ISING, SIGMA, 2, 3), (ISING, PSI, 2, 2)], ids=space_id)
def test_whole_sector_leakage_zero(params):
    space = enumerate_basis(*params)
    for n in range(1, space.n_generators + 1):
        for idx in space.sectors.values():
            assert leakage(sigma(space, n).dense(), idx) < 1e-12
