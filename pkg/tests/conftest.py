import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from anyonbraid.basis import enumerate_basis
from anyonbraid.circuit import BraidWord
from anyonbraid.model import fibonacci_model, ising_model

settings.register_profile("default", max_examples=30, deadline=None)
settings.load_profile("default")

FIB = fibonacci_model()
ISING = ising_model()
SIGMA = ISING.charge("sigma")
PSI = ISING.charge("psi")


@pytest.fixture(scope="session")
def fib():
    return FIB


@pytest.fixture(scope="session")
def ising():
    return ISING


@pytest.fixture(scope="session")
def fib23():
    return enumerate_basis(FIB, 1, 2, 3)


@pytest.fixture(scope="session")
def fib13():
    return enumerate_basis(FIB, 1, 1, 3)


def random_unitary(rng, d):
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_ops(rng, n_gen, length, max_power=3):
    gens = rng.integers(1, n_gen + 1, size=length)
    powers = rng.choice([p for p in range(-max_power, max_power + 1) if p], size=length)
    return [(int(g), int(p)) for g, p in zip(gens, powers)]


def random_word(space, rng, length):
    return BraidWord.for_space(space, random_ops(rng, space.n_generators, length, max_power=1))


def ops_strategy(n_gen, max_len=12):
    op = st.tuples(st.integers(1, n_gen), st.sampled_from([-3, -2, -1, 1, 2, 3]))
    return st.lists(op, max_size=max_len)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
