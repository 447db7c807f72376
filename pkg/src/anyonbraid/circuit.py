"""Braid words, their circuit unitaries, and comparison against target gates.

Word order is temporal: the leftmost ``(n, power)`` entry acts first, so
``compose`` multiplies right to left.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .basis import FusionSpace, computational_indices
from .braid import BraidMatrix, sigma, sigma_inverse
from .model import ChargeId
from .verify import GateComparison, leakage, spectral_distance


class WordError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    model: str
    anyon: str
    qudits: int
    anyons_per_qudit: int
    ops: tuple[tuple[int, int], ...]

    def __post_init__(self):
        n_gen = self.qudits * self.anyons_per_qudit - 1
        ops = tuple((int(n), int(p)) for n, p in self.ops)
        for n, p in ops:
            if not 1 <= n <= n_gen:
                raise WordError(f"generator {n} outside 1..{n_gen}")
            if p == 0:
                raise WordError(f"zero power for generator {n}")
        object.__setattr__(self, "ops", ops)

    def __len__(self):
        """Number of elementary exchanges, counting powers."""
        return sum(abs(p) for _, p in self.ops)

    def __add__(self, other: "BraidWord") -> "BraidWord":
        if self.params() != other.params():
            raise WordError("cannot concatenate words over different spaces")
        return BraidWord(self.model, self.anyon, self.qudits, self.anyons_per_qudit, self.ops + other.ops)

    def params(self):
        return (self.model, self.anyon, self.qudits, self.anyons_per_qudit)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.model, self.anyon, self.qudits, self.anyons_per_qudit,
                         tuple((n, -p) for n, p in reversed(self.ops)))

    @classmethod
    def for_space(cls, space: FusionSpace, ops: Sequence[tuple[int, int]]) -> "BraidWord":
        return cls(space.model.name, space.model.label(space.anyon), space.qudits, space.anyons_per_qudit, tuple(ops))


def _check_word(space: FusionSpace, word: BraidWord) -> None:
    mine = (space.model.name, space.model.label(space.anyon), space.qudits, space.anyons_per_qudit)
    if word.params() != mine:
        raise WordError(f"word is for (model, anyon, f, N) = {word.params()}, space is {mine}")


def compose(space: FusionSpace, word: BraidWord) -> BraidMatrix:
    _check_word(space, word)
    u = np.eye(space.dim, dtype=complex)
    for n, p in word.ops:
        g = (sigma(space, n) if p > 0 else sigma_inverse(space, n)).dense()
        for _ in range(abs(p)):
            u = g @ u
    return BraidMatrix(space, None, u)


@dataclass(frozen=True, eq=False)
class StateVector:
    space: FusionSpace
    amplitudes: np.ndarray

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def basis_state(space: FusionSpace, idx: int) -> StateVector:
    amps = np.zeros(space.dim, dtype=complex)
    amps[idx] = 1.0
    return StateVector(space, amps)


def apply(op: Union[BraidWord, BraidMatrix, np.ndarray], state: StateVector) -> StateVector:
    space = state.space
    if isinstance(op, BraidWord):
        _check_word(space, op)
        psi = state.amplitudes.astype(complex)
        for n, p in op.ops:
            g = (sigma(space, n) if p > 0 else sigma_inverse(space, n)).dense()
            for _ in range(abs(p)):
                psi = g @ psi
    else:
        if isinstance(op, BraidMatrix) and op.space is not space:
            raise WordError("matrix and state live on different spaces")
        mat = np.asarray(op)
        if mat.shape != (space.dim, space.dim):
            raise WordError(f"matrix shape {mat.shape} does not match space dimension {space.dim}")
        psi = mat @ state.amplitudes
    norm = np.linalg.norm(psi)
    return StateVector(space, psi / norm if norm else psi)


# |00>, |10>, |01>, |11> with the second qubit controlling a NOT on the first
CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
NAMED_GATES = {"cnot": CNOT, "identity": np.eye(4, dtype=complex)}


def compare_gate(
    space: FusionSpace,
    word: Union[BraidWord, BraidMatrix],
    target: Union[str, np.ndarray],
    sector: ChargeId,
    qubit_map: Sequence[int] | None = None,
) -> GateComparison:
    """Distance and leakage of the braid's computational block against ``target``.

    ``qubit_map`` lists the canonical basis indices encoding the target's
    basis states in order; it defaults to the Fibonacci two-qubit map for
    ``sector``.
    """
    if isinstance(target, str):
        try:
            target = NAMED_GATES[target.lower()]
        except KeyError:
            raise WordError(f"unknown gate {target!r}; choose from {sorted(NAMED_GATES)}") from None
    target = np.asarray(target, dtype=complex)
    if qubit_map is None:
        qubit_map = computational_indices(space, sector)
    qubit_map = [int(i) for i in qubit_map]
    allowed = set(space.sectors.get(sector, ()))
    bad = [i for i in qubit_map if i not in allowed]
    if bad:
        raise WordError(f"indices {bad} are not in sector {space.model.label(sector)}")
    if target.shape != (len(qubit_map), len(qubit_map)):
        raise WordError(f"target shape {target.shape} does not match {len(qubit_map)} computational states")
    u = compose(space, word).dense() if isinstance(word, BraidWord) else np.asarray(word)
    block = u[np.ix_(qubit_map, qubit_map)]
    dist, phase = spectral_distance(block, target)
    return GateComparison(dist, leakage(u, qubit_map), phase)
