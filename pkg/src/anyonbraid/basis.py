"""Fusion-tree bases for ``f`` qudits of ``N`` identical anyons each.

A tree stores, for every qudit ``q``, the left-comb labels
``inner[q] = (i_{q1}, ..., i_{q,N-1})`` (``i_{q,N-1}`` is the qudit's total
charge) and the outer chain ``outer = (j_1, ..., j_{f-1})`` where
``j_q = j_{q-1} x i_{q+1,N-1}`` and ``j_0 = i_{1,N-1}``.

Canonical order is lexicographic in the concatenated label vector
``inner[0] + inner[1] + ... + outer``.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np

from .model import AnyonModel, ChargeId


class BasisError(LookupError):
    pass


@dataclass(frozen=True)
class FusionTree:
    anyon: ChargeId
    qudits: int
    anyons_per_qudit: int
    inner: tuple[tuple[ChargeId, ...], ...]
    outer: tuple[ChargeId, ...]

    def qudit_total(self, q: int) -> ChargeId:
        """Total charge of qudit ``q`` (0-based)."""
        return self.inner[q][-1]

    def j(self, q: int, vacuum: ChargeId = 0) -> ChargeId:
        """Outer label ``j_q``; ``j_0`` is the first qudit total, negative ``q`` the vacuum."""
        if q < 0:
            return vacuum
        if q == 0:
            return self.qudit_total(0)
        return self.outer[q - 1]

    def total_charge(self) -> ChargeId:
        return self.outer[-1] if self.outer else self.inner[0][-1]

    def label_vector(self) -> tuple[ChargeId, ...]:
        return sum(self.inner, ()) + self.outer

    def replace(self, inner=None, outer=None) -> "FusionTree":
        return FusionTree(
            self.anyon,
            self.qudits,
            self.anyons_per_qudit,
            self.inner if inner is None else inner,
            self.outer if outer is None else outer,
        )

    def is_admissible(self, model: AnyonModel) -> bool:
        a = self.anyon
        if len(self.inner) != self.qudits or len(self.outer) != self.qudits - 1:
            return False
        for labels in self.inner:
            if len(labels) != self.anyons_per_qudit - 1:
                return False
            prev = a
            for c in labels:
                if not model.admissible(prev, a, c):
                    return False
                prev = c
        for q in range(1, self.qudits):
            if not model.admissible(self.j(q - 1), self.qudit_total(q), self.j(q)):
                return False
        return True

    def notation(self, model: AnyonModel) -> str:
        """Parenthesised ket, e.g. ``|(((1, 1)_0, 1)_1, ((1, 1)_1, 1)_0)_1>``."""
        lab = model.label
        a = lab(self.anyon)

        def comb(labels):
            s = a
            for c in labels:
                s = f"({s}, {a})_{lab(c)}"
            return s

        s = comb(self.inner[0])
        for q in range(1, self.qudits):
            s = f"({s}, {comb(self.inner[q])})_{lab(self.j(q))}"
        return f"|{s}>"


@dataclass(frozen=True, eq=False)
class FusionSpace:
    model: AnyonModel
    anyon: ChargeId
    qudits: int
    anyons_per_qudit: int
    states: tuple[FusionTree, ...]
    index: dict = field(repr=False)
    sectors: dict = field(repr=False)
    _generators: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def dim(self) -> int:
        return len(self.states)

    @property
    def n_anyons(self) -> int:
        return self.qudits * self.anyons_per_qudit

    @property
    def n_generators(self) -> int:
        return self.n_anyons - 1

    def __len__(self):
        return len(self.states)

    def sector_labels(self) -> np.ndarray:
        """Total charge of every basis state, as an array indexed by position."""
        return np.array([t.total_charge() for t in self.states], dtype=np.int64)


def _qudit_chains(model: AnyonModel, a: ChargeId, n: int):
    """All admissible left-comb label tuples for ``n`` leaves, in lexicographic order."""
    out = []

    def rec(prev, acc):
        if len(acc) == n - 1:
            out.append(tuple(acc))
            return
        for c in model.fuse(prev, a):
            acc.append(c)
            rec(c, acc)
            acc.pop()

    rec(a, [])
    return out


def enumerate_basis(model: AnyonModel, anyon: ChargeId, f: int, N: int) -> FusionSpace:
    """Enumerate the fusion-tree basis in canonical order.

    Parameters
    ----------
    model : AnyonModel
    anyon : ChargeId
        The identical leaf charge.
    f : int
        Number of qudits, at least 1.
    N : int
        Anyons per qudit, at least 2.
    """
    if f < 1:
        raise ValueError(f"need at least one qudit, got f={f}")
    if N < 2:
        raise ValueError(f"need at least two anyons per qudit, got N={N}")
    anyon = model.charge(anyon)
    chains = _qudit_chains(model, anyon, N)
    states = []

    def rec(inner):
        if len(inner) < f:
            for ch in chains:
                rec(inner + [ch])
            return
        outer_rec(tuple(inner), [])

    def outer_rec(inner, outer):
        q = len(outer) + 1
        if q == f:
            states.append(FusionTree(anyon, f, N, inner, tuple(outer)))
            return
        prev = inner[0][-1] if q == 1 else outer[-1]
        for j in model.fuse(prev, inner[q][-1]):
            outer.append(j)
            outer_rec(inner, outer)
            outer.pop()

    rec([])
    index = {t: i for i, t in enumerate(states)}
    sectors: dict[ChargeId, list[int]] = {}
    for i, t in enumerate(states):
        sectors.setdefault(t.total_charge(), []).append(i)
    return FusionSpace(model, anyon, f, N, tuple(states), index, {c: tuple(v) for c, v in sorted(sectors.items())})


def state_index(space: FusionSpace, tree: FusionTree) -> int:
    try:
        return space.index[tree]
    except KeyError:
        raise BasisError(f"tree {tree} is not a basis state of this space") from None


def tree_at(space: FusionSpace, idx: int) -> FusionTree:
    if not 0 <= idx < space.dim:
        raise BasisError(f"index {idx} out of range for a space of dimension {space.dim}")
    return space.states[idx]


def sector_of(space: FusionSpace, idx: int) -> ChargeId:
    return tree_at(space, idx).total_charge()


# Rows of the reference one- and two-qubit Fibonacci tables, as
# (per-qudit (i_1, i_2) labels, total charge).
_TABLE_1Q = [((1, 0),), ((0, 1),), ((1, 1),)]
_TABLE_2Q = [
    (((1, 0), (1, 0)), 0),
    (((0, 1), (0, 1)), 0),
    (((1, 1), (0, 1)), 0),
    (((0, 1), (1, 1)), 0),
    (((1, 1), (1, 1)), 0),
    (((0, 1), (1, 0)), 1),
    (((1, 1), (1, 0)), 1),
    (((1, 0), (0, 1)), 1),
    (((1, 0), (1, 1)), 1),
    (((0, 1), (0, 1)), 1),
    (((1, 1), (0, 1)), 1),
    (((0, 1), (1, 1)), 1),
    (((1, 1), (1, 1)), 1),
]
# Table-order positions of |00>, |10>, |01>, |11> per sector.
TABLE_2Q_COMPUTATIONAL = {0: (1, 2, 3, 4), 1: (9, 10, 11, 12)}


def _is_fib_3anyon_space(space: FusionSpace) -> bool:
    m = space.model
    return (
        m.charges == ("0", "1")
        and np.array_equal(m.fusion, np.array([[[1, 0], [0, 1]], [[0, 1], [1, 1]]]))
        and space.anyon == 1
        and space.anyons_per_qudit == 3
        and space.qudits in (1, 2)
    )


def table_order_permutation(space: FusionSpace) -> np.ndarray:
    """Positions of the reference table rows in canonical order.

    ``perm[r]`` is the canonical index of table row ``r``, so
    ``U[np.ix_(perm, perm)]`` re-indexes a canonical-order matrix into table
    order.  Only the Fibonacci 3-anyon qubit spaces (one or two qudits) have
    reference tables.
    """
    if not _is_fib_3anyon_space(space):
        raise BasisError("a reference row order exists only for the Fibonacci 1x3 and 2x3 spaces")
    if space.qudits == 1:
        trees = [FusionTree(1, 1, 3, inner, ()) for inner in _TABLE_1Q]
    else:
        trees = [FusionTree(1, 2, 3, inner, (tot,)) for inner, tot in _TABLE_2Q]
    return np.array([state_index(space, t) for t in trees], dtype=np.int64)


def computational_indices(space: FusionSpace, sector: ChargeId) -> tuple[int, ...]:
    """Canonical indices of |00>, |10>, |01>, |11> in ``sector`` of the 2x3 Fibonacci space."""
    if not _is_fib_3anyon_space(space) or space.qudits != 2:
        raise BasisError("the two-qubit computational map is defined for the Fibonacci 2x3 space only")
    if sector not in TABLE_2Q_COMPUTATIONAL:
        raise BasisError(f"no computational subspace in sector {sector}")
    perm = table_order_permutation(space)
    return tuple(int(perm[r]) for r in TABLE_2Q_COMPUTATIONAL[sector])
