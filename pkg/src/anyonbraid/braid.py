"""Matrices of the braid generators on a grouped fusion-tree basis.

``sigma(space, n)`` exchanges strands ``n`` and ``n + 1`` (1-based).  When
both strands sit in the same qudit the action is a single B-move on that
qudit's comb; when ``n`` is a multiple of ``N`` the last anyon of qudit
``m = n / N`` is exchanged with the first anyon of qudit ``m + 1`` through
the mixing matrix ``M``, itself an F-conjugated ``L`` (F-chain, B, F-chain).

Matrix entries follow ``[sigma]_{out, in} = <out| sigma |in>``; columns
are assembled one input tree at a time, so entries between different total
charges are never written.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

import numpy as np
import scipy.sparse as sp

from .basis import FusionSpace, FusionTree
from .model import AnyonModel, Block, ChargeId, ModelError, f_block, f_left_labels, f_right_labels


class GeneratorError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class BraidMatrix:
    space: FusionSpace
    generator: Optional[int]
    elements: Union[np.ndarray, sp.coo_array]

    @property
    def is_sparse(self) -> bool:
        return sp.issparse(self.elements)

    @property
    def shape(self):
        return self.elements.shape

    def dense(self) -> np.ndarray:
        return self.elements.toarray() if self.is_sparse else self.elements

    def dagger(self) -> "BraidMatrix":
        gen = None if self.generator is None else -self.generator
        return BraidMatrix(self.space, gen, self.elements.conj().T)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.dense(), dtype=dtype)


def b_matrix(model: AnyonModel, a: ChargeId, b: ChargeId, c: ChargeId, j: ChargeId) -> Block:
    """``B^j_{abc} = F^{abc}_j R_{bc} (F^{acb}_j)^dagger``.

    Rows run over ``i`` in ``|((a, b)_i, c)_j>`` and columns over ``m`` in
    ``|((a, c)_m, b)_j>``; exchanging ``b`` and ``c`` maps the first state to
    ``sum_m B[i, m]`` times the second.
    """
    f1 = f_block(model, a, b, c, j)
    f2 = f_block(model, a, c, b, j)
    if f1.cols != f2.cols:
        raise ModelError("F-blocks of the exchanged bracketings disagree on intermediates")
    r = np.array([model.r(b, c, l) for l in f1.cols])
    mat = (f1.matrix * r) @ f2.matrix.conj().T
    return Block(mat, f1.rows, f2.rows)


# ---------------------------------------------------------------------------
# cross-qudit exchange


def _down_chains(model, a, i_last, nxt, k):
    """Coefficients of ``|(i_last, comb(nxt))_k>`` in the left comb ``|((i_last, a)_{p1}, ..., a)_k>``.

    Yields ``(p_1, ..., p_q), amplitude`` from the chain of inverse F-moves.
    """
    q = len(nxt)
    ys = (a,) + tuple(nxt)
    out = []

    def rec(r, upper, acc, amp):
        if r == 0:
            out.append((tuple(reversed(acc)), amp))
            return
        # |(i_last, (y_{r-1}, a)_{y_r})_upper> = sum_p conj(F[p, y_r]) |((i_last, y_{r-1})_p, a)_upper>
        y_prev, y_r = ys[r - 1], ys[r]
        for p in model.fuse(i_last, y_prev):
            if not model.admissible(p, a, upper):
                continue
            coeff = model.f(i_last, y_prev, a, upper, p, y_r).conjugate()
            acc.append(p)
            rec(r - 1, p, acc, amp * coeff)
            acc.pop()

    if model.admissible(i_last, ys[q], k):
        rec(q, k, [], 1.0 + 0j)
    return out


def _up_chains(model, a, i_new, ps, k):
    """Inverse of ``_down_chains``: re-expand the left comb ``p_1..p_q, k`` above ``i_new``.

    Yields ``(y'_1, ..., y'_q), amplitude``.
    """
    q = len(ps)
    uppers = tuple(ps[1:]) + (k,)
    out = []

    def rec(r, y_prev, acc, amp):
        if r == q:
            out.append((tuple(acc), amp))
            return
        p_r, upper = ps[r], uppers[r]
        for y in model.fuse(y_prev, a):
            if not model.admissible(i_new, y, upper):
                continue
            coeff = model.f(i_new, y_prev, a, upper, p_r, y)
            acc.append(y)
            rec(r + 1, y, acc, amp * coeff)
            acc.pop()

    if model.admissible(i_new, a, ps[0]):
        rec(0, a, [], 1.0 + 0j)
    return out


@lru_cache(maxsize=None)
def l_matrix(
    model: AnyonModel,
    a: ChargeId,
    i_prev: ChargeId,
    i_last: ChargeId,
    nxt: tuple[ChargeId, ...],
    k: ChargeId,
) -> dict[tuple[ChargeId, tuple[ChargeId, ...]], complex]:
    """Exchange of the edge anyons of two neighbouring qudits fused to ``k``.

    Parameters
    ----------
    a : ChargeId
        Leaf charge.
    i_prev, i_last : ChargeId
        Last two comb labels of the left qudit (``i_prev = a`` when it has
        two anyons).
    nxt : tuple of ChargeId
        Comb labels ``i_1 .. i_q`` of the right qudit.
    k : ChargeId
        Joint charge of the two qudits.

    Returns
    -------
    dict
        ``{(i_last', nxt'): amplitude}`` over all reachable primed labels.
    """
    if not model.admissible(i_prev, a, i_last):
        raise ModelError(f"inadmissible vertex {i_prev} x {a} -> {i_last}")
    out: dict = {}
    for ps, amp_down in _down_chains(model, a, i_last, nxt, k):
        b = b_matrix(model, i_prev, a, a, ps[0])
        for i_new in b.cols:
            amp_b = amp_down * b[i_last, i_new]
            for ys, amp_up in _up_chains(model, a, i_new, ps, k):
                key = (i_new, ys)
                out[key] = out.get(key, 0j) + amp_b * amp_up
    if not out:
        raise ModelError(f"inadmissible labels for L: i_last={i_last}, next qudit={nxt}, k={k}")
    return out


@lru_cache(maxsize=None)
def m_matrix(
    model: AnyonModel,
    a: ChargeId,
    j_left: ChargeId,
    j_mid: ChargeId,
    j_right: ChargeId,
    i_prev: ChargeId,
    i_last: ChargeId,
    nxt: tuple[ChargeId, ...],
) -> dict[tuple[ChargeId, ChargeId, tuple[ChargeId, ...]], complex]:
    """Mixing matrix for the exchange between qudits ``m`` and ``m + 1``.

    ``j_left, j_mid, j_right`` are ``j_{m-2}, j_{m-1}, j_m`` (vacuum for
    negative indices).  Returns ``{(j_mid', i_last', nxt'): amplitude}``.
    """
    y_last = nxt[-1]
    if not (model.admissible(j_left, i_last, j_mid) and model.admissible(j_mid, y_last, j_right)):
        raise ModelError(f"inadmissible outer labels ({j_left}, {j_mid}, {j_right})")
    out: dict = {}
    f_in = f_block(model, j_left, i_last, y_last, j_right)
    for k in f_in.cols:
        amp_in = f_in[j_mid, k]
        for (i_new, ys), amp_l in l_matrix(model, a, i_prev, i_last, nxt, k).items():
            f_out = f_block(model, j_left, i_new, ys[-1], j_right)
            for j_new in f_out.rows:
                key = (j_new, i_new, ys)
                out[key] = out.get(key, 0j) + amp_in * amp_l * f_out[j_new, k].conjugate()
    return out


# ---------------------------------------------------------------------------
# assembly


def _check_n(space: FusionSpace, n: int) -> None:
    if not 1 <= n <= space.n_generators:
        raise GeneratorError(f"generator index {n} outside 1..{space.n_generators}")


def _column_within(space: FusionSpace, tree: FusionTree, n: int):
    model, a, N = space.model, space.anyon, space.anyons_per_qudit
    q, p = divmod(n, N)
    labels = tree.inner[q]
    if p == 1:
        yield tree, model.r(a, a, labels[0])
        return
    x = labels[p - 3] if p >= 3 else a
    b = b_matrix(model, x, a, a, labels[p - 1])
    mid = labels[p - 2]
    for m in b.cols:
        new = labels[: p - 2] + (m,) + labels[p - 1 :]
        inner = tree.inner[:q] + (new,) + tree.inner[q + 1 :]
        yield tree.replace(inner=inner), b[mid, m]


def _column_between(space: FusionSpace, tree: FusionTree, n: int):
    model, a, N = space.model, space.anyon, space.anyons_per_qudit
    m = n // N  # 1-based left qudit
    vac = model.vacuum
    left, right = tree.inner[m - 1], tree.inner[m]
    i_prev = left[-2] if len(left) >= 2 else a
    j_left, j_mid, j_right = tree.j(m - 2, vac), tree.j(m - 1, vac), tree.j(m, vac)
    for (j_new, i_new, ys), amp in m_matrix(model, a, j_left, j_mid, j_right, i_prev, left[-1], right).items():
        inner = tree.inner[: m - 1] + (left[:-1] + (i_new,), ys) + tree.inner[m + 1 :]
        outer = tree.outer
        if m >= 2:
            outer = outer[: m - 2] + (j_new,) + outer[m - 1 :]
        yield tree.replace(inner=inner, outer=outer), amp


def _assemble(space: FusionSpace, n: int, column) -> np.ndarray:
    mat = np.zeros((space.dim, space.dim), dtype=complex)
    index = space.index
    for col, tree in enumerate(space.states):
        for out, amp in column(space, tree, n):
            mat[index[out], col] += amp
    return mat


def sigma_within(space: FusionSpace, n: int) -> BraidMatrix:
    _check_n(space, n)
    if n % space.anyons_per_qudit == 0:
        raise GeneratorError(f"sigma_{n} exchanges anyons of different qudits")
    return BraidMatrix(space, n, _assemble(space, n, _column_within))


def sigma(space: FusionSpace, n: int) -> BraidMatrix:
    """Matrix of the generator ``sigma_n``, memoised per space."""
    _check_n(space, n)
    cached = space._generators.get(n)
    if cached is not None:
        return cached
    if n % space.anyons_per_qudit:
        bm = sigma_within(space, n)
    else:
        bm = BraidMatrix(space, n, _assemble(space, n, _column_between))
    bm.elements.setflags(write=False)
    with space._lock:
        return space._generators.setdefault(n, bm)


def sigma_inverse(space: FusionSpace, n: int) -> BraidMatrix:
    return sigma(space, n).dagger()


def all_generators(space: FusionSpace, threads: int = 1) -> list[BraidMatrix]:
    """``[sigma_1, ..., sigma_{fN-1}]``, optionally assembled on a thread pool."""
    ns = range(1, space.n_generators + 1)
    if threads <= 1:
        return [sigma(space, n) for n in ns]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda n: sigma(space, n), ns))


def to_sparse(bm: BraidMatrix, threshold: float = 0.0) -> BraidMatrix:
    """Coordinate storage in row-major order, dropping entries with modulus below ``threshold``."""
    dense = bm.dense()
    rows, cols = np.nonzero((np.abs(dense) >= threshold) & (dense != 0))
    coo = sp.coo_array((dense[rows, cols], (rows, cols)), shape=dense.shape)
    return BraidMatrix(bm.space, bm.generator, coo)
