"""Braid-group relation checks, an independent generator oracle, and gate metrics."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from .basis import FusionSpace, enumerate_basis
from .braid import BraidMatrix, all_generators, sigma, sigma_within

ORACLE_MAX_ANYONS = 10


class OracleCostError(ValueError):
    pass


def _norm2(x: np.ndarray) -> float:
    if x.size == 0:
        return 0.0
    return float(np.linalg.norm(x, ord=2))


@dataclass
class ArtinReport:
    max_yang_baxter_residual: float = 0.0
    max_far_commutation_residual: float = 0.0
    max_unitarity_residual: float = 0.0
    relations: list[tuple[str, float]] = field(default_factory=list)

    @property
    def max_residual(self) -> float:
        return max(self.max_yang_baxter_residual, self.max_far_commutation_residual, self.max_unitarity_residual)


def check_artin(space: FusionSpace, threads: int = 1) -> ArtinReport:
    """Spectral-norm residuals of all braid relations among the generators of ``space``."""
    gens = [g.dense() for g in all_generators(space, threads)]
    eye = np.eye(space.dim)
    rep = ArtinReport()
    for i, s in enumerate(gens, start=1):
        res = _norm2(s @ s.conj().T - eye)
        rep.relations.append((f"s{i} s{i}^+ = I", res))
        rep.max_unitarity_residual = max(rep.max_unitarity_residual, res)
    for i in range(1, len(gens)):
        s, t = gens[i - 1], gens[i]
        res = _norm2(s @ t @ s - t @ s @ t)
        rep.relations.append((f"s{i} s{i + 1} s{i} = s{i + 1} s{i} s{i + 1}", res))
        rep.max_yang_baxter_residual = max(rep.max_yang_baxter_residual, res)
    for i in range(1, len(gens) + 1):
        for j in range(i + 2, len(gens) + 1):
            s, t = gens[i - 1], gens[j - 1]
            res = _norm2(s @ t - t @ s)
            rep.relations.append((f"s{i} s{j} = s{j} s{i}", res))
            rep.max_far_commutation_residual = max(rep.max_far_commutation_residual, res)
    return rep


# ---------------------------------------------------------------------------
# oracle: flat left-comb basis plus an explicit change of basis


def _absorb(model, a, x, labels, t):
    """Expand ``|(x, comb(labels))_t>`` into left-comb states ``|((x, a)_{p1}, ..., a)_t>``.

    Applies one inverse F-move per leaf.  Returns ``{(p_1, ..., t): amp}``.
    """
    if len(labels) == 1:
        # |(x, (a, a)_{i1})_t> = sum_p conj(F^{x a a}_t[p, i1]) |((x, a)_p, a)_t>
        return {
            (p, t): model.f(x, a, a, t, p, labels[0]).conjugate()
            for p in model.fuse(x, a)
            if model.admissible(p, a, t)
        }
    out = {}
    inner, top = labels[:-1], labels[-1]
    for p in model.fuse(x, inner[-1]):
        if not model.admissible(p, a, t):
            continue
        coeff = model.f(x, inner[-1], a, t, p, top).conjugate()
        if coeff == 0:
            continue
        for chain, amp in _absorb(model, a, x, inner, p).items():
            key = chain + (t,)
            out[key] = out.get(key, 0j) + coeff * amp
    return out


def basis_change(space: FusionSpace) -> tuple[np.ndarray, FusionSpace]:
    """Unitary ``U`` with ``U[flat, grouped]`` = overlap of a grouped tree with a flat comb state.

    The flat space is ``enumerate_basis(model, anyon, 1, f * N)``.
    """
    model, a = space.model, space.anyon
    flat = enumerate_basis(model, a, 1, space.n_anyons)
    u = np.zeros((flat.dim, space.dim), dtype=complex)
    for col, tree in enumerate(space.states):
        state = {tree.inner[0]: 1.0 + 0j}
        for q in range(1, space.qudits):
            t = tree.j(q)
            nxt: dict = {}
            for chain, amp in state.items():
                for ext, amp2 in _absorb(model, a, chain[-1], tree.inner[q], t).items():
                    key = chain + ext
                    nxt[key] = nxt.get(key, 0j) + amp * amp2
            state = nxt
        for chain, amp in state.items():
            row = flat.index[type(tree)(a, 1, space.n_anyons, (chain,), ())]
            u[row, col] += amp
    return u, flat


def oracle_sigma(space: FusionSpace, n: int) -> BraidMatrix:
    """``sigma_n`` computed with B-moves only in the flat basis, rotated into ``space``'s basis."""
    if space.n_anyons > ORACLE_MAX_ANYONS:
        raise OracleCostError(f"oracle limited to {ORACLE_MAX_ANYONS} anyons, space has {space.n_anyons}")
    u, flat = basis_change(space)
    s_flat = sigma_within(flat, n).dense()
    return BraidMatrix(space, n, u.conj().T @ s_flat @ u)


# ---------------------------------------------------------------------------
# gate metrics


@dataclass
class GateComparison:
    accuracy: float
    leakage: float
    phase_used: complex


PHASE_SAMPLES = 720


def spectral_distance(u1, u2) -> tuple[float, complex]:
    """``min_theta || u1 - exp(i theta) u2 ||_2`` and the minimising phase ``exp(i theta)``.

    A uniform scan of ``PHASE_SAMPLES`` angles starting at the trace-alignment
    angle ``arg tr(u2^+ u1)`` brackets the minimum, then golden-section search
    refines it.
    """
    u1 = np.asarray(u1, dtype=complex)
    u2 = np.asarray(u2, dtype=complex)
    if u1.shape != u2.shape or u1.ndim != 2 or u1.shape[0] != u1.shape[1]:
        raise ValueError(f"need equal square matrices, got {u1.shape} and {u2.shape}")

    def dist(theta):
        return _norm2(u1 - np.exp(1j * theta) * u2)

    seed = float(np.angle(np.trace(u2.conj().T @ u1)))
    step = 2 * math.pi / PHASE_SAMPLES
    thetas = seed + step * np.arange(PHASE_SAMPLES)
    values = [dist(t) for t in thetas]
    best = int(np.argmin(values))
    lo, hi = thetas[best] - step, thetas[best] + step
    res = optimize.minimize_scalar(dist, bracket=(lo, thetas[best], hi), method="golden", options={"xtol": 1e-14})
    theta, d = (res.x, res.fun) if res.fun <= values[best] else (thetas[best], values[best])
    return float(d), complex(np.exp(1j * theta))


def leakage(u, subspace) -> float:
    """``1 - s_min`` of the block of ``u`` restricted to ``subspace`` rows and columns."""
    idx = list(subspace)
    if not idx:
        raise ValueError("empty subspace")
    block = np.asarray(u)[np.ix_(idx, idx)]
    return float(1.0 - np.linalg.svd(block, compute_uv=False).min())
