"""Multiplicity-free anyon models: fusion rules, F- and R-symbols.

Charges are small integers indexing ``AnyonModel.charges``.  F-symbols are
stored in a flat map keyed ``(a, b, c, j, i, k)`` holding the amplitude
``(F^{abc}_j)_{ik}`` of the basis change

    |((a, b)_i, c)_j>  =  sum_k (F^{abc}_j)_{ik} |(a, (b, c)_k)_j>

and R-symbols keyed ``(a, b, c)`` hold the phase picked up by
``|(a, b)_c> -> |(b, a)_c>`` under a counterclockwise exchange.

Built-in conventions
--------------------
Fibonacci, charges ``0`` (vacuum) and ``1``::

    F^{111}_1 = [[1/phi,        1/sqrt(phi)],
                 [1/sqrt(phi), -1/phi      ]]      rows/cols ordered (0, 1)
    R^0_{11} = exp(-4 pi i / 5),   R^1_{11} = exp(3 pi i / 5)

Ising, charges ``0``, ``sigma``, ``psi``::

    F^{sss}_s = [[1, 1], [1, -1]] / sqrt(2)          rows/cols ordered (0, psi)
    F^{s psi s}_psi = F^{psi s psi}_s = -1
    R^0_{ss} = exp(-pi i / 8),  R^psi_{ss} = exp(3 pi i / 8)
    R^s_{s psi} = R^s_{psi s} = -i,  R^0_{psi psi} = -1

Every other admissible symbol is 1.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

ChargeId = int

FKey = tuple[int, int, int, int, int, int]
RKey = tuple[int, int, int]


class ModelError(ValueError):
    """Raised for inadmissible charge assignments or malformed models."""


@dataclass(frozen=True, eq=False)
class AnyonModel:
    name: str
    charges: tuple[str, ...]
    vacuum: ChargeId
    dual: Mapping[ChargeId, ChargeId]
    fusion: np.ndarray
    f_symbols: Mapping[FKey, complex]
    r_symbols: Mapping[RKey, complex]
    quantum_dims: Mapping[ChargeId, float]
    _outcomes: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        fusion = np.asarray(self.fusion, dtype=np.int64)
        fusion.setflags(write=False)
        object.__setattr__(self, "fusion", fusion)
        n = len(self.charges)
        for a in range(n):
            for b in range(n):
                self._outcomes[a, b] = tuple(c for c in range(n) if fusion[a, b, c])

    @property
    def n_charges(self) -> int:
        return len(self.charges)

    def charge(self, label: str | int) -> ChargeId:
        """Resolve a text label (or an already-resolved integer id)."""
        if isinstance(label, (int, np.integer)) and not isinstance(label, bool):
            if 0 <= label < self.n_charges:
                return int(label)
            raise ModelError(f"charge id {label} out of range for model {self.name!r}")
        try:
            return self.charges.index(str(label))
        except ValueError:
            raise ModelError(f"unknown charge {label!r} in model {self.name!r}; known: {list(self.charges)}") from None

    def label(self, c: ChargeId) -> str:
        return self.charges[c]

    def fuse(self, a: ChargeId, b: ChargeId) -> tuple[ChargeId, ...]:
        """Admissible outcomes of ``a x b`` in charge order."""
        return self._outcomes[a, b]

    def admissible(self, a: ChargeId, b: ChargeId, c: ChargeId) -> bool:
        return bool(self.fusion[a, b, c])

    def f(self, a, b, c, j, i, k) -> complex:
        """``(F^{abc}_j)_{ik}``; zero when any vertex is inadmissible."""
        return self.f_symbols.get((a, b, c, j, i, k), 0j)

    def r(self, a, b, c) -> complex:
        """``R^c_{ab}``; zero when ``c`` is not in ``a x b``."""
        return self.r_symbols.get((a, b, c), 0j)


@dataclass(frozen=True)
class Block:
    """Small matrix whose rows and columns carry charge labels."""

    matrix: np.ndarray
    rows: tuple[ChargeId, ...]
    cols: tuple[ChargeId, ...]

    def __getitem__(self, key):
        i, k = key
        try:
            return self.matrix[self.rows.index(i), self.cols.index(k)]
        except ValueError:
            return 0j

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)

    @property
    def shape(self):
        return self.matrix.shape


def _vertex_error(model: AnyonModel, a, b, c) -> ModelError:
    lab = model.label
    return ModelError(f"inadmissible vertex {lab(a)} x {lab(b)} -> {lab(c)} in model {model.name!r}")


def f_left_labels(model: AnyonModel, a, b, c, j) -> tuple[ChargeId, ...]:
    """Intermediates ``i`` with ``a x b -> i`` and ``i x c -> j``."""
    return tuple(i for i in model.fuse(a, b) if model.admissible(i, c, j))


def f_right_labels(model: AnyonModel, a, b, c, j) -> tuple[ChargeId, ...]:
    """Intermediates ``k`` with ``b x c -> k`` and ``a x k -> j``."""
    return tuple(k for k in model.fuse(b, c) if model.admissible(a, k, j))


def f_block(model: AnyonModel, a, b, c, j) -> Block:
    """The F-matrix ``F^{abc}_j`` with rows over left and columns over right intermediates.

    Raises
    ------
    ModelError
        If no fusion tree ``((a, b), c) -> j`` exists.
    """
    rows = f_left_labels(model, a, b, c, j)
    cols = f_right_labels(model, a, b, c, j)
    if not rows or not cols:
        raise ModelError(
            f"no admissible fusion tree for F^{{{model.label(a)},{model.label(b)},{model.label(c)}}}_{model.label(j)}"
            f" in model {model.name!r}"
        )
    mat = np.array([[model.f(a, b, c, j, i, k) for k in cols] for i in rows], dtype=complex)
    return Block(mat, rows, cols)


def r_phase(model: AnyonModel, a, b, c) -> complex:
    if not model.admissible(a, b, c):
        raise _vertex_error(model, a, b, c)
    return model.r(a, b, c)


# --------------------------------------------------------------------------
# built-in models


def _fill_trivial(fusion: np.ndarray, f_symbols: dict, r_symbols: dict) -> None:
    """Set every admissible but unlisted F/R symbol to 1."""
    n = fusion.shape[0]
    for a, b, c, j in itertools.product(range(n), repeat=4):
        for i in range(n):
            if not (fusion[a, b, i] and fusion[i, c, j]):
                continue
            for k in range(n):
                if fusion[b, c, k] and fusion[a, k, j]:
                    f_symbols.setdefault((a, b, c, j, i, k), 1.0 + 0j)
    for a, b, c in itertools.product(range(n), repeat=3):
        if fusion[a, b, c]:
            r_symbols.setdefault((a, b, c), 1.0 + 0j)


def _build(name, charges, dual, triples, f_nontrivial, r_nontrivial, dims) -> AnyonModel:
    n = len(charges)
    fusion = np.zeros((n, n, n), dtype=np.int64)
    for a, b, c in triples:
        fusion[a, b, c] = fusion[b, a, c] = 1
    f_symbols = dict(f_nontrivial)
    r_symbols = dict(r_nontrivial)
    _fill_trivial(fusion, f_symbols, r_symbols)
    return AnyonModel(
        name=name,
        charges=tuple(charges),
        vacuum=0,
        dual=dict(dual),
        fusion=fusion,
        f_symbols=f_symbols,
        r_symbols=r_symbols,
        quantum_dims=dict(dims),
    )


def fibonacci_model() -> AnyonModel:
    phi = (1 + math.sqrt(5)) / 2
    f_nontrivial = {
        (1, 1, 1, 1, 0, 0): 1 / phi,
        (1, 1, 1, 1, 0, 1): 1 / math.sqrt(phi),
        (1, 1, 1, 1, 1, 0): 1 / math.sqrt(phi),
        (1, 1, 1, 1, 1, 1): -1 / phi,
    }
    r_nontrivial = {
        (1, 1, 0): cmath.exp(-4j * math.pi / 5),
        (1, 1, 1): cmath.exp(3j * math.pi / 5),
    }
    triples = [(0, 0, 0), (0, 1, 1), (1, 1, 0), (1, 1, 1)]
    return _build("fibonacci", ["0", "1"], {0: 0, 1: 1}, triples, f_nontrivial, r_nontrivial, {0: 1.0, 1: phi})


def ising_model() -> AnyonModel:
    one, s, psi = 0, 1, 2
    h = 1 / math.sqrt(2)
    f_nontrivial = {
        (s, s, s, s, one, one): h,
        (s, s, s, s, one, psi): h,
        (s, s, s, s, psi, one): h,
        (s, s, s, s, psi, psi): -h,
        (s, psi, s, psi, s, s): -1.0,
        (psi, s, psi, s, s, s): -1.0,
    }
    r_nontrivial = {
        (s, s, one): cmath.exp(-1j * math.pi / 8),
        (s, s, psi): cmath.exp(3j * math.pi / 8),
        (s, psi, s): -1j,
        (psi, s, s): -1j,
        (psi, psi, one): -1.0,
    }
    triples = [(one, one, one), (one, s, s), (one, psi, psi), (s, s, one), (s, s, psi), (s, psi, s), (psi, psi, one)]
    dual = {one: one, s: s, psi: psi}
    dims = {one: 1.0, s: math.sqrt(2), psi: 1.0}
    return _build("ising", ["0", "sigma", "psi"], dual, triples, f_nontrivial, r_nontrivial, dims)


BUILTIN_MODELS = {"fibonacci": fibonacci_model, "ising": ising_model}


def builtin_model(name: str) -> AnyonModel:
    try:
        return BUILTIN_MODELS[name.lower()]()
    except KeyError:
        raise ModelError(f"unknown built-in model {name!r}; choose from {sorted(BUILTIN_MODELS)}") from None


# --------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    max_pentagon_residual: float
    max_hexagon_residual: float
    structural_failures: list[str]

    def ok(self, tol: float = 1e-12) -> bool:
        return (
            not self.structural_failures
            and self.max_pentagon_residual < tol
            and self.max_hexagon_residual < tol
        )


def _structural_failures(model: AnyonModel) -> list[str]:
    failures = []
    n = model.n_charges
    N = model.fusion
    lab = model.label
    v = model.vacuum

    if N.shape != (n, n, n):
        return [f"fusion tensor has shape {N.shape}, expected {(n, n, n)}"]
    if np.any((N != 0) & (N != 1)):
        failures.append("fusion tensor is not multiplicity-free")
    if not 0 <= v < n:
        return failures + [f"vacuum id {v} out of range"]
    for a in range(n):
        for c in range(n):
            want = int(a == c)
            if N[a, v, c] != want or N[v, a, c] != want:
                failures.append(f"vacuum does not fuse trivially with {lab(a)}")
                break
        d = model.dual.get(a)
        if d is None or not 0 <= d < n:
            failures.append(f"missing dual for {lab(a)}")
        elif N[a, d, v] != 1:
            failures.append(f"{lab(a)} x {lab(d)} does not contain the vacuum")
    if not np.array_equal(N, N.transpose(1, 0, 2)):
        failures.append("fusion is not commutative")

    for key in model.f_symbols:
        a, b, c, j, i, k = key
        if not (N[a, b, i] and N[i, c, j] and N[b, c, k] and N[a, k, j]):
            failures.append(f"F-symbol {key} present for an inadmissible tree")
    for a, b, c, j in itertools.product(range(n), repeat=4):
        rows = f_left_labels(model, a, b, c, j)
        cols = f_right_labels(model, a, b, c, j)
        if not rows and not cols:
            continue
        if len(rows) != len(cols):
            failures.append(f"F^{{{a},{b},{c}}}_{j} is not square")
            continue
        missing = [(i, k) for i in rows for k in cols if (a, b, c, j, i, k) not in model.f_symbols]
        if missing:
            failures.append(f"F^{{{a},{b},{c}}}_{j} missing entries {missing}")
            continue
        m = f_block(model, a, b, c, j).matrix
        err = np.abs(m @ m.conj().T - np.eye(len(rows))).max()
        if err > 1e-12:
            failures.append(f"F^{{{a},{b},{c}}}_{j} not unitary (residual {err:.3g})")

    for key in model.r_symbols:
        a, b, c = key
        if not N[a, b, c]:
            failures.append(f"R-symbol {key} present for an inadmissible vertex")
        elif abs(abs(model.r_symbols[key]) - 1) > 1e-12:
            failures.append(f"R-symbol {key} does not have unit modulus")
    for a, b, c in itertools.product(range(n), repeat=3):
        if N[a, b, c] and (a, b, c) not in model.r_symbols:
            failures.append(f"R-symbol {(a, b, c)} missing")
    return failures


def pentagon_residual(model: AnyonModel) -> float:
    """Largest violation of

        F^{fcd}_{e;gl} F^{abl}_{e;fk} = sum_h F^{abc}_{g;fh} F^{ahd}_{e;gk} F^{bcd}_{k;hl}

    over all charge tuples (inadmissible symbols count as zero).
    """
    n = model.n_charges
    F = model.f
    worst = 0.0
    for a, b, c, d, e in itertools.product(range(n), repeat=5):
        for f_, g, k, l in itertools.product(range(n), repeat=4):
            lhs = F(f_, c, d, e, g, l) * F(a, b, l, e, f_, k)
            rhs = sum(F(a, b, c, g, f_, h) * F(a, h, d, e, g, k) * F(b, c, d, k, h, l) for h in range(n))
            worst = max(worst, abs(lhs - rhs))
    return worst


def hexagon_residual(model: AnyonModel) -> float:
    """Largest violation of both hexagon identities

        R^e_{ca} F^{acb}_{d;eg} R^g_{cb} = sum_f F^{cab}_{d;ef} R^d_{cf} F^{abc}_{d;fg}

    and the same with every R replaced by its inverse.
    """
    n = model.n_charges
    F = model.f
    worst = 0.0
    for inverse in (False, True):
        def R(x, y, z):
            r = model.r(x, y, z)
            return r.conjugate() if inverse else r

        for a, b, c, d, e, g in itertools.product(range(n), repeat=6):
            lhs = R(c, a, e) * F(a, c, b, d, e, g) * R(c, b, g)
            rhs = sum(F(c, a, b, d, e, f_) * R(c, f_, d) * F(a, b, c, d, f_, g) for f_ in range(n))
            worst = max(worst, abs(lhs - rhs))
    return worst


def validate_model(model: AnyonModel) -> ValidationReport:
    failures = _structural_failures(model)
    if any("shape" in f or "vacuum id" in f for f in failures):
        return ValidationReport(math.inf, math.inf, failures)
    return ValidationReport(pentagon_residual(model), hexagon_residual(model), failures)


def perron_dimensions(model: AnyonModel) -> dict[ChargeId, float]:
    """Quantum dimensions as the Perron eigenvalues of the fusion matrices ``(N_a)_{bc}``."""
    dims = {}
    for a in range(model.n_charges):
        vals = np.linalg.eigvals(model.fusion[a].astype(float))
        dims[a] = float(np.max(vals.real))
    return dims
