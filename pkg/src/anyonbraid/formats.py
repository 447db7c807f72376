"""File formats: model JSON, braid-word JSON, basis JSON, and matrix dumps.

Model file::

    {"name": "fibonacci", "charges": ["0", "1"], "vacuum": "0",
     "dual": {"0": "0", "1": "1"},
     "fusion": [["0", "0", "0"], ["0", "1", "1"], ["1", "0", "1"], ...],
     "F": {"1,1,1;1;0,0": [0.618..., 0.0], ...},
     "R": {"1,1;0": [-0.809..., -0.587...], ...},
     "quantum_dims": {"0": 1.0, "1": 1.618...}}        # optional

F keys read ``a,b,c;j;i,k`` for ``(F^{abc}_j)_{ik}``, R keys ``a,b;c`` for
``R^c_{ab}``.  Fusion triples are taken literally (list both orders).

Braid-word file::

    {"model": "fibonacci", "anyon": "1", "qudits": 2, "anyons_per_qudit": 3,
     "word": [[3, 2], [4, -2], ...]}

Each ``[n, power]`` applies ``sigma_n`` ``|power|`` times (its inverse for
negative powers).  The leftmost entry acts first.

Dense matrices are nested ``[re, im]`` arrays indexed ``[row][col]``;
sparse matrices are CSV with header ``row,col,re,im`` sorted row-major.
"""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from .basis import FusionSpace, FusionTree, enumerate_basis
from .circuit import BraidWord
from .model import AnyonModel, ModelError, perron_dimensions, validate_model


class FormatError(ValueError):
    pass


def _loads(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _read(path) -> str:
    return Path(path).read_text()


def _require(doc, key, kind, source):
    if not isinstance(doc, dict) or key not in doc:
        raise FormatError(f"{source}: missing field {key!r}")
    val = doc[key]
    if kind is int and isinstance(val, bool) or not isinstance(val, kind):
        raise FormatError(f"{source}: field {key!r} must be {kind.__name__}, got {type(val).__name__}")
    return val


def _complex(val, where) -> complex:
    if (
        not isinstance(val, list)
        or len(val) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in val)
    ):
        raise FormatError(f"{where}: complex numbers are [re, im] pairs, got {val!r}")
    return complex(float(val[0]), float(val[1]))


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


# ---------------------------------------------------------------------------
# models


def model_from_json(text: str, source: str = "<model>", tol: float = 1e-12) -> AnyonModel:
    """Parse and validate a model document; raises ``ModelError`` if validation fails."""
    doc = _loads(text, source)
    if not isinstance(doc, dict):
        raise FormatError(f"{source}: top level must be an object")
    known = {"name", "charges", "vacuum", "dual", "fusion", "F", "R", "quantum_dims"}
    extra = set(doc) - known
    if extra:
        raise FormatError(f"{source}: unknown fields {sorted(extra)}")
    name = _require(doc, "name", str, source)
    charges = _require(doc, "charges", list, source)
    if not charges or not all(isinstance(c, str) and c and not set(c) & set(",;") for c in charges):
        raise FormatError(f"{source}: charges must be non-empty strings without ',' or ';'")
    if len(set(charges)) != len(charges):
        raise FormatError(f"{source}: duplicate charge labels")
    ids = {c: i for i, c in enumerate(charges)}

    def cid(label, where):
        try:
            return ids[label]
        except (KeyError, TypeError):
            raise FormatError(f"{source}: {where}: unknown charge {label!r}") from None

    vacuum = cid(_require(doc, "vacuum", str, source), "vacuum")
    dual = {cid(k, "dual"): cid(v, "dual") for k, v in _require(doc, "dual", dict, source).items()}
    n = len(charges)
    fusion = np.zeros((n, n, n), dtype=np.int64)
    for t in _require(doc, "fusion", list, source):
        if not isinstance(t, list) or len(t) != 3:
            raise FormatError(f"{source}: fusion entries are [a, b, c] triples, got {t!r}")
        fusion[tuple(cid(x, "fusion") for x in t)] = 1

    f_symbols = {}
    for key, val in _require(doc, "F", dict, source).items():
        try:
            abc, j, ik = key.split(";")
            a, b, c = abc.split(",")
            i, k = ik.split(",")
        except ValueError:
            raise FormatError(f"{source}: F key {key!r} is not 'a,b,c;j;i,k'") from None
        f_symbols[tuple(cid(x, f"F key {key!r}") for x in (a, b, c, j, i, k))] = _complex(val, f"{source}: F[{key}]")
    r_symbols = {}
    for key, val in _require(doc, "R", dict, source).items():
        try:
            ab, c = key.split(";")
            a, b = ab.split(",")
        except ValueError:
            raise FormatError(f"{source}: R key {key!r} is not 'a,b;c'") from None
        r_symbols[tuple(cid(x, f"R key {key!r}") for x in (a, b, c))] = _complex(val, f"{source}: R[{key}]")

    model = AnyonModel(name, tuple(charges), vacuum, dual, fusion, f_symbols, r_symbols, {})
    dims = doc.get("quantum_dims")
    if dims is None:
        model.quantum_dims.update(perron_dimensions(model))
    else:
        model.quantum_dims.update({cid(k, "quantum_dims"): float(v) for k, v in dims.items()})
    report = validate_model(model)
    if not report.ok(tol):
        raise ModelError(
            f"{source}: model {name!r} failed validation: pentagon {report.max_pentagon_residual:.3g}, "
            f"hexagon {report.max_hexagon_residual:.3g}, structural {report.structural_failures}"
        )
    return model


def load_model(path, tol: float = 1e-12) -> AnyonModel:
    return model_from_json(_read(path), str(path), tol)


def model_to_json(model: AnyonModel) -> str:
    lab = model.label
    n = model.n_charges
    doc = {
        "name": model.name,
        "charges": list(model.charges),
        "vacuum": lab(model.vacuum),
        "dual": {lab(a): lab(b) for a, b in sorted(model.dual.items())},
        "fusion": [[lab(a), lab(b), lab(c)] for a in range(n) for b in range(n) for c in range(n) if model.fusion[a, b, c]],
        "F": {
            f"{lab(a)},{lab(b)},{lab(c)};{lab(j)};{lab(i)},{lab(k)}": _pair(v)
            for (a, b, c, j, i, k), v in sorted(model.f_symbols.items())
        },
        "R": {f"{lab(a)},{lab(b)};{lab(c)}": _pair(v) for (a, b, c), v in sorted(model.r_symbols.items())},
        "quantum_dims": {lab(a): float(d) for a, d in sorted(model.quantum_dims.items())},
    }
    return json.dumps(doc, indent=1)


# ---------------------------------------------------------------------------
# braid words


def word_from_json(text: str, source: str = "<word>") -> BraidWord:
    doc = _loads(text, source)
    if not isinstance(doc, dict):
        raise FormatError(f"{source}: top level must be an object")
    extra = set(doc) - {"model", "anyon", "qudits", "anyons_per_qudit", "word", "comment"}
    if extra:
        raise FormatError(f"{source}: unknown fields {sorted(extra)}")
    ops = []
    for pos, entry in enumerate(_require(doc, "word", list, source)):
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in entry)
        ):
            raise FormatError(f"{source}: word entry {pos} must be [n, power] integers, got {entry!r}")
        ops.append(tuple(entry))
    try:
        return BraidWord(
            _require(doc, "model", str, source),
            _require(doc, "anyon", str, source),
            _require(doc, "qudits", int, source),
            _require(doc, "anyons_per_qudit", int, source),
            tuple(ops),
        )
    except ValueError as exc:
        raise FormatError(f"{source}: {exc}") from None


def load_word(path) -> BraidWord:
    return word_from_json(_read(path), str(path))


def word_to_json(word: BraidWord, comment: str | None = None) -> str:
    doc = {
        "model": word.model,
        "anyon": word.anyon,
        "qudits": word.qudits,
        "anyons_per_qudit": word.anyons_per_qudit,
    }
    if comment:
        doc["comment"] = comment
    body = json.dumps(doc, indent=1)[:-2]
    ops = ", ".join(f"[{n}, {p}]" for n, p in word.ops)
    return f'{body},\n "word": [{ops}]\n}}\n'


# ---------------------------------------------------------------------------
# matrices


def dense_to_json(mat) -> str:
    mat = np.asarray(mat, dtype=complex)
    return json.dumps([[_pair(z) for z in row] for row in mat])


def dense_from_json(text: str, source: str = "<matrix>") -> np.ndarray:
    doc = _loads(text, source)
    if not isinstance(doc, list) or not all(isinstance(r, list) for r in doc):
        raise FormatError(f"{source}: dense matrices are nested lists of [re, im]")
    if len({len(r) for r in doc}) > 1:
        raise FormatError(f"{source}: ragged rows")
    return np.array(
        [[_complex(z, f"{source}: [{r}][{c}]") for c, z in enumerate(row)] for r, row in enumerate(doc)],
        dtype=complex,
    ).reshape(len(doc), len(doc[0]) if doc else 0)


def sparse_to_csv(mat, threshold: float = 0.0) -> str:
    """Row-major coordinate dump; entries with modulus below ``threshold`` (and exact zeros) are left out."""
    if sp.issparse(mat):
        coo = sp.coo_array(mat)
        order = np.lexsort((coo.col, coo.row))
        rows, cols, vals = coo.row[order], coo.col[order], coo.data[order]
        keep = (np.abs(vals) >= threshold) & (vals != 0)
        rows, cols, vals = rows[keep], cols[keep], vals[keep]
    else:
        dense = np.asarray(mat, dtype=complex)
        rows, cols = np.nonzero((np.abs(dense) >= threshold) & (dense != 0))
        vals = dense[rows, cols]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["row", "col", "re", "im"])
    for r, c, z in zip(rows, cols, vals):
        w.writerow([int(r), int(c), format(z.real, ".17g"), format(z.imag, ".17g")])
    return buf.getvalue()


def sparse_from_csv(text: str, shape: tuple[int, int], source: str = "<csv>") -> sp.coo_array:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != ["row", "col", "re", "im"]:
        raise FormatError(f"{source}: line 1: expected header row,col,re,im")
    rows, cols, vals = [], [], []
    for lineno, rec in enumerate(reader, start=2):
        if not rec:
            continue
        try:
            r, c, re_, im = rec
            rows.append(int(r))
            cols.append(int(c))
            vals.append(complex(float(re_), float(im)))
        except ValueError:
            raise FormatError(f"{source}: line {lineno}: malformed record {rec!r}") from None
    return sp.coo_array((np.array(vals, dtype=complex), (rows, cols)), shape=shape)


# ---------------------------------------------------------------------------
# bases


def basis_to_json(space: FusionSpace) -> str:
    lab = space.model.label
    states = [
        {
            "index": i,
            "inner": [[lab(c) for c in q] for q in t.inner],
            "outer": [lab(c) for c in t.outer],
            "sector": lab(t.total_charge()),
            "notation": t.notation(space.model),
        }
        for i, t in enumerate(space.states)
    ]
    doc = {
        "model": space.model.name,
        "anyon": lab(space.anyon),
        "qudits": space.qudits,
        "anyons_per_qudit": space.anyons_per_qudit,
        "states": states,
    }
    return json.dumps(doc, indent=1)


def basis_from_json(text: str, model: AnyonModel, source: str = "<basis>") -> FusionSpace:
    """Rebuild a space from its dump, checking the listed states against a fresh enumeration."""
    doc = _loads(text, source)
    anyon = model.charge(_require(doc, "anyon", str, source))
    f = _require(doc, "qudits", int, source)
    N = _require(doc, "anyons_per_qudit", int, source)
    space = enumerate_basis(model, anyon, f, N)
    listed = _require(doc, "states", list, source)
    if len(listed) != space.dim:
        raise FormatError(f"{source}: {len(listed)} states listed, enumeration gives {space.dim}")
    for rec in listed:
        tree = FusionTree(
            anyon, f, N,
            tuple(tuple(model.charge(c) for c in q) for q in rec["inner"]),
            tuple(model.charge(c) for c in rec["outer"]),
        )
        if space.index.get(tree) != rec["index"]:
            raise FormatError(f"{source}: state {rec['index']} does not match the canonical basis")
    return space
