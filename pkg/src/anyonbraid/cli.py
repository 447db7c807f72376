"""Command-line front end: ``anyonbraid {models,basis,generator,verify,run}``."""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional

import numpy as np

from . import formats
from .basis import TABLE_2Q_COMPUTATIONAL, FusionSpace, enumerate_basis
from .braid import GeneratorError, sigma, to_sparse
from .circuit import NAMED_GATES, WordError, compare_gate, compose
from .model import BUILTIN_MODELS, AnyonModel, ModelError, builtin_model, validate_model
from .verify import check_artin

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    model: Optional[str] = None
    anyon: Optional[str] = None
    qudits: int = 1
    anyons_per_qudit: int = 3
    n: Optional[int] = None
    sector: Optional[str] = None
    format: str = "text"
    out: Optional[str] = None
    tol: float = 1e-12
    threads: int = 1
    compare: Optional[str] = None
    sparse_threshold: float = 0.0
    word: Optional[str] = None

    @classmethod
    def from_mapping(cls, values: dict) -> "RunConfig":
        names = {f.name for f in fields(cls)}
        unknown = set(values) - names
        if unknown:
            raise ConfigError(f"unknown config fields {sorted(unknown)}")
        cfg = cls(**values)
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.qudits < 1:
            raise ConfigError("--qudits must be at least 1")
        if self.anyons_per_qudit < 2:
            raise ConfigError("--anyons-per-qudit must be at least 2")
        if self.format not in ("text", "json", "csv"):
            raise ConfigError(f"unknown format {self.format!r}")
        if self.tol <= 0 or self.sparse_threshold < 0:
            raise ConfigError("tolerances must be positive")
        if self.threads < 1:
            raise ConfigError("--threads must be at least 1")
        if self.command == "generator" and self.n is None:
            raise ConfigError("generator needs --n")
        if self.command == "run" and self.word is None:
            raise ConfigError("run needs a braid-word file")


def resolve_model(selector: str, tol: float = 1e-12) -> AnyonModel:
    if selector.lower() in BUILTIN_MODELS:
        return builtin_model(selector)
    path = Path(selector)
    if path.suffix == ".json" or path.exists():
        return formats.load_model(path, tol)
    raise ConfigError(f"--model must be one of {sorted(BUILTIN_MODELS)} or a model JSON file, got {selector!r}")


def default_anyon(model: AnyonModel) -> int:
    """The non-vacuum charge of largest quantum dimension."""
    candidates = [c for c in range(model.n_charges) if c != model.vacuum]
    return max(candidates, key=lambda c: (model.quantum_dims.get(c, 1.0), -c))


def _space(cfg: RunConfig) -> FusionSpace:
    model = resolve_model(cfg.model or "fibonacci", cfg.tol)
    anyon = default_anyon(model) if cfg.anyon is None else model.charge(cfg.anyon)
    return enumerate_basis(model, anyon, cfg.qudits, cfg.anyons_per_qudit)


def _emit(text: str, cfg: RunConfig, stdout) -> None:
    if cfg.out:
        Path(cfg.out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        stdout.write(text if text.endswith("\n") else text + "\n")


def _fmt(x: complex) -> str:
    return f"{x.real:+.6f}{x.imag:+.6f}j"


# ---------------------------------------------------------------------------
# commands


def cmd_models(cfg: RunConfig, stdout) -> int:
    rows = []
    for name in sorted(BUILTIN_MODELS):
        m = builtin_model(name)
        n = m.n_charges
        rules = [
            f"{m.label(a)} x {m.label(b)} = " + " + ".join(m.label(c) for c in m.fuse(a, b))
            for a in range(n)
            for b in range(a, n)
        ]
        rows.append({
            "name": m.name,
            "charges": list(m.charges),
            "vacuum": m.label(m.vacuum),
            "quantum_dims": {m.label(a): m.quantum_dims[a] for a in range(n)},
            "fusion": rules,
        })
    if cfg.format == "json":
        _emit(json.dumps(rows, indent=1), cfg, stdout)
        return EXIT_OK
    lines = []
    for r in rows:
        lines.append(f"{r['name']}: charges [{', '.join(r['charges'])}], vacuum {r['vacuum']}")
        lines.append("  quantum dims: " + ", ".join(f"d_{k} = {v:.12g}" for k, v in r["quantum_dims"].items()))
        lines.extend(f"  {rule}" for rule in r["fusion"])
    _emit("\n".join(lines), cfg, stdout)
    return EXIT_OK


def cmd_basis(cfg: RunConfig, stdout) -> int:
    space = _space(cfg)
    if cfg.format == "json":
        _emit(formats.basis_to_json(space), cfg, stdout)
        return EXIT_OK
    m = space.model
    keep = None if cfg.sector is None else m.charge(cfg.sector)
    lines = [f"# {m.name}, anyon {m.label(space.anyon)}, {space.qudits} x {space.anyons_per_qudit}, dim {space.dim}",
             "index  sector  state"]
    for i, t in enumerate(space.states):
        if keep is None or t.total_charge() == keep:
            lines.append(f"{i:5d}  {m.label(t.total_charge()):>6}  {t.notation(m)}")
    _emit("\n".join(lines), cfg, stdout)
    return EXIT_OK


def _dump_matrix(mat, cfg: RunConfig, stdout) -> None:
    if cfg.format == "csv":
        _emit(formats.sparse_to_csv(mat, cfg.sparse_threshold), cfg, stdout)
    elif cfg.format == "json":
        _emit(formats.dense_to_json(mat), cfg, stdout)
    else:
        _emit("\n".join("  ".join(_fmt(z) for z in row) for row in np.asarray(mat)), cfg, stdout)


def cmd_generator(cfg: RunConfig, stdout) -> int:
    space = _space(cfg)
    bm = sigma(space, abs(cfg.n)) if cfg.n else sigma(space, 0)
    if cfg.n < 0:
        bm = bm.dagger()
    if cfg.format == "csv":
        bm = to_sparse(bm, cfg.sparse_threshold)
    _dump_matrix(bm.elements, cfg, stdout)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, stdout) -> int:
    space = _space(cfg)
    model_rep = validate_model(space.model)
    artin = check_artin(space, cfg.threads) if space.n_generators >= 1 else None
    ok = model_rep.ok(cfg.tol) and (artin is None or artin.max_residual <= cfg.tol)
    doc = {
        "model": space.model.name,
        "anyon": space.model.label(space.anyon),
        "qudits": space.qudits,
        "anyons_per_qudit": space.anyons_per_qudit,
        "dim": space.dim,
        "tolerance": cfg.tol,
        "pentagon_residual": model_rep.max_pentagon_residual,
        "hexagon_residual": model_rep.max_hexagon_residual,
        "structural_failures": model_rep.structural_failures,
        "yang_baxter_residual": artin.max_yang_baxter_residual if artin else 0.0,
        "far_commutation_residual": artin.max_far_commutation_residual if artin else 0.0,
        "unitarity_residual": artin.max_unitarity_residual if artin else 0.0,
        "relations": artin.relations if artin else [],
        "ok": ok,
    }
    if cfg.format == "json":
        _emit(json.dumps(doc, indent=1), cfg, stdout)
    else:
        lines = [f"{doc['model']} anyon {doc['anyon']}, {space.qudits} x {space.anyons_per_qudit} (dim {space.dim})"]
        for key in ("pentagon_residual", "hexagon_residual", "yang_baxter_residual",
                    "far_commutation_residual", "unitarity_residual"):
            lines.append(f"  {key:<26} {doc[key]:.3e}")
        lines.extend(f"  structural: {s}" for s in model_rep.structural_failures)
        lines.append(f"  {'PASS' if ok else 'FAIL'} at tolerance {cfg.tol:g}")
        _emit("\n".join(lines), cfg, stdout)
    return EXIT_OK if ok else EXIT_FAIL


def _target(selector: str) -> np.ndarray:
    if selector.lower() in NAMED_GATES:
        return NAMED_GATES[selector.lower()]
    path = Path(selector)
    if not path.exists():
        raise ConfigError(f"--compare must be one of {sorted(NAMED_GATES)} or a dense matrix JSON file")
    return formats.dense_from_json(path.read_text(), str(path))


def cmd_run(cfg: RunConfig, stdout) -> int:
    word = formats.load_word(cfg.word)
    model = resolve_model(cfg.model or word.model, cfg.tol)
    space = enumerate_basis(model, model.charge(word.anyon), word.qudits, word.anyons_per_qudit)
    u = compose(space, word)
    if cfg.compare is None:
        _dump_matrix(u.dense(), cfg, stdout)
        return EXIT_OK
    target = _target(cfg.compare)
    sectors = sorted(TABLE_2Q_COMPUTATIONAL) if cfg.sector is None else [model.charge(cfg.sector)]
    results = []
    for s in sectors:
        cmp = compare_gate(space, u, target, s)
        results.append({"sector": model.label(s), "accuracy": cmp.accuracy, "leakage": cmp.leakage,
                        "phase": [cmp.phase_used.real, cmp.phase_used.imag]})
    if cfg.format == "json":
        _emit(json.dumps({"word": cfg.word, "length": len(word), "results": results}, indent=1), cfg, stdout)
    else:
        lines = [f"{cfg.word}: {len(word)} exchanges on {model.name} {space.qudits} x {space.anyons_per_qudit}"]
        lines.extend(f"  sector {r['sector']}: accuracy {r['accuracy']:.3e}  leakage {r['leakage']:.3e}" for r in results)
        _emit("\n".join(lines), cfg, stdout)
    return EXIT_OK


COMMANDS = {
    "models": cmd_models,
    "basis": cmd_basis,
    "generator": cmd_generator,
    "verify": cmd_verify,
    "run": cmd_run,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="anyonbraid", description="Braid generator matrices on anyon fusion spaces.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", help="built-in model name or model JSON file (default: fibonacci, or the word file's model)")
    common.add_argument("--anyon", help="leaf charge label (default: largest quantum dimension)")
    common.add_argument("--qudits", type=int, default=1)
    common.add_argument("--anyons-per-qudit", type=int, default=3)
    common.add_argument("--sector", help="total-charge label")
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--tol", type=float, default=1e-12)
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common.add_argument("--sparse-threshold", type=float, default=0.0)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("models", parents=[common], help="list built-in models")
    sub.add_parser("basis", parents=[common], help="enumerate the fusion basis")
    gen = sub.add_parser("generator", parents=[common], help="dump one generator (negative n: inverse)")
    gen.add_argument("--n", type=int, required=True)
    sub.add_parser("verify", parents=[common], help="model consistency and braid relations")
    run = sub.add_parser("run", parents=[common], help="compose a braid-word file")
    run.add_argument("word", help="braid-word JSON file")
    run.add_argument("--compare", help=f"target gate ({', '.join(sorted(NAMED_GATES))}) or dense matrix JSON")
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    values = {k: v for k, v in vars(args).items()}
    try:
        cfg = RunConfig.from_mapping(values)
        return COMMANDS[cfg.command](cfg, stdout)
    except (ConfigError, GeneratorError, formats.FormatError, WordError, ModelError, LookupError) as exc:
        stderr.write(f"anyonbraid {args.command}: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
