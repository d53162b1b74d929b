"""Command-line driver: dataset -> cues -> semantics -> maps -> evaluation -> measures.

Settings come from a flat ``key = value`` file (``--config``) and from
command-line flags; flags win. ``fit`` writes all artifacts plus a
``manifest.json`` to the output directory; the other subcommands read them
back from there.

Exit status: 0 success, 2 configuration error, 3 data error, 4 numerical
failure.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from .cues import build_cue_matrix, read_inventory, read_mtx
from .evaluation import eval_SC, eval_production
from .exceptions import ConfigError, DataError, NumericalError
from .lexicon_io import load_dataset, load_embeddings
from .mapping import apply_map, comprehension_map, load_map, production_map, save_map
from .measures import MeasureTable, distance_travelled, pca_project, total_support
from .paths import fit_positional, learn_paths
from .semantics import simulate_semantics

EXIT_CONFIG, EXIT_DATA, EXIT_NUMERIC = 2, 3, 4


@dataclass
class RunConfig:
    dataset: str = ""
    form_column: str = "Word"
    lexeme_column: str = ""
    feature_columns: list = field(default_factory=list)
    embeddings: str = ""
    grams: int = 2
    tokenized: bool = False
    separator: str = ""
    dims: int = 0
    seed: int = 0
    sd: float = 1.0
    ridge: float = 0.0
    threshold: float = 0.1
    max_length: int = 0
    top_k: int = 10
    output: str = "ldl_out"

    @classmethod
    def from_mapping(cls, values: dict) -> "RunConfig":
        known = {f.name: f for f in dataclasses.fields(cls)}
        kwargs = {}
        for key, raw in values.items():
            name = key.replace("-", "_")
            if name not in known:
                raise ConfigError(f"unknown configuration key {key!r}")
            kwargs[name] = _coerce(name, known[name], raw)
        return cls(**kwargs)

    def validate(self) -> None:
        if not self.dataset:
            raise ConfigError("no dataset given")
        if bool(self.lexeme_column) == bool(self.embeddings):
            raise ConfigError("give exactly one semantic source: lexeme_column "
                              "(simulated) or embeddings (loaded)")
        if self.grams < 1:
            raise ConfigError("grams must be >= 1")
        if self.tokenized and not self.separator:
            raise ConfigError("tokenized forms need a separator")
        if self.threshold <= 0:
            raise ConfigError("threshold must be positive")
        if self.ridge < 0:
            raise ConfigError("ridge must be non-negative")

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


def _coerce(name, fld, raw):
    if not isinstance(raw, str):
        return raw
    raw = raw.strip()
    try:
        if fld.type in ("bool", bool):
            low = raw.lower()
            if low in ("1", "true", "yes", "on"):
                return True
            if low in ("0", "false", "no", "off"):
                return False
            raise ValueError(raw)
        if fld.type in ("int", int):
            return int(raw)
        if fld.type in ("float", float):
            return float(raw)
        if fld.type in ("list", list):
            return [c.strip() for c in raw.split(",") if c.strip()]
    except ValueError:
        raise ConfigError(f"bad value for {name}: {raw!r}") from None
    return raw


def read_config_file(path: str) -> dict:
    if not os.path.isfile(path):
        raise ConfigError(f"config file not found: {path}")
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key = value")
            key, value = line.split("=", 1)
            values[key.strip()] = value.strip()
    return values


# ---------------------------------------------------------------- pipeline

def _cues(cfg, ds):
    return build_cue_matrix(ds, cfg.grams, cfg.tokenized, cfg.separator)


def _semantics(cfg, ds, n_cues):
    if cfg.embeddings:
        return load_embeddings(cfg.embeddings, ds.forms)
    return simulate_semantics(ds, cfg.lexeme_column, cfg.feature_columns,
                              dims=cfg.dims or None, seed=cfg.seed, sd=cfg.sd, n_cues=n_cues)


def _decode(cfg, inv, cm, S, F):
    pm = fit_positional(S, cm, cfg.ridge, cfg.threshold)
    return learn_paths(inv, cm, S, F, pm, threshold=cfg.threshold,
                       max_length=cfg.max_length or None, top_k=cfg.top_k or None)


def run_fit(cfg: RunConfig, produce: bool = True) -> dict:
    """Fit F and G and write artifacts; returns the manifest."""
    cfg.validate()
    ds = load_dataset(cfg.dataset, cfg.form_column)
    if len(ds) == 0:
        raise DataError(f"{cfg.dataset}: dataset has no rows")
    inv, cm = _cues(cfg, ds)
    S = _semantics(cfg, ds, len(inv))
    F = comprehension_map(cm, S, cfg.ridge)
    G = production_map(S, cm, cfg.ridge)
    comp = eval_SC(apply_map(cm.matrix, F), S.values, ds.forms)
    manifest = {
        "config": cfg.as_dict(),
        "words": len(ds),
        "cues": len(inv),
        "dims": int(S.shape[1]),
        "solvers": {"F": F.solver, "G": G.solver},
        "fit_residual": {"F": F.fit_residual, "G": G.fit_residual},
        "comprehension_accuracy": comp.accuracy,
    }
    res = gpi = None
    if produce:
        res, gpi = _decode(cfg, inv, cm, S, F)
        manifest["production_accuracy"] = eval_production(res, cm.word_cue_sequences)
        manifest["decoding"] = res.metadata

    out = cfg.output
    os.makedirs(out, exist_ok=True)
    inv.write(os.path.join(out, "cues.txt"))
    cm.write_mtx(os.path.join(out, "C.mtx"))
    S.write(os.path.join(out, "S.txt"), ds.forms)
    if S.simulated:
        S.write_lexomes(os.path.join(out, "lexomes.txt"))
    save_map(F, os.path.join(out, "F.npy"))
    save_map(G, os.path.join(out, "G.npy"))
    if res is not None:
        res.write_csv(os.path.join(out, "paths.csv"), ds.forms, inv)
        gpi.write_csv(os.path.join(out, "gold_paths.csv"), ds.forms)
    _write_json(os.path.join(out, "manifest.json"), manifest)
    return manifest


def _write_json(path, obj):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_artifacts(out: str, overrides: dict | None = None):
    """Reload a fitted run. Returns (cfg, manifest, dataset, inventory, cue_matrix, S, F, G)."""
    mpath = os.path.join(out, "manifest.json")
    if not os.path.isfile(mpath):
        raise DataError(f"no fitted artifacts in {out} (manifest.json missing)")
    with open(mpath, encoding="utf-8") as fh:
        manifest = json.load(fh)
    values = dict(manifest["config"])
    values.update(overrides or {})
    cfg = RunConfig.from_mapping(values)
    ds = load_dataset(cfg.dataset, cfg.form_column)
    inv, cm = _cues(cfg, ds)
    for name in ("cues.txt", "C.mtx", "S.txt", "F.npy", "G.npy"):
        if not os.path.isfile(os.path.join(out, name)):
            raise DataError(f"missing artifact {name} in {out}")
    if read_inventory(os.path.join(out, "cues.txt")) != inv.names:
        raise DataError("stored cue inventory does not match the dataset")
    C = read_mtx(os.path.join(out, "C.mtx"))
    if C.shape != cm.shape or (C != cm.matrix).nnz:
        raise DataError("stored C matrix does not match the dataset")
    S = load_embeddings(os.path.join(out, "S.txt"), ds.forms)
    F = load_map(os.path.join(out, "F.npy"), cfg.ridge)
    G = load_map(os.path.join(out, "G.npy"), cfg.ridge)
    return cfg, manifest, ds, inv, cm, S, F, G


def run_evaluate(out: str, production: bool = False, write_r: bool = False,
                 overrides: dict | None = None) -> dict:
    cfg, _, ds, inv, cm, S, F, _ = load_artifacts(out, overrides)
    comp = eval_SC(apply_map(cm.matrix, F), S.values, ds.forms)
    report = {"comprehension_accuracy": comp.accuracy}
    if write_r:
        comp.write_csv(os.path.join(out, "R.csv"), ds.forms)
    if production:
        res, _ = _decode(cfg, inv, cm, S, F)
        report["production_accuracy"] = eval_production(res, cm.word_cue_sequences)
    return report


def run_produce(out: str, overrides: dict | None = None) -> dict:
    cfg, _, ds, inv, cm, S, F, _ = load_artifacts(out, overrides)
    res, gpi = _decode(cfg, inv, cm, S, F)
    res.write_csv(os.path.join(out, "paths.csv"), ds.forms, inv)
    gpi.write_csv(os.path.join(out, "gold_paths.csv"), ds.forms)
    return {"production_accuracy": eval_production(res, cm.word_cue_sequences), **res.metadata}


def read_pairs(path: str, ds) -> list[tuple[int, int]]:
    if not os.path.isfile(path):
        raise DataError(f"pair list not found: {path}")
    pairs = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if not reader.fieldnames or not {"prime", "target"} <= set(reader.fieldnames):
            raise DataError(f"{path}: header must contain 'prime' and 'target'")
        for row in reader:
            pairs.append((ds.index_of(row["prime"]), ds.index_of(row["target"])))
    return pairs


def write_projection(path: str, inv, coords) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["cue", "pc1", "pc2"])
        for name, (x, y) in zip(inv.names, coords):
            w.writerow([name, repr(float(x)), repr(float(y))])


def run_measures(out: str, pairs_path: str | None = None,
                 overrides: dict | None = None) -> list[str]:
    cfg, _, ds, inv, cm, S, F, G = load_artifacts(out, overrides)
    pairs = read_pairs(pairs_path, ds) if pairs_path else None
    gold = cm.word_cue_sequences
    _, gpi = _decode(cfg, inv, cm, S, F)
    table = MeasureTable(ds.forms, {
        "distance_travelled": [distance_travelled(G, g) for g in gold],
        "total_support": [total_support(gpi, i) for i in range(len(ds))],
    })
    written = [os.path.join(out, "measures.csv")]
    table.write_long_csv(written[0])
    if pairs is not None:
        comp = eval_SC(apply_map(cm.matrix, F), S.values, ds.forms)
        pta = MeasureTable([(ds.forms[p], ds.forms[t]) for p, t in pairs],
                           {"pta": [comp.R[p, t] for p, t in pairs]})
        written.append(os.path.join(out, "pta.csv"))
        pta.write_long_csv(written[-1], label_header=["prime", "target"])
    written.append(os.path.join(out, "projection.csv"))
    write_projection(written[-1], inv, pca_project(G))
    return written


def run_project(out: str) -> str:
    _, _, _, inv, _, _, _, G = load_artifacts(out)
    path = os.path.join(out, "projection.csv")
    write_projection(path, inv, pca_project(G))
    return path


def run_simulate(cfg: RunConfig) -> str:
    if not cfg.dataset or not cfg.lexeme_column:
        raise ConfigError("simulate-semantics needs dataset and lexeme_column")
    ds = load_dataset(cfg.dataset, cfg.form_column)
    inv, _ = _cues(cfg, ds)
    S = simulate_semantics(ds, cfg.lexeme_column, cfg.feature_columns,
                           dims=cfg.dims or None, seed=cfg.seed, sd=cfg.sd, n_cues=len(inv))
    os.makedirs(cfg.output, exist_ok=True)
    path = os.path.join(cfg.output, "S.txt")
    S.write(path, ds.forms)
    S.write_lexomes(os.path.join(cfg.output, "lexomes.txt"))
    return path


# ---------------------------------------------------------------- argparse

CONFIG_FLAGS = [f.name for f in dataclasses.fields(RunConfig)]


def _add_config_flags(p):
    p.add_argument("--config", help="flat key = value configuration file")
    for name in CONFIG_FLAGS:
        flag = "--" + name.replace("_", "-")
        if name == "tokenized":
            p.add_argument(flag, dest=name, action="store_const", const="true", default=None)
            p.add_argument("--no-tokenized", dest=name, action="store_const", const="false")
        else:
            p.add_argument(flag, dest=name, default=None)


def _overrides(args) -> dict:
    return {n: getattr(args, n) for n in CONFIG_FLAGS if getattr(args, n, None) is not None}


def _config(args) -> RunConfig:
    values = read_config_file(args.config) if args.config else {}
    values.update(_overrides(args))
    return RunConfig.from_mapping(values)


def _output_dir(args) -> str:
    if args.output:
        return args.output
    if args.config:
        return _config(args).output
    return RunConfig.output


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ldl", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="build C and S, fit F and G, write artifacts")
    _add_config_flags(p)
    p.add_argument("--no-produce", action="store_true", help="skip path decoding")

    p = sub.add_parser("evaluate", help="re-evaluate stored artifacts")
    _add_config_flags(p)
    p.add_argument("--production", action="store_true")
    p.add_argument("--write-r", action="store_true", help="write R.csv")

    p = sub.add_parser("produce", help="decode word forms; write paths.csv, gold_paths.csv")
    _add_config_flags(p)

    p = sub.add_parser("measures", help="distance travelled, support, PTA, projection")
    _add_config_flags(p)
    p.add_argument("--pairs", help="CSV with prime,target columns")

    p = sub.add_parser("project", help="2-D PCA projection of G's cue vectors")
    _add_config_flags(p)

    p = sub.add_parser("simulate-semantics", help="write a simulated S matrix")
    _add_config_flags(p)
    return parser


DECODE_KEYS = ("threshold", "max_length", "top_k", "ridge")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "fit":
            result = run_fit(_config(args), produce=not args.no_produce)
            result = {k: result[k] for k in ("comprehension_accuracy", "production_accuracy")
                      if k in result}
        elif args.command == "simulate-semantics":
            result = {"written": run_simulate(_config(args))}
        else:
            out = _output_dir(args)
            extra = {k: v for k, v in _overrides(args).items() if k in DECODE_KEYS}
            if args.command == "evaluate":
                result = run_evaluate(out, args.production, args.write_r, extra)
            elif args.command == "produce":
                result = run_produce(out, extra)
            elif args.command == "measures":
                result = {"written": run_measures(out, args.pairs, extra)}
            else:
                result = {"written": run_project(out)}
    except ConfigError as exc:
        print(f"ldl: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DataError as exc:
        print(f"ldl: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (NumericalError, np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"ldl: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    print(json.dumps(result, indent=2, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
