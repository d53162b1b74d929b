"""Lexical-processing measures derived from fitted maps."""
from __future__ import annotations

import csv
import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exceptions import DataError
from .mapping import LinearMap


def _coef(G) -> np.ndarray:
    return np.asarray(G.coefficients if isinstance(G, LinearMap) else G, dtype=np.float64)


def prime_target_approximation(R, prime: int, target: int) -> float:
    """Correlation of the prime's predicted vector with the target's gold vector."""
    R = np.asarray(getattr(R, "R", R))
    n_pred, n_gold = R.shape
    if not (0 <= prime < n_pred and 0 <= target < n_gold):
        raise DataError(f"word index out of range: prime={prime}, target={target}")
    return float(R[prime, target])


def distance_legs(G, sequence: Sequence[int]) -> np.ndarray:
    """Euclidean step lengths origin -> g(cue_1) -> ... -> g(cue_last)."""
    B = _coef(G)
    if len(sequence) == 0:
        raise DataError("empty cue sequence")
    seq = list(sequence)
    if min(seq) < 0 or max(seq) >= B.shape[1]:
        raise DataError(f"cue ordinal out of range for {B.shape[1]} columns")
    pts = np.column_stack([np.zeros(B.shape[0]), B[:, seq]])
    return np.linalg.norm(np.diff(pts, axis=1), axis=0)


def distance_travelled(G, sequence: Sequence[int]) -> float:
    """Total path length through the production map's cue (column) vectors."""
    return float(distance_legs(G, sequence).sum())


def total_distances(G, sequences: Sequence[Sequence[int]]) -> np.ndarray:
    return np.array([distance_travelled(G, s) for s in sequences])


def total_support(gpi, word: int) -> float:
    """Summed positional support of a word's gold cues."""
    supports = getattr(gpi, "supports", gpi)
    if not 0 <= word < len(supports):
        raise DataError(f"no gold-path information for word {word}")
    return float(np.sum(supports[word]))


@dataclass(frozen=True)
class FunctionalLoad:
    """Correlations of cue vectors (rows) with lexome vectors (columns).

    Undefined correlations (a constant cue vector) are NaN.
    """

    cues: list
    lexomes: list
    table: np.ndarray

    def argmax(self) -> dict:
        out = {}
        for name, row in zip(self.cues, self.table):
            out[name] = None if np.all(np.isnan(row)) else self.lexomes[int(np.nanargmax(row))]
        return out


def functional_load(G, inventory, semantic_space) -> FunctionalLoad:
    lexomes = getattr(semantic_space, "lexome_vectors", None)
    if lexomes is None:
        raise DataError("functional load needs simulated semantics with lexome vectors")
    B = _coef(G)
    L = np.array([np.asarray(v) for v in lexomes.values()]).T   # dims x lexomes
    names = [v for _, v in lexomes]
    if len(set(names)) != len(names):
        names = [f"{c}:{v}" for c, v in lexomes]
    Bc = B - B.mean(axis=0)
    Lc = L - L.mean(axis=0)
    bn = np.linalg.norm(Bc, axis=0)
    ln = np.linalg.norm(Lc, axis=0)
    with np.errstate(invalid="ignore", divide="ignore"):
        table = (Bc.T @ Lc) / np.outer(bn, ln)
    table[bn == 0, :] = np.nan
    table[:, ln == 0] = np.nan
    table = np.clip(table, -1.0, 1.0)
    cue_names = inventory.names if inventory is not None else list(range(B.shape[1]))
    return FunctionalLoad(cue_names, names, table)


def pca_project(G, components: int = 2) -> np.ndarray:
    """Project the cue (column) vectors of G onto their leading principal axes.

    Columns are centered over cues before the SVD. Each axis is flipped so
    that its largest-magnitude loading is positive.
    """
    B = _coef(G)
    if B.shape[1] < 2:
        raise DataError("need at least 2 cues for a projection")
    X = B.T - B.T.mean(axis=0)
    _, _, Vt = np.linalg.svd(X, full_matrices=False)
    Vt = Vt[:components]
    if Vt.shape[0] < components:
        Vt = np.vstack([Vt, np.zeros((components - Vt.shape[0], X.shape[1]))])
    for k in range(Vt.shape[0]):
        j = np.argmax(np.abs(Vt[k]))
        if Vt[k, j] < 0:
            Vt[k] = -Vt[k]
    return X @ Vt.T


@dataclass(frozen=True)
class MeasureTable:
    """Named per-item measures, aligned with ``labels``."""

    labels: list
    columns: dict

    def write_csv(self, path: str | os.PathLike, label_header="word") -> None:
        names = list(self.columns)
        header = [label_header] if isinstance(label_header, str) else list(label_header)
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow([*header, *names])
            for k, label in enumerate(self.labels):
                row = label if isinstance(label, (list, tuple)) else [label]
                w.writerow([*row, *(repr(float(self.columns[n][k])) for n in names)])

    def write_long_csv(self, path: str | os.PathLike, label_header="word") -> None:
        """One row per (item, measure): label column(s), ``measure``, ``value``."""
        header = [label_header] if isinstance(label_header, str) else list(label_header)
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow([*header, "measure", "value"])
            for k, label in enumerate(self.labels):
                row = label if isinstance(label, (list, tuple)) else [label]
                for name, values in self.columns.items():
                    w.writerow([*row, name, repr(float(values[k]))])
