"""Production decoding: ordering predicted cues into word forms.

Decoding runs in three stages for every word:

1. Positional support. For each position p a linear map from semantic
   vectors to "which cue sits at position p" indicators is estimated with the
   same least-squares engine as F and G. A word's semantic vector then gives
   a support value for every cue at every position.
2. Path assembly. Cues whose support at a position reaches ``threshold``
   (at most ``top_k`` per position) are chained left to right, starting from
   a boundary-initial cue, respecting cue overlap, until a boundary-final cue
   closes the path.
3. Synthesis by analysis. Every complete path is turned into a binary form
   vector, mapped through the comprehension map F, and scored by its
   correlation with the word's target semantic vector. Candidates are ranked
   by that score.
"""
from __future__ import annotations

import csv
import os
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .cues import CueInventory, CueMatrix, adjacency, sequence_to_vector
from .exceptions import DataError
from .mapping import LinearMap, estimate_map


class Candidate(NamedTuple):
    cues: tuple
    score: float


@dataclass(frozen=True)
class PositionalModel:
    maps: tuple
    threshold: float = 0.1

    @property
    def max_positions(self) -> int:
        return len(self.maps)

    def support(self, S, position: int) -> np.ndarray:
        """Predicted cue supports at a 1-based position, one row per word."""
        if not 1 <= position <= len(self.maps):
            raise DataError(f"no positional map for position {position}")
        return np.asarray(S, dtype=np.float64) @ self.maps[position - 1].coefficients


@dataclass(frozen=True)
class PathResult:
    candidates: list
    metadata: dict = field(default_factory=dict)

    def top(self, i: int) -> tuple | None:
        cands = self.candidates[i]
        return cands[0].cues if cands else None

    def write_csv(self, path: str | os.PathLike, forms: Sequence[str],
                  inventory: CueInventory) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["word", "rank", "candidate", "score"])
            for form, cands in zip(forms, self.candidates):
                for rank, c in enumerate(cands, start=1):
                    w.writerow([form, rank, inventory.sequence_form(c.cues), repr(c.score)])


@dataclass(frozen=True)
class GoldPathInfo:
    """Per word, the positional support received by each cue of its gold chain."""

    supports: list

    def __len__(self) -> int:
        return len(self.supports)

    def write_csv(self, path: str | os.PathLike, forms: Sequence[str]) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["word", "position", "support"])
            for form, sup in zip(forms, self.supports):
                for p, val in enumerate(sup, start=1):
                    w.writerow([form, p, repr(float(val))])


def _values(obj):
    if hasattr(obj, "values") and isinstance(obj.values, np.ndarray):
        return obj.values
    if isinstance(obj, LinearMap):
        return obj.coefficients
    return np.asarray(obj, dtype=np.float64)


def fit_positional(S, cue_matrix: CueMatrix, ridge: float = 0.0,
                   threshold: float = 0.1) -> PositionalModel:
    """Fit one semantic-vector -> cue-at-position map per position.

    The map for position p is estimated only on words whose cue chain has
    at least p cues.
    """
    S = _values(S)
    seqs = cue_matrix.word_cue_sequences
    if len(seqs) == 0:
        raise DataError("cannot fit positional maps on an empty dataset")
    if S.shape[0] != len(seqs):
        raise DataError(f"semantic matrix has {S.shape[0]} rows for {len(seqs)} words")
    n_cues = cue_matrix.shape[1]
    lengths = np.array([len(s) for s in seqs])
    maps = []
    for p in range(int(lengths.max())):
        rows = np.flatnonzero(lengths > p)
        Y = np.zeros((rows.size, n_cues))
        Y[np.arange(rows.size), [seqs[i][p] for i in rows]] = 1.0
        maps.append(estimate_map(S[rows], Y, ridge))
    return PositionalModel(tuple(maps), threshold)


def candidate_form_vector(sequence: Sequence[int], inventory) -> np.ndarray:
    n = inventory if isinstance(inventory, int) else len(inventory)
    return sequence_to_vector(sequence, n)


def is_legal_path(seq: Sequence[int], inventory: CueInventory, successors=None) -> bool:
    """Boundary-initial start, boundary-final end, and overlapping neighbours."""
    if not seq:
        return False
    if successors is None:
        successors = adjacency(inventory)
    if not inventory.is_initial(seq[0]) or not inventory.is_final(seq[-1]):
        return False
    return all(b in successors[a] for a, b in zip(seq, seq[1:]))


def _kept(row: np.ndarray, threshold: float, top_k: int | None) -> frozenset:
    idx = np.flatnonzero(row >= threshold)
    if top_k is not None and idx.size > top_k:
        # highest support first, lower ordinal on ties
        idx = idx[np.lexsort((idx, -row[idx]))[:top_k]]
    return frozenset(idx.tolist())


def learn_paths(inventory: CueInventory, cue_matrix: CueMatrix, S, F,
                positional: PositionalModel, threshold: float | None = None,
                max_length: int | None = None, top_k: int | None = 10,
                block_size: int = 1024) -> tuple[PathResult, GoldPathInfo]:
    """Decode every word's form from its semantic vector.

    Parameters
    ----------
    inventory, cue_matrix :
        Cues of the training data; ``cue_matrix.word_cue_sequences`` provide
        the gold chains used for the support bookkeeping.
    S : array (words x dims)
        Target semantic vectors.
    F : LinearMap or array (cues x dims)
        Comprehension map used for synthesis-by-analysis scoring.
    positional : PositionalModel
    threshold : float, optional
        Minimum positional support; defaults to ``positional.threshold``.
    max_length : int, optional
        Longest path considered; defaults to the longest training chain + 1.
        Positions beyond the fitted positional maps receive no support.
    top_k : int or None
        Keep at most this many cues per position (None disables pruning).

    Returns
    -------
    PathResult, GoldPathInfo
    """
    if threshold is None:
        threshold = positional.threshold
    if not threshold > 0:
        raise DataError(f"threshold must be positive, got {threshold}")
    S = _values(S)
    Fm = _values(F)
    gold = cue_matrix.word_cue_sequences
    n_words, n_cues = cue_matrix.shape
    if S.shape[0] != n_words:
        raise DataError(f"semantic matrix has {S.shape[0]} rows for {n_words} words")
    if Fm.shape[0] != n_cues:
        raise DataError(f"F has {Fm.shape[0]} rows for {n_cues} cues")
    longest = cue_matrix.max_length
    if max_length is None:
        max_length = longest + 1
    if max_length < longest:
        raise DataError(f"max_length {max_length} is shorter than the longest gold path ({longest})")
    n_pos = min(max_length, positional.max_positions)

    succ = adjacency(inventory)
    initial = [inventory.is_initial(j) for j in range(n_cues)]
    final = [inventory.is_final(j) for j in range(n_cues)]

    kept = [[frozenset()] * n_words for _ in range(n_pos)]
    gold_support = [np.zeros(len(g)) for g in gold]
    for p in range(n_pos):
        B = positional.maps[p].coefficients
        for start in range(0, n_words, block_size):
            sup = S[start:start + block_size] @ B
            for r, row in enumerate(sup):
                i = start + r
                kept[p][i] = _kept(row, threshold, top_k)
                if len(gold[i]) > p:
                    gold_support[i][p] = row[gold[i][p]]

    results = []
    for i in range(n_words):
        paths = _assemble(i, kept, succ, initial, final, n_pos)
        results.append(_rank(paths, Fm, S[i]))
    meta = {"threshold": float(threshold), "max_length": int(max_length),
            "top_k": top_k, "positions": int(n_pos)}
    return PathResult(results, meta), GoldPathInfo(gold_support)


def _assemble(i, kept, succ, initial, final, n_pos):
    frontier = [(j,) for j in sorted(kept[0][i]) if initial[j]]
    complete = []
    for p in range(1, n_pos + 1):
        grown = []
        for path in frontier:
            last = path[-1]
            if final[last]:
                complete.append(path)
            elif p < n_pos:
                for j in sorted(succ[last] & kept[p][i]):
                    grown.append(path + (j,))
        frontier = grown
        if not frontier:
            break
    return complete


def _rank(paths, F, target):
    if not paths:
        return []
    S_hat = np.stack([F[sorted(set(path))].sum(axis=0) for path in paths])
    D = S_hat - S_hat.mean(axis=1, keepdims=True)
    t = target - target.mean()
    denom = np.sqrt(np.einsum("ij,ij->i", D, D)) * np.sqrt(t @ t)
    with np.errstate(invalid="ignore", divide="ignore"):
        scores = np.clip((D @ t) / denom, -1.0, 1.0)
    cands = [Candidate(path, float(s)) for path, s in zip(paths, scores)]
    cands.sort(key=lambda c: (np.isnan(c.score), -c.score if not np.isnan(c.score) else 0.0, c.cues))
    return cands
