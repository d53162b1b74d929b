"""Comprehension and production accuracy."""
from __future__ import annotations

import csv
import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exceptions import DataError, NumericalError


def pearson(u, v) -> float:
    u = np.asarray(u, dtype=np.float64).ravel()
    v = np.asarray(v, dtype=np.float64).ravel()
    if u.size == 0 or u.size != v.size:
        raise DataError("pearson needs two non-empty vectors of equal length")
    du, dv = u - u.mean(), v - v.mean()
    nu, nv = np.sqrt(du @ du), np.sqrt(dv @ dv)
    if nu == 0 or nv == 0:
        raise NumericalError("correlation undefined for a zero-variance vector")
    return float(np.clip((du @ dv) / (nu * nv), -1.0, 1.0))


def _standardize(M, label):
    M = np.asarray(M, dtype=np.float64)
    D = M - M.mean(axis=1, keepdims=True)
    norms = np.sqrt(np.einsum("ij,ij->i", D, D))
    bad = np.flatnonzero(norms == 0)
    if bad.size:
        raise NumericalError(f"zero-variance row {bad[0]} in {label}; correlation undefined")
    return D / norms[:, None]


def correlation_matrix(A, B, block_size: int = 2048) -> np.ndarray:
    """Pearson correlations of every row of ``A`` with every row of ``B``."""
    Za, Zb = _standardize(A, "predicted matrix"), _standardize(B, "gold matrix")
    R = np.empty((Za.shape[0], Zb.shape[0]))
    for start in range(0, Za.shape[0], block_size):
        R[start:start + block_size] = Za[start:start + block_size] @ Zb.T
    np.clip(R, -1.0, 1.0, out=R)
    return R


@dataclass(frozen=True)
class CorrelationResult:
    """Outcome of nearest-correlation matching.

    ``R[i, j]`` is r(predicted_i, gold_j); ``best[i]`` is the gold row that
    maximizes row i of R (lowest index on ties); ``correct[i]`` tells whether
    that row carries the same form as word i.
    """

    accuracy: float
    R: np.ndarray
    best: np.ndarray
    correct: np.ndarray

    def write_csv(self, path: str | os.PathLike, forms: Sequence[str]) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["", *forms])
            for form, row in zip(forms, self.R):
                w.writerow([form, *(repr(float(x)) for x in row)])


def eval_SC(S_hat, S, forms: Sequence[str] | None = None) -> CorrelationResult:
    """Score comprehension: is each predicted vector closest to its own gold vector?

    A word counts as understood when the gold row with the highest
    correlation to its predicted row has the same form string. Homophones
    therefore count as correct for each other.
    """
    S_hat = np.asarray(S_hat, dtype=np.float64)
    S = np.asarray(S, dtype=np.float64)
    if S_hat.shape != S.shape:
        raise DataError(f"shape mismatch: {S_hat.shape} vs {S.shape}")
    if forms is None:
        forms = list(range(S.shape[0]))
    if len(forms) != S.shape[0]:
        raise DataError(f"{len(forms)} forms for {S.shape[0]} rows")
    R = correlation_matrix(S_hat, S)
    best = np.argmax(R, axis=1) if R.size else np.zeros(0, dtype=int)
    forms_arr = np.asarray(forms, dtype=object)
    correct = forms_arr[best] == forms_arr if len(forms) else np.zeros(0, dtype=bool)
    correct = np.asarray(correct, dtype=bool)
    acc = float(correct.mean()) if correct.size else float("nan")
    return CorrelationResult(acc, R, best, correct)


def _cues_of(candidate):
    return tuple(getattr(candidate, "cues", candidate))


def eval_production(decoded, gold: Sequence[Sequence[int]]) -> float:
    """Fraction of words whose top-ranked candidate equals the gold cue chain.

    ``decoded`` is a :class:`~ldl.paths.PathResult` or a per-word list of
    ranked candidates (cue-ordinal sequences or objects with ``.cues``).
    """
    lists = getattr(decoded, "candidates", decoded)
    if len(lists) != len(gold):
        raise DataError(f"{len(lists)} decoded words for {len(gold)} gold sequences")
    if not gold:
        return float("nan")
    hits = sum(1 for cands, g in zip(lists, gold)
               if cands and _cues_of(cands[0]) == tuple(g))
    return hits / len(gold)
