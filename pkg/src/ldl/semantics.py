"""Semantic matrices: simulated from lexomes, or loaded from embeddings."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .exceptions import DataError
from .lexicon_io import write_embeddings


@dataclass(frozen=True)
class SemanticMatrix:
    """Dense words-by-dimensions matrix with a record of where it came from.

    ``lexome_vectors`` maps ``(column, value)`` pairs to the elementary
    vectors that were summed to form each row; it is only present for
    simulated spaces.
    """

    values: np.ndarray
    provenance: dict = field(default_factory=dict)
    lexome_vectors: dict | None = None

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.ndim != 2:
            raise DataError("semantic matrix must be two-dimensional")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def shape(self) -> tuple:
        return self.values.shape

    @property
    def simulated(self) -> bool:
        return self.lexome_vectors is not None

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)

    def lexome_names(self) -> list[str]:
        """Qualified ``column:value`` names in generation order."""
        if self.lexome_vectors is None:
            return []
        return [f"{c}:{v}" for c, v in self.lexome_vectors]

    def write(self, path: str | os.PathLike, words: Sequence[str]) -> None:
        write_embeddings(path, words, self.values)

    def write_lexomes(self, path: str | os.PathLike) -> None:
        if self.lexome_vectors is None:
            raise DataError("semantic space has no lexome vectors (loaded provenance)")
        write_embeddings(path, self.lexome_names(), np.array(list(self.lexome_vectors.values())))


def simulate_semantics(dataset, lexeme_column, feature_columns: Sequence[str] = (),
                       dims: int | None = None, seed: int = 0, sd: float = 1.0,
                       n_cues: int | None = None) -> SemanticMatrix:
    """Simulate semantic vectors by summing lexome vectors.

    One Gaussian vector (mean 0, standard deviation ``sd``) is drawn for every
    distinct lexeme and for every distinct (feature column, value) pair. A
    word's row is its lexeme vector plus one vector per feature column.

    Parameters
    ----------
    dataset : Dataset
    lexeme_column : str or sequence of str
        Column(s) naming the base lexeme(s).
    feature_columns : sequence of str
        Inflectional feature columns. Empty cells are rejected: unmarked
        values must be spelled out (e.g. ``plain``).
    dims : int, optional
        Vector length. Defaults to ``n_cues`` when given.
    seed : int
        Seed for ``numpy.random.default_rng``.
    """
    base_columns = [lexeme_column] if isinstance(lexeme_column, str) else list(lexeme_column)
    feature_columns = list(feature_columns)
    if dims is None:
        dims = n_cues
    if dims is None or dims < 1:
        raise DataError(f"dims must be >= 1, got {dims}")
    columns = base_columns + feature_columns
    dataset.require_columns(columns)

    # first-occurrence order per column fixes the draw order
    order: dict = {}
    for col in columns:
        for i, val in enumerate(dataset.column(col), start=1):
            if not val.strip():
                raise DataError(f"empty value in column {col!r} at row {i}")
            order.setdefault((col, val), None)
    rng = np.random.default_rng(seed)
    draws = rng.normal(0.0, sd, size=(len(order), dims))
    lexomes = {key: draws[k] for k, key in enumerate(order)}
    for vec in lexomes.values():
        vec.setflags(write=False)

    S = np.zeros((len(dataset), dims))
    for i, rec in enumerate(dataset.rows):
        for col in columns:
            S[i] += lexomes[(col, rec.attributes[col])]
    prov = {"source": "simulated", "seed": seed, "sd": sd,
            "base_columns": base_columns, "feature_columns": feature_columns}
    return SemanticMatrix(S, prov, lexomes)


def lexome_vector(space: SemanticMatrix, name) -> np.ndarray:
    """Elementary vector of a lexome.

    ``name`` may be a ``(column, value)`` tuple, a qualified ``"column:value"``
    string, or a bare value when that value occurs in only one column.
    """
    if space.lexome_vectors is None:
        raise DataError("lexome vectors are only available for simulated semantics")
    if isinstance(name, tuple):
        if name in space.lexome_vectors:
            return space.lexome_vectors[name]
        raise DataError(f"unknown lexome {name!r}")
    matches = [k for k in space.lexome_vectors if k[1] == name or f"{k[0]}:{k[1]}" == name]
    if not matches:
        raise DataError(f"unknown lexome {name!r}")
    if len(matches) > 1:
        raise DataError(f"ambiguous lexome {name!r}; qualify as one of "
                        f"{[f'{c}:{v}' for c, v in matches]}")
    return space.lexome_vectors[matches[0]]
