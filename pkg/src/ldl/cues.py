"""Boundary-marked n-gram cues and the binary form matrix C.

A word form is split into tokens (characters, or separator-delimited units
such as syllables or phones), padded with a boundary token on both sides,
and cut into overlapping windows of ``n`` tokens. Each distinct window is a
cue and owns one column of C.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.io
import scipy.sparse as sp

from .exceptions import DataError

BOUNDARY = "#"


def tokenize_form(form: str, tokenized: bool = False, separator: str = "",
                  boundary: str = BOUNDARY) -> list[str]:
    """Split ``form`` into tokens and add a boundary token at both ends.

    >>> tokenize_form("go_rUm_ni_da", tokenized=True, separator="_")
    ['#', 'go', 'rUm', 'ni', 'da', '#']
    >>> tokenize_form("ab")
    ['#', 'a', 'b', '#']
    """
    if not form:
        raise DataError("empty form")
    if boundary in form:
        raise DataError(f"form {form!r} contains the reserved boundary symbol {boundary!r}")
    if tokenized:
        if not separator:
            raise DataError("tokenized forms need a non-empty separator")
        tokens = form.split(separator)
        if any(t == "" for t in tokens):
            raise DataError(f"form {form!r} has an empty token")
    else:
        tokens = list(form)
    return [boundary, *tokens, boundary]


@dataclass(frozen=True)
class CueInventory:
    """Ordered cue vocabulary.

    Cues are stored as token tuples; ``names`` gives their display strings
    (tokens joined by the separator, e.g. ``"go_rUm"`` or ``"#tr"``).
    Column order is first occurrence over the dataset, scanned row by row.
    """

    n: int
    cues: tuple
    tokenized: bool = False
    separator: str = ""
    boundary: str = BOUNDARY
    cue_index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "cue_index", {c: j for j, c in enumerate(self.cues)})
        if len(self.cue_index) != len(self.cues):
            raise DataError("cue inventory contains duplicates")

    def __len__(self) -> int:
        return len(self.cues)

    @property
    def joiner(self) -> str:
        return self.separator if self.tokenized else ""

    def name(self, j: int) -> str:
        return self.joiner.join(self.cues[j])

    @property
    def names(self) -> list[str]:
        return [self.name(j) for j in range(len(self.cues))]

    def index(self, cue) -> int:
        """Column of a cue given as a token tuple or display string."""
        key = cue if isinstance(cue, tuple) else self._parse(cue)
        try:
            return self.cue_index[key]
        except KeyError:
            raise DataError(f"unknown cue {cue!r}") from None

    def _parse(self, name: str) -> tuple:
        return tuple(name.split(self.separator)) if self.tokenized else tuple(name)

    def is_initial(self, j: int) -> bool:
        return self.cues[j][0] == self.boundary

    def is_final(self, j: int) -> bool:
        return self.cues[j][-1] == self.boundary

    def sequence_form(self, seq: Sequence[int]) -> str:
        """Reassemble the word form spelled by a chain of overlapping cues."""
        if len(seq) == 0:
            return ""
        tokens = list(self.cues[seq[0]])
        for j in seq[1:]:
            tokens.append(self.cues[j][-1])
        tokens = [t for t in tokens if t != self.boundary]
        return self.joiner.join(tokens)

    def write(self, path: str | os.PathLike) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for name in self.names:
                fh.write(name + "\n")


@dataclass(frozen=True)
class CueMatrix:
    """Sparse binary words-by-cues matrix plus each word's ordered cue chain."""

    matrix: sp.csr_matrix
    word_cue_sequences: tuple

    @property
    def shape(self) -> tuple:
        return self.matrix.shape

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()

    @property
    def csc(self) -> sp.csc_matrix:
        cached = self.__dict__.get("_csc")
        if cached is None:
            cached = self.matrix.tocsc()
            object.__setattr__(self, "_csc", cached)
        return cached

    @property
    def max_length(self) -> int:
        return max((len(s) for s in self.word_cue_sequences), default=0)

    def write_mtx(self, path: str | os.PathLike) -> None:
        scipy.io.mmwrite(path, self.matrix, field="integer", symmetry="general")


def _windows(tokens: Sequence[str], n: int) -> list[tuple]:
    return [tuple(tokens[k:k + n]) for k in range(len(tokens) - n + 1)]


def build_cue_matrix(dataset_or_forms, n: int = 2, tokenized: bool = False,
                     separator: str = "", boundary: str = BOUNDARY):
    """Build the cue inventory and binary form matrix for a list of words.

    Parameters
    ----------
    dataset_or_forms : Dataset or sequence of str
        Words in canonical row order.
    n : int
        Gram order; 2 gives di-syllables/diphones, 3 triphones.
    tokenized, separator :
        If ``tokenized``, forms are split on ``separator``; otherwise every
        character is a token.

    Returns
    -------
    inventory : CueInventory
    cue_matrix : CueMatrix
    """
    if n < 1:
        raise DataError(f"gram order must be >= 1, got {n}")
    forms = dataset_or_forms.forms if hasattr(dataset_or_forms, "forms") else list(dataset_or_forms)
    cue_index: dict = {}
    sequences = []
    indptr, indices = [0], []
    for i, form in enumerate(forms, start=1):
        try:
            tokens = tokenize_form(form, tokenized, separator, boundary)
        except DataError as exc:
            raise DataError(f"row {i}: {exc}") from None
        if len(tokens) < n:
            raise DataError(f"row {i}: form {form!r} is too short for {n}-grams")
        seq = []
        for cue in _windows(tokens, n):
            j = cue_index.setdefault(cue, len(cue_index))
            seq.append(j)
        sequences.append(tuple(seq))
        cols = sorted(set(seq))
        indices.extend(cols)
        indptr.append(len(indices))
    inventory = CueInventory(n, tuple(cue_index), tokenized, separator, boundary)
    data = np.ones(len(indices), dtype=np.int8)
    mat = sp.csr_matrix((data, np.array(indices, dtype=np.int64), np.array(indptr, dtype=np.int64)),
                        shape=(len(forms), len(inventory)))
    return inventory, CueMatrix(mat, tuple(sequences))


def adjacency(inventory: CueInventory) -> list[frozenset]:
    """Successor sets: ``b`` may follow ``a`` when their n-1 token overlaps agree.

    A cue ending in the boundary token closes the word and has no successors.
    """
    if len(inventory) == 0:
        raise DataError("empty cue inventory")
    k = inventory.n - 1
    by_prefix: dict = {}
    for j, cue in enumerate(inventory.cues):
        if cue[0] == inventory.boundary and k > 0:
            # word-initial cues only ever open a path
            continue
        by_prefix.setdefault(cue[:k], []).append(j)
    succ = []
    for j, cue in enumerate(inventory.cues):
        if cue[-1] == inventory.boundary:
            succ.append(frozenset())
        else:
            succ.append(frozenset(by_prefix.get(cue[len(cue) - k:], ())))
    return succ


def sequence_to_vector(seq: Sequence[int], n_cues: int) -> np.ndarray:
    vec = np.zeros(n_cues)
    for j in seq:
        if not 0 <= j < n_cues:
            raise DataError(f"unknown cue ordinal {j}")
        vec[j] = 1.0
    return vec


def read_inventory(path: str | os.PathLike) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        return [line.rstrip("\n") for line in fh if line.rstrip("\n")]


def read_mtx(path: str | os.PathLike) -> sp.csr_matrix:
    return sp.csr_matrix(scipy.io.mmread(path))
