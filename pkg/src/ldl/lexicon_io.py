"""Reading and writing word datasets and embedding files.

Datasets are comma-separated files with a header line. One column holds the
word form; the remaining columns (lexeme, inflectional features, anything
else) are carried along as strings. Row order is preserved and is the
canonical word index for every matrix built downstream.

Embedding files follow the plain-text fasttext convention: one word per
line, followed by its vector components separated by whitespace.
"""
from __future__ import annotations

import csv
import os
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .exceptions import DataError


@dataclass(frozen=True)
class WordRecord:
    form: str
    attributes: Mapping[str, str] = field(default_factory=dict)

    def __getitem__(self, column: str) -> str:
        return self.attributes[column]


@dataclass(frozen=True)
class Dataset:
    """Ordered, immutable table of word records.

    Attributes
    ----------
    rows : tuple of WordRecord
        One record per word, in file order.
    columns : tuple of str
        All column names, in header order. Includes ``form_column``.
    form_column : str
        Name of the column holding the word form.
    """

    rows: tuple
    columns: tuple
    form_column: str

    def __post_init__(self):
        if len(set(self.columns)) != len(self.columns):
            dup = [c for c in self.columns if self.columns.count(c) > 1]
            raise DataError(f"duplicate column name {dup[0]!r}")
        if self.form_column not in self.columns:
            raise DataError(f"form column {self.form_column!r} not in columns")
        for i, rec in enumerate(self.rows, start=1):
            if not rec.form:
                raise DataError(f"empty form at row {i}")

    @classmethod
    def from_records(cls, records: Iterable[Mapping[str, str]],
                     form_column: str, columns: Sequence[str] | None = None) -> "Dataset":
        """Build a dataset from an iterable of column -> value mappings."""
        records = list(records)
        if columns is None:
            columns = list(records[0].keys()) if records else [form_column]
        columns = tuple(columns)
        rows = []
        for i, rec in enumerate(records, start=1):
            missing = [c for c in columns if c not in rec]
            if missing:
                raise DataError(f"row {i} lacks column {missing[0]!r}")
            attrs = {c: str(rec[c]) for c in columns}
            rows.append(WordRecord(attrs[form_column], attrs))
        return cls(tuple(rows), columns, form_column)

    @property
    def row_count(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def forms(self) -> list[str]:
        return [r.form for r in self.rows]

    def column(self, name: str) -> list[str]:
        self.require_columns([name])
        return [r.attributes[name] for r in self.rows]

    def require_columns(self, names: Iterable[str]) -> None:
        for name in names:
            if name not in self.columns:
                raise DataError(f"unknown column {name!r}; have {list(self.columns)}")

    def index_of(self, form: str) -> int:
        """Row index of the first word with this form."""
        for i, r in enumerate(self.rows):
            if r.form == form:
                return i
        raise DataError(f"unknown word {form!r}")


def load_dataset(path: str | os.PathLike, form_column: str) -> Dataset:
    """Load a comma-separated dataset with a header line.

    Raises
    ------
    DataError
        If the file is missing, the header lacks ``form_column`` or repeats a
        name, a row has the wrong number of fields, or a form cell is empty.
    """
    if not os.path.isfile(path):
        raise DataError(f"dataset file not found: {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path}: missing header line") from None
        header = [h.strip() for h in header]
        seen = set()
        for h in header:
            if h in seen:
                raise DataError(f"{path}: duplicate header name {h!r}")
            seen.add(h)
        if form_column not in header:
            raise DataError(f"{path}: form column {form_column!r} not in header {header}")
        rows = []
        for lineno, fields in enumerate(reader, start=1):
            if not fields:
                continue
            if len(fields) != len(header):
                raise DataError(f"{path}: row {lineno} has {len(fields)} fields, "
                                f"expected {len(header)}")
            attrs = dict(zip(header, fields))
            form = attrs[form_column]
            if not form.strip():
                raise DataError(f"empty form at row {lineno}")
            rows.append(WordRecord(form, attrs))
    return Dataset(tuple(rows), tuple(header), form_column)


def write_dataset(dataset: Dataset, path: str | os.PathLike) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(dataset.columns)
        for rec in dataset.rows:
            writer.writerow([rec.attributes[c] for c in dataset.columns])


def read_embedding_file(path: str | os.PathLike) -> tuple[list[str], np.ndarray]:
    """Parse an embedding text file into (words, matrix) without alignment checks."""
    if not os.path.isfile(path):
        raise DataError(f"embedding file not found: {path}")
    words, vectors = [], []
    width = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            word, fields = parts[0], parts[1:]
            if width is None:
                width = len(fields)
            elif len(fields) != width:
                raise DataError(f"{path}: line {lineno} has {len(fields)} values, "
                                f"expected {width}")
            try:
                vectors.append([float(x) for x in fields])
            except ValueError:
                raise DataError(f"{path}: non-numeric field at line {lineno}") from None
            words.append(word)
    mat = np.array(vectors, dtype=np.float64).reshape(len(words), width or 0)
    return words, mat


def load_embeddings(path: str | os.PathLike, expected_forms: Sequence[str]):
    """Load an embedding file whose rows must match ``expected_forms`` in order.

    Returns a loaded-provenance :class:`~ldl.semantics.SemanticMatrix`. Every
    dataset word must be present, exactly once and in dataset order.
    """
    from .semantics import SemanticMatrix

    words, mat = read_embedding_file(path)
    for i, (got, want) in enumerate(zip(words, expected_forms), start=1):
        if got != want:
            raise DataError(f"order mismatch at line {i}: got {got!r}, expected {want!r}")
    if len(words) != len(expected_forms):
        raise DataError(f"{path}: {len(words)} vectors for {len(expected_forms)} words")
    return SemanticMatrix(mat, {"source": "loaded", "path": os.fspath(path)})


def write_embeddings(path: str | os.PathLike, words: Sequence[str], matrix) -> None:
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.shape[0] != len(words):
        raise DataError("one word per matrix row required")
    with open(path, "w", encoding="utf-8") as fh:
        for w, row in zip(words, matrix):
            if not w or any(ch.isspace() for ch in w):
                raise DataError(f"word {w!r} cannot be written in embedding format")
            fh.write(w + " " + " ".join(repr(float(x)) for x in row) + "\n")
