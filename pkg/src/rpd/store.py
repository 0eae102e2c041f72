"""Embedding matrices: loading, saving, normalization, and vocabulary alignment.

Two text formats are supported:

* ``word2vec_text``: a header line ``"n d"`` followed by n lines
  ``"word v1 ... vd"``, space separated, UTF-8 words.
* ``glove_text``: the same data lines with no header; d is inferred from the
  first line and n from the line count.

Floats are written with ten significant digits so that a save/load round
trip reproduces values within 1e-8.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import (
    AlignmentError,
    DegenerateInputError,
    DimensionError,
    DuplicateWordError,
    FormatError,
    ParseError,
    PreconditionError,
)

FORMATS = ("word2vec_text", "glove_text")

_FORMAT_ALIASES = {
    "word2vec": "word2vec_text",
    "word2vec_text": "word2vec_text",
    "glove": "glove_text",
    "glove_text": "glove_text",
}

_FLOAT_FMT = "%.9e"  # ten significant digits


@dataclass(frozen=True, eq=False)
class EmbeddingMatrix:
    """A vocabulary-indexed dense embedding matrix.

    Row ``i`` of ``matrix`` is the vector of ``vocab[i]``. ``standardized``
    records whether the matrix has been rescaled to unit root-mean-square
    entry magnitude (see :func:`standardize`).

    Instances are immutable; the matrix is stored read-only and may be shared
    across threads.
    """

    vocab: tuple[str, ...]
    matrix: np.ndarray
    standardized: bool = False

    def __post_init__(self) -> None:
        vocab = tuple(self.vocab)
        matrix = np.array(self.matrix, dtype=np.float64, order="C", copy=True)
        if matrix.ndim != 2:
            raise DimensionError(f"matrix must be 2-D, got shape {matrix.shape}")
        n, d = matrix.shape
        if n < 1 or d < 1:
            raise PreconditionError(f"matrix must be at least 1x1, got {n}x{d}")
        if len(vocab) != n:
            raise DimensionError(
                f"vocab length {len(vocab)} does not match matrix row count {n}"
            )
        seen = set()
        for word in vocab:
            if not isinstance(word, str) or not word:
                raise PreconditionError(f"invalid vocabulary entry {word!r}")
            if any(ch.isspace() for ch in word):
                raise PreconditionError(f"vocabulary entry contains whitespace: {word!r}")
            if word in seen:
                raise DuplicateWordError(f"duplicate word in vocabulary: {word!r}")
            seen.add(word)
        if not np.all(np.isfinite(matrix)):
            raise PreconditionError("matrix contains non-finite entries")
        if self.standardized:
            scale = float(np.sqrt(np.mean(matrix * matrix)))
            if abs(scale - 1.0) > 1e-9:
                raise PreconditionError(
                    f"standardized flag set but entry scale is {scale!r}"
                )
        matrix.setflags(write=False)
        object.__setattr__(self, "vocab", vocab)
        object.__setattr__(self, "matrix", matrix)

    @property
    def n(self) -> int:
        return len(self.vocab)

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[1])

    @cached_property
    def index(self) -> dict[str, int]:
        """Word to row-index mapping."""
        return {word: i for i, word in enumerate(self.vocab)}


@dataclass(frozen=True, eq=False)
class AlignedPair:
    """Two embedding matrices restricted to a shared, identically ordered vocabulary.

    The two sides may have different dimensions; only the row count must agree.
    Coverage fractions record how much of each original vocabulary survived
    the intersection.
    """

    left: EmbeddingMatrix
    right: EmbeddingMatrix
    shared_vocab: tuple[str, ...]
    coverage_left: float = 1.0
    coverage_right: float = 1.0

    def __post_init__(self) -> None:
        shared = tuple(self.shared_vocab)
        object.__setattr__(self, "shared_vocab", shared)
        if not shared:
            raise AlignmentError("shared vocabulary is empty")
        if self.left.vocab != shared or self.right.vocab != shared:
            raise AlignmentError("left/right vocabularies do not match shared_vocab")

    @property
    def n(self) -> int:
        return len(self.shared_vocab)


def _resolve_format(format: str) -> str:
    try:
        return _FORMAT_ALIASES[format]
    except KeyError:
        raise PreconditionError(
            f"unknown embedding format {format!r}; expected one of {FORMATS}"
        ) from None


def _parse_data_line(line: str, lineno: int, expected_dim: int | None, path: Path):
    fields = line.split()
    if expected_dim is not None and len(fields) != expected_dim + 1:
        raise ParseError(
            f"{path}:{lineno}: expected {expected_dim + 1} fields, got {len(fields)}"
        )
    if len(fields) < 2:
        raise ParseError(f"{path}:{lineno}: expected a word and at least one value")
    word = fields[0]
    try:
        values = [float(v) for v in fields[1:]]
    except ValueError as exc:
        raise ParseError(f"{path}:{lineno}: non-numeric value ({exc})") from None
    if not all(np.isfinite(values)):
        raise ParseError(f"{path}:{lineno}: non-finite value")
    return word, values


def load_embeddings(path: str | Path, format: str) -> EmbeddingMatrix:
    """Load an embedding matrix from a text file.

    Args:
        path: File to read.
        format: ``"word2vec_text"`` or ``"glove_text"`` (short aliases
            ``"word2vec"`` / ``"glove"`` accepted).

    Returns:
        An :class:`EmbeddingMatrix` with ``standardized=False`` and rows in
        file order.

    Raises:
        ParseError: malformed line (wrong field count, non-numeric value).
        FormatError: header/content mismatch or empty file.
        DuplicateWordError: a word occurs twice.
    """
    fmt = _resolve_format(format)
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        lines = [ln for ln in (raw.rstrip("\n") for raw in fh) if ln.strip()]

    if not lines:
        raise FormatError(f"{path}: empty embedding file")

    start = 0
    declared_n = None
    dim = None
    if fmt == "word2vec_text":
        header = lines[0].split()
        if len(header) != 2:
            raise FormatError(f"{path}:1: header must be 'n d', got {lines[0]!r}")
        try:
            declared_n, dim = int(header[0]), int(header[1])
        except ValueError:
            raise FormatError(f"{path}:1: header must be 'n d', got {lines[0]!r}") from None
        if declared_n < 1 or dim < 1:
            raise FormatError(f"{path}:1: header sizes must be positive")
        start = 1
        if len(lines) - 1 != declared_n:
            raise FormatError(
                f"{path}: header declares {declared_n} rows but file has {len(lines) - 1}"
            )

    vocab: list[str] = []
    rows: list[list[float]] = []
    seen: set[str] = set()
    for offset, line in enumerate(lines[start:]):
        lineno = start + offset + 1
        word, values = _parse_data_line(line, lineno, dim, path)
        if dim is None:
            dim = len(values)
        if word in seen:
            raise DuplicateWordError(f"{path}:{lineno}: duplicate word {word!r}")
        seen.add(word)
        vocab.append(word)
        rows.append(values)

    return EmbeddingMatrix(tuple(vocab), np.array(rows, dtype=np.float64))


def save_embeddings(emb: EmbeddingMatrix, path: str | Path, format: str) -> None:
    """Write an embedding matrix as text; see module docstring for the formats.

    I/O failures propagate as OSError with the path in the message.
    """
    fmt = _resolve_format(format)
    path = Path(path)
    with open(path, "w", encoding="utf-8") as fh:
        if fmt == "word2vec_text":
            fh.write(f"{emb.n} {emb.dim}\n")
        for word, row in zip(emb.vocab, emb.matrix):
            fh.write(word + " " + " ".join(_FLOAT_FMT % v for v in row) + "\n")


def standardize(emb: EmbeddingMatrix) -> EmbeddingMatrix:
    """Rescale so the entries have unit root-mean-square magnitude.

    Every entry is divided by one scalar, the entrywise second moment about
    zero (the population standard deviation of the zero-mean entry model; no
    mean is subtracted). The pure rescaling is idempotent, invariant to prior
    nonzero scaling, and, because the scalar depends only on the Frobenius
    norm, exactly invariant under rotation of the matrix. The latter is what
    keeps the distance metric's unitary invariance at machine precision.

    Raises:
        DegenerateInputError: fewer than two entries, or a constant matrix
            (zero standard deviation).
    """
    if emb.matrix.size < 2:
        raise DegenerateInputError("standardize needs at least 2 entries")
    if float(emb.matrix.std()) == 0.0:
        raise DegenerateInputError("matrix is constant: zero standard deviation")
    scale = float(np.sqrt(np.mean(emb.matrix * emb.matrix)))
    if scale == 0.0 or not np.isfinite(scale):
        raise DegenerateInputError("matrix has zero scale")
    return EmbeddingMatrix(emb.vocab, emb.matrix / scale, standardized=True)


def _restricted_rows(emb: EmbeddingMatrix, words: Sequence[str]) -> np.ndarray:
    idx = emb.index
    sub = emb.matrix[[idx[w] for w in words]]
    norms = np.linalg.norm(sub, axis=1)
    if np.any(norms == 0.0):
        bad = words[int(np.argmin(norms))]
        raise AlignmentError(f"all-zero vector for word {bad!r} in aligned vocabulary")
    return sub


def align_vocabularies(a: EmbeddingMatrix, b: EmbeddingMatrix) -> AlignedPair:
    """Restrict two embeddings to their shared vocabulary.

    The shared vocabulary is the set intersection ordered lexicographically by
    code point, so the result does not depend on either input's row order.
    Rows that are exactly zero (typical out-of-vocabulary padding) are
    rejected rather than silently kept.

    Raises:
        AlignmentError: empty intersection, or an all-zero aligned row.
    """
    shared = tuple(sorted(set(a.vocab) & set(b.vocab)))
    if not shared:
        raise AlignmentError("vocabularies have empty intersection")
    left = EmbeddingMatrix(shared, _restricted_rows(a, shared))
    right = EmbeddingMatrix(shared, _restricted_rows(b, shared))
    return AlignedPair(
        left,
        right,
        shared,
        coverage_left=len(shared) / a.n,
        coverage_right=len(shared) / b.n,
    )


def random_gaussian_embedding(n: int, d: int, seed: int) -> EmbeddingMatrix:
    """Embedding with i.i.d. standard-normal entries and synthetic vocabulary.

    The generator is explicitly seeded (PCG64), so the same seed yields a
    bit-identical matrix. Vocabulary tokens are ``"w0" ... "w{n-1}"``.
    """
    if n < 1 or d < 1:
        raise PreconditionError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    rng = np.random.default_rng(seed)
    matrix = rng.standard_normal((n, d))
    vocab = tuple(f"w{i}" for i in range(n))
    return EmbeddingMatrix(vocab, matrix)
