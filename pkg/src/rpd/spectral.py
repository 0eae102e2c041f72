"""Spectral embedding trainers: co-occurrence counting, PMI / log-count signals,
randomized truncated SVD, and the U·sqrt(S) embedding extraction.

The pipeline is:

    documents -> count_cooccurrences -> pmi_matrix | log_count_matrix
              -> truncated_svd -> svd_embedding

Counts are symmetric sparse matrices over a frequency-filtered vocabulary;
PMI entries are clamped at zero (positive PMI) and the log-count signal uses
log(1 + count) so zero cells stay zero. Everything is deterministic for a
fixed corpus, parameters, and seed.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy import sparse

from .errors import CorpusError, DimensionError, ParseError, PreconditionError
from .store import EmbeddingMatrix

WEIGHTINGS = ("flat", "harmonic")


@dataclass(frozen=True, eq=False)
class CooccurrenceCounts:
    """Symmetric word-context counts from a windowed corpus scan.

    ``vocab`` is ordered by descending corpus frequency (ties lexicographic)
    and excludes words below ``min_count``. ``counts[i, j]`` is the weighted
    number of times word j appeared within the window around word i, summed
    over both directions, so the matrix is symmetric by construction.
    """

    vocab: tuple[str, ...]
    counts: sparse.csr_array
    total: float
    window: int
    min_count: int


@dataclass(frozen=True, eq=False)
class SignalMatrix:
    """A sparse signal matrix derived from co-occurrence counts."""

    kind: str  # "pmi" or "log_count"
    matrix: sparse.csr_array
    source: CooccurrenceCounts


@dataclass(frozen=True, eq=False)
class SvdFactors:
    """Truncated SVD factors; U has orthonormal columns, S is descending."""

    U: np.ndarray
    S: np.ndarray
    Vt: np.ndarray
    vocab: tuple[str, ...] | None = None


def tokenize_corpus_text(text: str, lowercase: bool = True) -> list[list[str]]:
    """Whitespace-tokenize plain text into per-line documents.

    Each non-empty line becomes one document, so context windows never cross
    line boundaries.
    """
    if lowercase:
        text = text.lower()
    return [line.split() for line in text.splitlines() if line.strip()]


def read_corpus(path: str | Path, lowercase: bool = True) -> list[list[str]]:
    """Read a UTF-8 plain-text corpus as per-line documents."""
    with open(Path(path), encoding="utf-8") as fh:
        return tokenize_corpus_text(fh.read(), lowercase=lowercase)


def count_cooccurrences(
    documents: Iterable[Sequence[str]],
    window: int,
    min_count: int,
    weighting: str = "flat",
) -> CooccurrenceCounts:
    """Count co-occurrences within a symmetric window over each document.

    Every token position contributes one count (or 1/distance with harmonic
    weighting) for each neighbor within ``window`` positions on either side.
    Words with corpus frequency below ``min_count`` are removed from the
    token stream before windowing.

    Args:
        documents: Iterable of token sequences; windows do not cross
            document boundaries.
        window: Maximum neighbor distance, >= 1.
        min_count: Minimum corpus frequency for a word to enter the
            vocabulary.
        weighting: "flat" (every neighbor counts 1) or "harmonic"
            (neighbor at distance k counts 1/k).

    Raises:
        CorpusError: empty vocabulary after filtering, or no pairs at all.
    """
    if window < 1:
        raise PreconditionError(f"window must be >= 1, got {window}")
    if min_count < 1:
        raise PreconditionError(f"min_count must be >= 1, got {min_count}")
    if weighting not in WEIGHTINGS:
        raise PreconditionError(f"weighting must be one of {WEIGHTINGS}, got {weighting!r}")

    docs = [list(doc) for doc in documents]
    freq: dict[str, int] = {}
    for doc in docs:
        for token in doc:
            freq[token] = freq.get(token, 0) + 1
    vocab = tuple(sorted((w for w, c in freq.items() if c >= min_count),
                         key=lambda w: (-freq[w], w)))
    if not vocab:
        raise CorpusError("no word reaches min_count; effective vocabulary is empty")
    index = {w: i for i, w in enumerate(vocab)}
    n = len(vocab)

    id_streams = []
    for doc in docs:
        ids = np.array([index[t] for t in doc if t in index], dtype=np.int64)
        if ids.size >= 2:
            id_streams.append(ids)

    counts = sparse.csr_array((n, n), dtype=np.float64)
    for k in range(1, window + 1):
        rows_parts = []
        cols_parts = []
        for ids in id_streams:
            if ids.size > k:
                rows_parts.append(ids[:-k])
                cols_parts.append(ids[k:])
        if not rows_parts:
            continue
        rows = np.concatenate(rows_parts)
        cols = np.concatenate(cols_parts)
        weight = 1.0 if weighting == "flat" else 1.0 / k
        data = np.full(rows.shape, weight, dtype=np.float64)
        forward = sparse.coo_array((data, (rows, cols)), shape=(n, n)).tocsr()
        counts = counts + forward + forward.T

    total = float(counts.sum())
    if total <= 0.0:
        raise CorpusError("corpus produced no co-occurrence pairs")
    return CooccurrenceCounts(
        vocab=vocab, counts=counts, total=total, window=window, min_count=min_count
    )


def pmi_matrix(counts: CooccurrenceCounts) -> SignalMatrix:
    """Positive pointwise mutual information of the counts.

    ``PMI(i, j) = log(count(i, j) * total / (rowsum(i) * rowsum(j)))`` for
    nonzero cells; zero-count cells and negative values are stored as zero,
    which keeps the matrix sparse and nonnegative.
    """
    if counts.total <= 0:
        raise PreconditionError("counts total must be positive")
    coo = counts.counts.tocoo()
    rowsums = np.asarray(counts.counts.sum(axis=1)).ravel()
    values = np.log(coo.data * counts.total / (rowsums[coo.row] * rowsums[coo.col]))
    keep = values > 0.0
    matrix = sparse.coo_array(
        (values[keep], (coo.row[keep], coo.col[keep])), shape=coo.shape
    ).tocsr()
    return SignalMatrix(kind="pmi", matrix=matrix, source=counts)


def log_count_matrix(counts: CooccurrenceCounts) -> SignalMatrix:
    """log(1 + count) signal; zero counts stay zero, preserving sparsity."""
    if counts.total <= 0:
        raise PreconditionError("counts total must be positive")
    coo = counts.counts.tocoo()
    matrix = sparse.coo_array(
        (np.log1p(coo.data), (coo.row, coo.col)), shape=coo.shape
    ).tocsr()
    return SignalMatrix(kind="log_count", matrix=matrix, source=counts)


def truncated_svd(
    signal: SignalMatrix,
    d: int,
    seed: int,
    oversample: int = 10,
    power_iters: int = 20,
) -> SvdFactors:
    """Randomized range-finder SVD of a sparse signal matrix.

    A Gaussian test matrix with ``oversample`` extra columns sketches the
    range, ``power_iters`` rounds of subspace iteration (with QR
    re-orthonormalization) sharpen it, and an exact SVD of the projected
    small matrix yields the factors. Accuracy improves with power iterations
    at a rate set by the spectral decay beyond index d + oversample; the
    default iteration count holds the top singular values to ~1e-6 relative
    error against a dense solve on decaying PMI / log-count spectra, while
    near-flat spectra need more iterations.

    Deterministic for a fixed seed.
    """
    matrix = signal.matrix
    n = matrix.shape[0]
    if not 1 <= d <= n:
        raise DimensionError(f"need 1 <= d <= n, got d={d}, n={n}")
    if oversample < 0 or power_iters < 0:
        raise PreconditionError("oversample and power_iters must be >= 0")
    if not np.all(np.isfinite(matrix.data)):
        raise PreconditionError("signal matrix has non-finite entries")

    k = min(n, d + oversample)
    rng = np.random.default_rng(seed)
    test = rng.standard_normal((matrix.shape[1], k))
    q, _ = np.linalg.qr(matrix @ test)
    for _ in range(power_iters):
        q, _ = np.linalg.qr(matrix.T @ q)
        q, _ = np.linalg.qr(matrix @ q)
    small = (matrix.T @ q).T  # k x n projection of the signal
    u_small, s, vt = np.linalg.svd(small, full_matrices=False)
    u = q @ u_small
    return SvdFactors(
        U=np.ascontiguousarray(u[:, :d]),
        S=s[:d].copy(),
        Vt=np.ascontiguousarray(vt[:d]),
        vocab=signal.source.vocab,
    )


def svd_embedding(
    U: np.ndarray,
    S: np.ndarray,
    vocab: Sequence[str] | None = None,
    d: int | None = None,
) -> EmbeddingMatrix:
    """Embedding rows U[:, :d] scaled columnwise by sqrt(S[:d]).

    Tiny negative singular values (numerical artifacts) are clamped to zero
    with a warning. Without an explicit vocabulary, synthetic tokens
    ``"w0"...`` are used.
    """
    U = np.asarray(U, dtype=np.float64)
    S = np.asarray(S, dtype=np.float64)
    if U.ndim != 2 or S.ndim != 1:
        raise DimensionError("U must be 2-D and S 1-D")
    if d is None:
        d = int(S.size)
    if d < 1 or d > U.shape[1] or d > S.size:
        raise DimensionError(f"invalid d={d} for U with {U.shape[1]} columns")
    s_top = S[:d]
    if np.any(s_top < 0):
        warnings.warn("negative singular values clamped to zero", stacklevel=2)
        s_top = np.maximum(s_top, 0.0)
    matrix = U[:, :d] * np.sqrt(s_top)
    if vocab is None:
        vocab = tuple(f"w{i}" for i in range(U.shape[0]))
    return EmbeddingMatrix(tuple(vocab), matrix)


def train_spectral_embedding(
    documents: Iterable[Sequence[str]],
    signal: str = "pmi",
    dim: int = 300,
    window: int = 10,
    min_count: int = 10,
    seed: int = 0,
    oversample: int = 10,
    power_iters: int = 20,
    weighting: str = "flat",
) -> EmbeddingMatrix:
    """Full pipeline from token documents to a spectral embedding."""
    counts = count_cooccurrences(documents, window=window, min_count=min_count,
                                 weighting=weighting)
    if signal == "pmi":
        sig = pmi_matrix(counts)
    elif signal in ("log_count", "logcount"):
        sig = log_count_matrix(counts)
    else:
        raise PreconditionError(f"signal must be 'pmi' or 'logcount', got {signal!r}")
    if dim > len(counts.vocab):
        raise DimensionError(
            f"dim={dim} exceeds vocabulary size {len(counts.vocab)}"
        )
    factors = truncated_svd(sig, dim, seed, oversample=oversample, power_iters=power_iters)
    return svd_embedding(factors.U, factors.S, vocab=factors.vocab)


def save_counts(counts: CooccurrenceCounts, path: str | Path) -> None:
    """Persist counts as an ``i j count`` triple file plus a vocab sidecar.

    Only the upper triangle (i <= j) is written; symmetry is restored on
    load. The sidecar at ``<path>.vocab`` lists one word per line in index
    order.
    """
    path = Path(path)
    coo = counts.counts.tocoo()
    keep = coo.row <= coo.col
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# window {counts.window}\n")
        fh.write(f"# min_count {counts.min_count}\n")
        for i, j, v in zip(coo.row[keep], coo.col[keep], coo.data[keep]):
            fh.write("%d %d %.17g\n" % (i, j, v))
    with open(path.with_name(path.name + ".vocab"), "w", encoding="utf-8") as fh:
        for word in counts.vocab:
            fh.write(word + "\n")


def load_counts(path: str | Path) -> CooccurrenceCounts:
    """Load counts written by :func:`save_counts`."""
    path = Path(path)
    vocab_path = path.with_name(path.name + ".vocab")
    with open(vocab_path, encoding="utf-8") as fh:
        vocab = tuple(line.rstrip("\n") for line in fh if line.strip())
    if not vocab:
        raise ParseError(f"{vocab_path}: empty vocabulary sidecar")
    n = len(vocab)

    window = 0
    min_count = 0
    rows: list[int] = []
    cols: list[int] = []
    data: list[float] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                fields = line[1:].split()
                if len(fields) == 2 and fields[0] == "window":
                    window = int(fields[1])
                elif len(fields) == 2 and fields[0] == "min_count":
                    min_count = int(fields[1])
                continue
            fields = line.split()
            if len(fields) != 3:
                raise ParseError(f"{path}:{lineno}: expected 'i j count'")
            try:
                i, j, v = int(fields[0]), int(fields[1]), float(fields[2])
            except ValueError as exc:
                raise ParseError(f"{path}:{lineno}: {exc}") from None
            if not (0 <= i < n and 0 <= j < n) or i > j:
                raise ParseError(f"{path}:{lineno}: invalid indices {i}, {j}")
            rows.append(i)
            cols.append(j)
            data.append(v)

    upper = sparse.coo_array(
        (np.array(data), (np.array(rows, dtype=np.int64), np.array(cols, dtype=np.int64))),
        shape=(n, n),
    ).tocsr()
    strict = sparse.triu(upper, k=1)
    counts = upper + strict.T
    total = float(counts.sum())
    if total <= 0:
        raise ParseError(f"{path}: no counts")
    return CooccurrenceCounts(
        vocab=vocab,
        counts=counts.tocsr(),
        total=total,
        window=window,
        min_count=min_count,
    )
