"""The relative pairwise inner product distance (RPD) between embedding spaces.

For standardized matrices Ẽ₁, Ẽ₂ sharing a vocabulary,

    RPD = ½ ||Ẽ₁Ẽ₁ᵀ - Ẽ₂Ẽ₂ᵀ||² / (||Ẽ₁Ẽ₁ᵀ|| ||Ẽ₂Ẽ₂ᵀ||)

which expands into a ratio term ½(a/b + b/a) minus a cosine-like term
<Ĝ₁,Ĝ₂>/(a·b), with a, b the Gram norms. The value is invariant to rotation,
row permutation, and (with standardization) scaling of either input, and for
large vocabularies independent random spaces concentrate near 1 - d/n.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._threads import worker_count
from .errors import AlignmentError, DegenerateInputError, PreconditionError, RpdError
from .gram import cross_gram_inner, gram_frobenius_norm, per_word_gram_stats
from .store import AlignedPair, EmbeddingMatrix, align_vocabularies, standardize


@dataclass(frozen=True)
class PerWordDivergence:
    """One word's contribution to the cosine term.

    ``cos_theta_i`` is the cosine of the angle between the word's rows of the
    two Gram matrices (None when a row norm vanishes and the angle is
    undefined); ``w_i`` is its exact weight, so that the weighted sum of
    cosines reproduces the cosine term.
    """

    word: str
    cos_theta_i: float | None
    w_i: float

    def to_dict(self) -> dict:
        return {"word": self.word, "cos_theta_i": self.cos_theta_i, "w_i": self.w_i}


@dataclass(frozen=True)
class RpdReport:
    """RPD value with its two-term expansion and optional per-word breakdown."""

    rpd: float
    ratio_term: float
    cosine_term: float
    n: int
    d_left: int
    d_right: int
    per_word: tuple[PerWordDivergence, ...] | None = None

    def to_dict(self) -> dict:
        out = {
            "rpd": self.rpd,
            "ratio_term": self.ratio_term,
            "cosine_term": self.cosine_term,
            "n": self.n,
            "d_left": self.d_left,
            "d_right": self.d_right,
        }
        if self.per_word is not None:
            out["per_word"] = [p.to_dict() for p in self.per_word]
        return out

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


@dataclass(frozen=True)
class BoundCheck:
    rpd: float
    bound: float


def _standardized_sides(
    pair: AlignedPair, standardize_inputs: bool
) -> tuple[EmbeddingMatrix, EmbeddingMatrix]:
    if standardize_inputs:
        return standardize(pair.left), standardize(pair.right)
    return pair.left, pair.right


def _gram_terms(left: EmbeddingMatrix, right: EmbeddingMatrix):
    a = gram_frobenius_norm(left)
    b = gram_frobenius_norm(right)
    if a == 0.0 or b == 0.0:
        raise DegenerateInputError("Gram matrix has zero Frobenius norm")
    inner = cross_gram_inner(left, right)
    ratio = 0.5 * (a / b + b / a)
    cosine = inner / (a * b)
    return a, b, ratio, cosine


def rpd(pair: AlignedPair, standardize_inputs: bool = True) -> RpdReport:
    """RPD of an aligned pair, via the d-space Gram identities.

    Args:
        pair: Aligned embeddings (dimensions may differ).
        standardize_inputs: Rescale both sides to unit entry standard
            deviation first (the metric's definition; disable only for
            inputs normalized elsewhere).

    Raises:
        DegenerateInputError: a side has zero Gram norm or zero variance.
    """
    left, right = _standardized_sides(pair, standardize_inputs)
    _, _, ratio, cosine = _gram_terms(left, right)
    # Cauchy-Schwarz guarantees ratio >= cosine; clamp roundoff.
    value = max(ratio - cosine, 0.0)
    return RpdReport(
        rpd=value,
        ratio_term=ratio,
        cosine_term=cosine,
        n=pair.n,
        d_left=pair.left.dim,
        d_right=pair.right.dim,
    )


def decompose_per_word(pair: AlignedPair, standardize_inputs: bool = True) -> RpdReport:
    """RPD report with the per-word decomposition of the cosine term.

    Each word i contributes weight ``w_i = ||ĝ⁽¹⁾ᵢ|| ||ĝ⁽²⁾ᵢ|| / (a·b)`` and
    cosine ``cos θᵢ`` between its two Gram rows; the identity
    ``Σ w_i cos θᵢ = cosine_term`` holds exactly. Words whose Gram row norm
    vanishes get ``cos_theta_i=None`` and weight 0. Entries are sorted by
    ascending cosine, most divergent words first.
    """
    left, right = _standardized_sides(pair, standardize_inputs)
    a, b, ratio, cosine = _gram_terms(left, right)
    stats = per_word_gram_stats(left, right)

    norm_prod = stats.norm_left * stats.norm_right
    weights = norm_prod / (a * b)
    entries = []
    for word, dot, prod, weight in zip(
        pair.shared_vocab, stats.dot, norm_prod, weights
    ):
        if prod == 0.0:
            entries.append(PerWordDivergence(word, None, 0.0))
        else:
            cos_i = float(np.clip(dot / prod, -1.0, 1.0))
            entries.append(PerWordDivergence(word, cos_i, float(weight)))
    entries.sort(key=lambda e: (e.cos_theta_i if e.cos_theta_i is not None else -np.inf, e.word))

    value = max(ratio - cosine, 0.0)
    return RpdReport(
        rpd=value,
        ratio_term=ratio,
        cosine_term=cosine,
        n=pair.n,
        d_left=pair.left.dim,
        d_right=pair.right.dim,
        per_word=tuple(entries),
    )


def rpd_upper_bound_check(pair: AlignedPair, standardize_inputs: bool = True) -> BoundCheck:
    """RPD together with its Cauchy-Schwarz upper bound ½(a/b + b/a)."""
    report = rpd(pair, standardize_inputs)
    bound = report.ratio_term
    if report.rpd > bound + 1e-12:
        raise RpdError("internal error: RPD exceeds its Cauchy-Schwarz bound")
    return BoundCheck(rpd=report.rpd, bound=bound)


@dataclass(frozen=True, eq=False)
class PairwiseRpd:
    """Symmetric RPD matrix over named embeddings, zero on the diagonal."""

    names: tuple[str, ...]
    values: np.ndarray

    def to_tsv(self) -> str:
        lines = ["name\t" + "\t".join(self.names)]
        for name, row in zip(self.names, self.values):
            lines.append(name + "\t" + "\t".join("%.12g" % v for v in row))
        return "\n".join(lines) + "\n"


def _restrict_to(emb: EmbeddingMatrix, shared: tuple[str, ...]) -> EmbeddingMatrix:
    idx = emb.index
    return EmbeddingMatrix(shared, emb.matrix[[idx[w] for w in shared]])


def rpd_pairwise_matrix(
    embs: Sequence[tuple[str, EmbeddingMatrix]],
    standardize_inputs: bool = True,
    common_vocab: bool = False,
) -> PairwiseRpd:
    """All pairwise RPD values between named embeddings.

    By default each pair is compared on its own vocabulary intersection; with
    ``common_vocab=True`` every embedding is first restricted to the global
    intersection so all cells share one vocabulary.

    Raises:
        AlignmentError: an empty intersection, with the offending pair named.
    """
    if len(embs) < 2:
        raise PreconditionError("need at least 2 embeddings")
    names = tuple(name for name, _ in embs)
    if len(set(names)) != len(names):
        raise PreconditionError("embedding names must be unique")
    matrices = [emb for _, emb in embs]

    if common_vocab:
        shared_set = set(matrices[0].vocab)
        for m in matrices[1:]:
            shared_set &= set(m.vocab)
        shared = tuple(sorted(shared_set))
        if not shared:
            raise AlignmentError("global vocabulary intersection is empty")
        matrices = [_restrict_to(m, shared) for m in matrices]

    k = len(matrices)
    values = np.zeros((k, k), dtype=np.float64)
    cells = [(i, j) for i in range(k) for j in range(i + 1, k)]

    def compute(cell: tuple[int, int]) -> float:
        i, j = cell
        try:
            pair = align_vocabularies(matrices[i], matrices[j])
        except AlignmentError as exc:
            raise AlignmentError(f"{names[i]} vs {names[j]}: {exc}") from None
        return rpd(pair, standardize_inputs).rpd

    workers = worker_count()
    if workers > 1 and len(cells) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(compute, cells))
    else:
        results = [compute(c) for c in cells]

    for (i, j), v in zip(cells, results):
        values[i, j] = v
        values[j, i] = v
    return PairwiseRpd(names=names, values=values)
