"""Frobenius statistics of Gram matrices E·Eᵀ without forming them.

All production paths work in d-by-d space through two trace identities:

    ||E Eᵀ||_F²          = ||Eᵀ E||_F²
    <E₁E₁ᵀ, E₂E₂ᵀ>_F     = ||E₁ᵀ E₂||_F²

so the cost is O(n·d²) time and O(d²) extra space. The only code that
materializes an n-by-n Gram matrix is :func:`naive_gram_oracle`, a guarded
reference implementation kept for testing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, PreconditionError
from .store import EmbeddingMatrix

NAIVE_GUARD_LIMIT = 2000


def _check_same_rows(a: EmbeddingMatrix, b: EmbeddingMatrix) -> None:
    if a.n != b.n:
        raise DimensionError(f"row counts differ: {a.n} vs {b.n}")


def gram_frobenius_norm(emb: EmbeddingMatrix) -> float:
    """||E Eᵀ||_F, computed from the d-by-d matrix Eᵀ E."""
    g = emb.matrix.T @ emb.matrix
    return float(np.sqrt(np.sum(g * g)))


def cross_gram_inner(a: EmbeddingMatrix, b: EmbeddingMatrix) -> float:
    """trace((E₁E₁ᵀ)ᵀ E₂E₂ᵀ) = ||E₁ᵀE₂||_F², for pre-aligned row counts.

    Nonnegative by construction (it is a squared Frobenius norm); the two
    sides may have different dimensions.
    """
    _check_same_rows(a, b)
    c = a.matrix.T @ b.matrix
    return float(np.sum(c * c))


@dataclass(frozen=True)
class GramOracleResult:
    norm_a: float
    norm_b: float
    inner: float


def naive_gram_oracle(a: EmbeddingMatrix, b: EmbeddingMatrix) -> GramOracleResult:
    """Direct computation from materialized n-by-n Gram matrices.

    Test oracle only: refuses n > NAIVE_GUARD_LIMIT to prevent accidental
    multi-gigabyte allocations.
    """
    _check_same_rows(a, b)
    if a.n > NAIVE_GUARD_LIMIT:
        raise PreconditionError(
            f"naive oracle refuses n={a.n} > {NAIVE_GUARD_LIMIT}"
        )
    ga = a.matrix @ a.matrix.T
    gb = b.matrix @ b.matrix.T
    return GramOracleResult(
        norm_a=float(np.linalg.norm(ga)),
        norm_b=float(np.linalg.norm(gb)),
        inner=float(np.sum(ga * gb)),
    )


@dataclass(frozen=True, eq=False)
class PerWordGramStats:
    """Per-word statistics of the Gram rows.

    For word i, ``dot[i]`` is the inner product of row i of E₁E₁ᵀ with row i
    of E₂E₂ᵀ, and ``norm_left[i]`` / ``norm_right[i]`` are those rows' norms.
    """

    dot: np.ndarray
    norm_left: np.ndarray
    norm_right: np.ndarray


def per_word_gram_stats(a: EmbeddingMatrix, b: EmbeddingMatrix) -> PerWordGramStats:
    """Row-wise Gram statistics in O(n·d²) without forming any n-length row.

    Row i of E·Eᵀ is vᵢ·Eᵀ, so with the d-by-d products G₁₁ = E₁ᵀE₁,
    G₂₂ = E₂ᵀE₂ and G₁₂ = E₁ᵀE₂:

        dot[i]        = v⁽¹⁾ᵢ G₁₂ v⁽²⁾ᵢᵀ
        norm_left[i]² = v⁽¹⁾ᵢ G₁₁ v⁽¹⁾ᵢᵀ
    """
    _check_same_rows(a, b)
    am, bm = a.matrix, b.matrix
    g11 = am.T @ am
    g22 = bm.T @ bm
    g12 = am.T @ bm
    dot = np.sum((am @ g12) * bm, axis=1)
    # Quadratic forms are >= 0 exactly; clamp roundoff before the sqrt.
    sq_left = np.maximum(np.sum((am @ g11) * am, axis=1), 0.0)
    sq_right = np.maximum(np.sum((bm @ g22) * bm, axis=1), 0.0)
    return PerWordGramStats(
        dot=dot,
        norm_left=np.sqrt(sq_left),
        norm_right=np.sqrt(sq_right),
    )
