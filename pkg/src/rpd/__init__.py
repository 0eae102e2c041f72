"""Distances, dependence tests, and spectral trainers for word embedding spaces."""

from .errors import (
    AlignmentError,
    CorpusError,
    DegenerateInputError,
    DimensionError,
    DuplicateWordError,
    FormatError,
    ParseError,
    PreconditionError,
    RpdError,
)
from .evaluation import (
    AnalogyDataset,
    AnalogyQuestion,
    EvalResult,
    SimilarityDataset,
    StudyEntry,
    StudyResult,
    eval_analogy_3cosadd,
    eval_similarity,
    evaluate,
    load_analogy_dataset,
    load_similarity_dataset,
    perf_vs_rpd_study,
    spearman,
)
from .gram import (
    GramOracleResult,
    PerWordGramStats,
    cross_gram_inner,
    gram_frobenius_norm,
    naive_gram_oracle,
    per_word_gram_stats,
)
from .layout import LayoutMap, layout_from_distances
from .metric import (
    BoundCheck,
    PairwiseRpd,
    PerWordDivergence,
    RpdReport,
    decompose_per_word,
    rpd,
    rpd_pairwise_matrix,
    rpd_upper_bound_check,
)
from .nullmodel import (
    NormalityDiagnostics,
    NullDistribution,
    ZTestResult,
    analytic_null_mean,
    monte_carlo_null,
    normality_diagnostics,
    z_test,
)
from .spectral import (
    CooccurrenceCounts,
    SignalMatrix,
    SvdFactors,
    count_cooccurrences,
    load_counts,
    log_count_matrix,
    pmi_matrix,
    read_corpus,
    save_counts,
    svd_embedding,
    tokenize_corpus_text,
    train_spectral_embedding,
    truncated_svd,
)
from .store import (
    AlignedPair,
    EmbeddingMatrix,
    align_vocabularies,
    load_embeddings,
    random_gaussian_embedding,
    save_embeddings,
    standardize,
)

__version__ = "0.1.0"

__all__ = [
    "AlignedPair",
    "AlignmentError",
    "AnalogyDataset",
    "AnalogyQuestion",
    "BoundCheck",
    "CooccurrenceCounts",
    "CorpusError",
    "DegenerateInputError",
    "DimensionError",
    "DuplicateWordError",
    "EmbeddingMatrix",
    "EvalResult",
    "FormatError",
    "GramOracleResult",
    "LayoutMap",
    "NormalityDiagnostics",
    "NullDistribution",
    "PairwiseRpd",
    "ParseError",
    "PerWordDivergence",
    "PerWordGramStats",
    "PreconditionError",
    "RpdError",
    "RpdReport",
    "SignalMatrix",
    "SimilarityDataset",
    "StudyEntry",
    "StudyResult",
    "SvdFactors",
    "ZTestResult",
    "align_vocabularies",
    "analytic_null_mean",
    "count_cooccurrences",
    "cross_gram_inner",
    "decompose_per_word",
    "eval_analogy_3cosadd",
    "eval_similarity",
    "evaluate",
    "gram_frobenius_norm",
    "layout_from_distances",
    "load_analogy_dataset",
    "load_counts",
    "load_embeddings",
    "load_similarity_dataset",
    "log_count_matrix",
    "monte_carlo_null",
    "naive_gram_oracle",
    "normality_diagnostics",
    "per_word_gram_stats",
    "perf_vs_rpd_study",
    "pmi_matrix",
    "random_gaussian_embedding",
    "read_corpus",
    "rpd",
    "rpd_pairwise_matrix",
    "rpd_upper_bound_check",
    "save_counts",
    "save_embeddings",
    "spearman",
    "standardize",
    "svd_embedding",
    "tokenize_corpus_text",
    "train_spectral_embedding",
    "truncated_svd",
    "z_test",
]
