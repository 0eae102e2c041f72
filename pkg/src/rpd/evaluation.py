"""Word-similarity and word-analogy scoring, plus the distance-vs-performance study.

Similarity files are tab-separated ``word1 word2 score`` lines (an optional
header is detected by a non-numeric score field). Analogy files follow the
common four-word format, with section headers starting with ``:``.

Out-of-vocabulary items are skipped and reported through coverage fractions
rather than raised, since coverage differences confound score comparisons.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy.stats import rankdata

from .errors import DegenerateInputError, ParseError, PreconditionError, RpdError
from .metric import rpd as _rpd
from .store import EmbeddingMatrix, align_vocabularies


@dataclass(frozen=True)
class SimilarityDataset:
    """Human-scored word pairs."""

    pairs: tuple[tuple[str, str, float], ...]

    def __post_init__(self) -> None:
        pairs = tuple((str(a), str(b), float(s)) for a, b, s in self.pairs)
        if not pairs:
            raise PreconditionError("similarity dataset has no pairs")
        if not all(np.isfinite(s) for _, _, s in pairs):
            raise PreconditionError("similarity scores must be finite")
        object.__setattr__(self, "pairs", pairs)


@dataclass(frozen=True)
class AnalogyQuestion:
    a: str
    b: str
    c: str
    expected: str
    section: str | None = None

    def __post_init__(self) -> None:
        for w in (self.a, self.b, self.c, self.expected):
            if not w:
                raise PreconditionError("analogy words must be non-empty")
        if self.expected in (self.a, self.b, self.c):
            raise PreconditionError(
                f"expected word {self.expected!r} duplicates a query word"
            )


@dataclass(frozen=True)
class AnalogyDataset:
    questions: tuple[AnalogyQuestion, ...]

    def __post_init__(self) -> None:
        if not self.questions:
            raise PreconditionError("analogy dataset has no questions")


@dataclass(frozen=True)
class EvalResult:
    """Similarity and analogy scores with their vocabulary coverage.

    A metric is None when nothing was evaluated for it (missing dataset or
    zero coverage).
    """

    similarity_spearman: float | None = None
    similarity_coverage: float | None = None
    analogy_accuracy: float | None = None
    analogy_coverage: float | None = None

    def to_dict(self) -> dict:
        return {
            "similarity_spearman": self.similarity_spearman,
            "similarity_coverage": self.similarity_coverage,
            "analogy_accuracy": self.analogy_accuracy,
            "analogy_coverage": self.analogy_coverage,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def load_similarity_dataset(path: str | Path) -> SimilarityDataset:
    """Read tab-separated ``word1 word2 score`` lines."""
    path = Path(path)
    pairs: list[tuple[str, str, float]] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            fields = line.split("\t")
            if len(fields) != 3:
                raise ParseError(f"{path}:{lineno}: expected 3 tab-separated fields")
            try:
                score = float(fields[2])
            except ValueError:
                if lineno == 1:
                    continue  # header line
                raise ParseError(f"{path}:{lineno}: non-numeric score {fields[2]!r}") from None
            pairs.append((fields[0], fields[1], score))
    if not pairs:
        raise ParseError(f"{path}: no data lines")
    return SimilarityDataset(tuple(pairs))


def load_analogy_dataset(path: str | Path) -> AnalogyDataset:
    """Read four-word analogy lines with optional ``: section`` headers."""
    path = Path(path)
    questions: list[AnalogyQuestion] = []
    section: str | None = None
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith(":"):
                section = line[1:].strip() or None
                continue
            fields = line.split()
            if len(fields) != 4:
                raise ParseError(f"{path}:{lineno}: expected 4 words")
            questions.append(AnalogyQuestion(*fields, section=section))
    if not questions:
        raise ParseError(f"{path}: no questions")
    return AnalogyDataset(tuple(questions))


def spearman(x: Sequence[float], y: Sequence[float]) -> float:
    """Spearman rank correlation with average ranks for ties.

    Raises:
        PreconditionError: length mismatch or fewer than 2 points.
        DegenerateInputError: a constant input (correlation undefined).
    """
    xa = np.asarray(x, dtype=np.float64).ravel()
    ya = np.asarray(y, dtype=np.float64).ravel()
    if xa.size != ya.size:
        raise PreconditionError(f"length mismatch: {xa.size} vs {ya.size}")
    if xa.size < 2:
        raise PreconditionError("need at least 2 points")
    if np.ptp(xa) == 0.0 or np.ptp(ya) == 0.0:
        raise DegenerateInputError("constant input: correlation undefined")
    rx = rankdata(xa)
    ry = rankdata(ya)
    return float(np.corrcoef(rx, ry)[0, 1])


def _cosine(u: np.ndarray, v: np.ndarray, word_u: str, word_v: str) -> float:
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        bad = word_u if nu == 0.0 else word_v
        raise DegenerateInputError(f"zero vector for word {bad!r}")
    return float(u @ v) / (nu * nv)


def eval_similarity(emb: EmbeddingMatrix, ds: SimilarityDataset) -> EvalResult:
    """Spearman correlation between pair cosines and the human scores.

    Pairs with an out-of-vocabulary word are skipped and counted against
    coverage; with zero covered pairs the metric is absent.
    """
    idx = emb.index
    cosines: list[float] = []
    scores: list[float] = []
    for w1, w2, human in ds.pairs:
        if w1 in idx and w2 in idx:
            cosines.append(_cosine(emb.matrix[idx[w1]], emb.matrix[idx[w2]], w1, w2))
            scores.append(human)
    coverage = len(cosines) / len(ds.pairs)
    if not cosines:
        return EvalResult(similarity_spearman=None, similarity_coverage=0.0)
    rho = spearman(cosines, scores)
    return EvalResult(similarity_spearman=rho, similarity_coverage=coverage)


def eval_analogy_3cosadd(emb: EmbeddingMatrix, ds: AnalogyDataset) -> EvalResult:
    """Analogy accuracy with the additive cosine objective.

    Rows are L2-normalized; for a question (a, b, c -> expected) the
    prediction is the vocabulary word maximizing cosine(v, v_b - v_a + v_c)
    with a, b, c excluded as candidates. Score ties are broken by the
    lexicographically smallest word, so accuracy does not depend on row
    order. A question counts as answerable only when all four words are in
    vocabulary.
    """
    idx = emb.index
    norms = np.linalg.norm(emb.matrix, axis=1, keepdims=True)
    safe = np.where(norms == 0.0, 1.0, norms)
    unit = emb.matrix / safe

    answerable = 0
    correct = 0
    words = emb.vocab
    for q in ds.questions:
        if not all(w in idx for w in (q.a, q.b, q.c, q.expected)):
            continue
        answerable += 1
        ia, ib, ic = idx[q.a], idx[q.b], idx[q.c]
        target = unit[ib] - unit[ia] + unit[ic]
        scores = unit @ target
        scores[[ia, ib, ic]] = -np.inf
        best = np.max(scores)
        tied = np.flatnonzero(scores == best)
        prediction = min(words[i] for i in tied)
        if prediction == q.expected:
            correct += 1

    coverage = answerable / len(ds.questions)
    if answerable == 0:
        return EvalResult(analogy_accuracy=None, analogy_coverage=0.0)
    return EvalResult(analogy_accuracy=correct / answerable, analogy_coverage=coverage)


def evaluate(
    emb: EmbeddingMatrix,
    sim_ds: SimilarityDataset | None = None,
    ana_ds: AnalogyDataset | None = None,
) -> EvalResult:
    """Run whichever evaluations have datasets and merge the results."""
    if sim_ds is None and ana_ds is None:
        raise PreconditionError("need at least one dataset")
    sim = eval_similarity(emb, sim_ds) if sim_ds is not None else EvalResult()
    ana = eval_analogy_3cosadd(emb, ana_ds) if ana_ds is not None else EvalResult()
    return EvalResult(
        similarity_spearman=sim.similarity_spearman,
        similarity_coverage=sim.similarity_coverage,
        analogy_accuracy=ana.analogy_accuracy,
        analogy_coverage=ana.analogy_coverage,
    )


@dataclass(frozen=True)
class StudyEntry:
    name: str
    rpd: float | None
    delta_perf: float | None
    error: str | None = None


@dataclass(frozen=True)
class StudyResult:
    """Distance-vs-performance study rows plus their rank correlation."""

    entries: tuple[StudyEntry, ...]
    rank_correlation: float | None

    def to_tsv(self) -> str:
        lines = ["name\trpd\tdelta_perf"]
        for e in self.entries:
            if e.error is not None:
                lines.append(f"{e.name}\tERROR\t{e.error}")
            else:
                lines.append("%s\t%.12g\t%.12g" % (e.name, e.rpd, e.delta_perf))
        corr = "NA" if self.rank_correlation is None else "%.12g" % self.rank_correlation
        lines.append(f"# rank_correlation\t{corr}")
        return "\n".join(lines) + "\n"


def perf_vs_rpd_study(
    baseline: EmbeddingMatrix,
    others: Sequence[tuple[str, EmbeddingMatrix]],
    sim_ds: SimilarityDataset | None = None,
    ana_ds: AnalogyDataset | None = None,
) -> StudyResult:
    """Distance from a baseline embedding versus absolute performance change.

    For each named embedding the study records its distance to the baseline
    (per-pair vocabulary alignment) and
    ``|Δ similarity_spearman| + |Δ analogy_accuracy|``, each side evaluated
    on its own coverage. Per-entry failures are recorded and the study
    continues. The Spearman rank correlation between the distance and delta
    columns summarizes how monotonically performance tracks distance.
    """
    if not others:
        raise PreconditionError("need at least one embedding to compare")
    base_eval = evaluate(baseline, sim_ds, ana_ds)

    entries: list[StudyEntry] = []
    for name, emb in others:
        try:
            pair = align_vocabularies(baseline, emb)
            distance = _rpd(pair).rpd
            ev = evaluate(emb, sim_ds, ana_ds)
            delta = 0.0
            have_term = False
            if base_eval.similarity_spearman is not None and ev.similarity_spearman is not None:
                delta += abs(ev.similarity_spearman - base_eval.similarity_spearman)
                have_term = True
            if base_eval.analogy_accuracy is not None and ev.analogy_accuracy is not None:
                delta += abs(ev.analogy_accuracy - base_eval.analogy_accuracy)
                have_term = True
            if not have_term:
                entries.append(StudyEntry(name, None, None, error="no comparable metrics"))
                continue
            entries.append(StudyEntry(name, distance, delta))
        except RpdError as exc:
            entries.append(StudyEntry(name, None, None, error=str(exc)))

    valid = [(e.rpd, e.delta_perf) for e in entries if e.error is None]
    correlation: float | None = None
    if len(valid) >= 2:
        try:
            correlation = spearman([v[0] for v in valid], [v[1] for v in valid])
        except DegenerateInputError:
            correlation = None
    return StudyResult(entries=tuple(entries), rank_correlation=correlation)
