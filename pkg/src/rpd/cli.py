"""Command-line interface.

Single-record results are printed as JSON; matrices and tables as TSV.
Exit codes: 0 success, 1 internal error, 2 usage or input error.
"""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from .errors import RpdError
from .evaluation import (
    evaluate,
    load_analogy_dataset,
    load_similarity_dataset,
    perf_vs_rpd_study,
)
from .layout import layout_from_distances
from .metric import decompose_per_word, rpd, rpd_pairwise_matrix
from .nullmodel import monte_carlo_null, z_test
from .spectral import (
    count_cooccurrences,
    log_count_matrix,
    pmi_matrix,
    read_corpus,
    save_counts,
    svd_embedding,
    truncated_svd,
)
from .store import align_vocabularies, load_embeddings, save_embeddings

_FORMAT_CHOICE = click.Choice(["word2vec", "glove"])


def _input_errors_exit_2(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (RpdError, OSError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)

    return wrapper


def _emit(text: str, output: str | None) -> None:
    if output is None:
        click.echo(text, nl=not text.endswith("\n"))
    else:
        Path(output).write_text(text if text.endswith("\n") else text + "\n",
                                encoding="utf-8")


def _parse_named(specs: tuple[str, ...]) -> list[tuple[str, str]]:
    named = []
    for spec in specs:
        name, sep, path = spec.partition("=")
        if not sep or not name or not path:
            raise click.UsageError(f"--emb expects NAME=PATH, got {spec!r}")
        named.append((name, path))
    return named


@click.group()
def main() -> None:
    """Distances, dependence tests, and spectral trainers for embedding spaces."""


@main.command("pair")
@click.option("--left", required=True, type=click.Path())
@click.option("--right", required=True, type=click.Path())
@click.option("--format", "fmt", type=_FORMAT_CHOICE, default="word2vec", show_default=True)
@click.option("--no-standardize", is_flag=True, help="Skip the entry-std normalization.")
@click.option("--decompose", is_flag=True, help="Include the per-word breakdown.")
@click.option("--top-k", type=int, default=None,
              help="Keep only the K most divergent words (implies --decompose).")
@click.option("--output", type=click.Path(), default=None)
@_input_errors_exit_2
def cmd_pair(left, right, fmt, no_standardize, decompose, top_k, output):
    """Distance between two embedding files, as a JSON report."""
    pair = align_vocabularies(load_embeddings(left, fmt), load_embeddings(right, fmt))
    standardize_inputs = not no_standardize
    if decompose or top_k is not None:
        report = decompose_per_word(pair, standardize_inputs)
    else:
        report = rpd(pair, standardize_inputs)
    payload = report.to_dict()
    if top_k is not None and "per_word" in payload:
        payload["per_word"] = payload["per_word"][: max(top_k, 0)]
    _emit(json.dumps(payload, indent=2), output)


@main.command("matrix")
@click.option("--emb", "embs", multiple=True, required=True, metavar="NAME=PATH")
@click.option("--format", "fmt", type=_FORMAT_CHOICE, default="word2vec", show_default=True)
@click.option("--common-vocab", is_flag=True,
              help="Restrict every embedding to the global vocabulary intersection.")
@click.option("--no-standardize", is_flag=True)
@click.option("--output", type=click.Path(), default=None)
@_input_errors_exit_2
def cmd_matrix(embs, fmt, common_vocab, no_standardize, output):
    """Pairwise distance matrix over named embeddings, as TSV."""
    named = [(name, load_embeddings(path, fmt)) for name, path in _parse_named(embs)]
    result = rpd_pairwise_matrix(named, standardize_inputs=not no_standardize,
                                 common_vocab=common_vocab)
    _emit(result.to_tsv(), output)


@main.command("nulltest")
@click.option("--left", required=True, type=click.Path())
@click.option("--right", required=True, type=click.Path())
@click.option("--format", "fmt", type=_FORMAT_CHOICE, default="word2vec", show_default=True)
@click.option("--replicates", type=click.IntRange(min=2), default=1000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--one-sided", is_flag=True,
              help="Base the printed decision on the lower-tail p-value.")
@click.option("--samples-out", type=click.Path(), default=None,
              help="Write the raw null draws, one per line.")
@click.option("--output", type=click.Path(), default=None)
@_input_errors_exit_2
def cmd_nulltest(left, right, fmt, replicates, seed, one_sided, samples_out, output):
    """Dependence z-test of two embedding files against the Monte Carlo null."""
    a = load_embeddings(left, fmt)
    b = load_embeddings(right, fmt)
    pair = align_vocabularies(a, b)
    observed = rpd(pair).rpd
    null = monte_carlo_null(pair.n, pair.left.dim, pair.right.dim, replicates, seed)
    result = z_test(observed, null)
    if samples_out is not None:
        null.save_samples(samples_out)
    p_for_decision = result.p_one_sided if one_sided else result.p_two_sided
    payload = {
        "observed_rpd": observed,
        "null": null.to_dict(),
        **result.to_dict(),
        "alpha": 0.01,
        "decision": "reject" if p_for_decision < 0.01 else "fail_to_reject",
    }
    _emit(json.dumps(payload, indent=2), output)


@main.command("train-svd")
@click.option("--corpus", required=True, type=click.Path())
@click.option("--signal", type=click.Choice(["pmi", "logcount"]), default="pmi",
              show_default=True)
@click.option("--dim", type=click.IntRange(min=1), default=300, show_default=True)
@click.option("--window", type=click.IntRange(min=1), default=10, show_default=True)
@click.option("--min-count", type=click.IntRange(min=1), default=10, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--oversample", type=click.IntRange(min=0), default=10, show_default=True)
@click.option("--power-iters", type=click.IntRange(min=0), default=20, show_default=True)
@click.option("--weighting", type=click.Choice(["flat", "harmonic"]), default="flat",
              show_default=True)
@click.option("--no-lowercase", is_flag=True)
@click.option("--save-counts", "counts_out", type=click.Path(), default=None,
              help="Also persist the co-occurrence counts as a triple file.")
@click.option("--output", required=True, type=click.Path(),
              help="Embedding file to write (word2vec text format).")
@_input_errors_exit_2
def cmd_train_svd(corpus, signal, dim, window, min_count, seed, oversample,
                  power_iters, weighting, no_lowercase, counts_out, output):
    """Train a spectral embedding from a plain-text corpus."""
    documents = read_corpus(corpus, lowercase=not no_lowercase)
    counts = count_cooccurrences(documents, window=window, min_count=min_count,
                                 weighting=weighting)
    if counts_out is not None:
        save_counts(counts, counts_out)
    if dim > len(counts.vocab):
        raise RpdError(f"--dim {dim} exceeds vocabulary size {len(counts.vocab)}")
    sig = pmi_matrix(counts) if signal == "pmi" else log_count_matrix(counts)
    factors = truncated_svd(sig, dim, seed, oversample=oversample,
                            power_iters=power_iters)
    emb = svd_embedding(factors.U, factors.S, vocab=factors.vocab)
    save_embeddings(emb, output, "word2vec_text")
    click.echo(f"wrote {emb.n} x {emb.dim} embedding to {output}", err=True)


@main.command("eval")
@click.option("--emb", "emb_path", required=True, type=click.Path())
@click.option("--format", "fmt", type=_FORMAT_CHOICE, default="word2vec", show_default=True)
@click.option("--similarity", type=click.Path(), default=None)
@click.option("--analogy", type=click.Path(), default=None)
@click.option("--output", type=click.Path(), default=None)
@_input_errors_exit_2
def cmd_eval(emb_path, fmt, similarity, analogy, output):
    """Score an embedding on similarity and/or analogy datasets (JSON)."""
    if similarity is None and analogy is None:
        raise click.UsageError("provide --similarity and/or --analogy")
    emb = load_embeddings(emb_path, fmt)
    sim_ds = load_similarity_dataset(similarity) if similarity else None
    ana_ds = load_analogy_dataset(analogy) if analogy else None
    _emit(evaluate(emb, sim_ds, ana_ds).to_json(), output)


@main.command("study")
@click.option("--baseline", required=True, type=click.Path())
@click.option("--emb", "embs", multiple=True, required=True, metavar="NAME=PATH")
@click.option("--format", "fmt", type=_FORMAT_CHOICE, default="word2vec", show_default=True)
@click.option("--similarity", type=click.Path(), default=None)
@click.option("--analogy", type=click.Path(), default=None)
@click.option("--output", type=click.Path(), default=None)
@_input_errors_exit_2
def cmd_study(baseline, embs, fmt, similarity, analogy, output):
    """Distance-vs-performance study against a baseline embedding (TSV)."""
    if similarity is None and analogy is None:
        raise click.UsageError("provide --similarity and/or --analogy")
    base = load_embeddings(baseline, fmt)
    named = [(name, load_embeddings(path, fmt)) for name, path in _parse_named(embs)]
    sim_ds = load_similarity_dataset(similarity) if similarity else None
    ana_ds = load_analogy_dataset(analogy) if analogy else None
    result = perf_vs_rpd_study(base, named, sim_ds, ana_ds)
    _emit(result.to_tsv(), output)


@main.command("map")
@click.option("--emb", "embs", multiple=True, required=True, metavar="NAME=PATH")
@click.option("--format", "fmt", type=_FORMAT_CHOICE, default="word2vec", show_default=True)
@click.option("--anchors", required=True, metavar="NAME,NAME",
              help="Two embedding names fixed to the origin and positive x-axis.")
@click.option("--common-vocab", is_flag=True)
@click.option("--output", type=click.Path(), default=None)
@_input_errors_exit_2
def cmd_map(embs, fmt, anchors, common_vocab, output):
    """2D layout of embedding spaces from their pairwise distances (TSV)."""
    parts = [p.strip() for p in anchors.split(",")]
    if len(parts) != 2 or not all(parts):
        raise click.UsageError(f"--anchors expects NAME,NAME, got {anchors!r}")
    named = [(name, load_embeddings(path, fmt)) for name, path in _parse_named(embs)]
    matrix = rpd_pairwise_matrix(named, common_vocab=common_vocab)
    result = layout_from_distances(matrix.values, matrix.names, parts[0], parts[1])
    _emit(result.to_tsv(), output)


if __name__ == "__main__":
    main()
