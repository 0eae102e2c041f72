import numpy as np
import pytest
from scipy import sparse

from _corpus import synthetic_corpus_text
from rpd import (
    CooccurrenceCounts,
    CorpusError,
    DimensionError,
    PreconditionError,
    SignalMatrix,
    count_cooccurrences,
    load_counts,
    log_count_matrix,
    pmi_matrix,
    save_counts,
    svd_embedding,
    tokenize_corpus_text,
    train_spectral_embedding,
    truncated_svd,
)


def dense_counts(array, vocab=None, window=1, min_count=1):
    array = np.asarray(array, dtype=np.float64)
    if vocab is None:
        vocab = tuple(f"t{i}" for i in range(array.shape[0]))
    return CooccurrenceCounts(
        vocab=vocab,
        counts=sparse.csr_array(array),
        total=float(array.sum()),
        window=window,
        min_count=min_count,
    )


def signal_of(array, kind="pmi"):
    counts = dense_counts(array)
    return SignalMatrix(kind=kind, matrix=sparse.csr_array(np.asarray(array, dtype=np.float64)),
                        source=counts)


class TestCountCooccurrences:
    def test_window_one_hand_count(self):
        counts = count_cooccurrences([["a", "b", "a"]], window=1, min_count=1)
        dense = counts.counts.toarray()
        a, b = counts.vocab.index("a"), counts.vocab.index("b")
        assert dense[a, b] == 2.0
        assert dense[b, a] == 2.0
        assert dense[a, a] == 0.0
        assert counts.total == 4.0

    def test_window_two_adds_self_pair(self):
        counts = count_cooccurrences([["a", "b", "a"]], window=2, min_count=1)
        dense = counts.counts.toarray()
        a = counts.vocab.index("a")
        assert dense[a, a] == 2.0
        assert counts.total == 6.0

    def test_min_count_filters_vocab(self):
        docs = [["hot", "cold", "hot", "hot", "rare"]]
        counts = count_cooccurrences(docs, window=1, min_count=2)
        assert counts.vocab == ("hot",) or "rare" not in counts.vocab

    def test_min_count_too_high(self):
        with pytest.raises(CorpusError):
            count_cooccurrences([["a", "b"]], window=1, min_count=10)

    def test_vocab_ordered_by_frequency_then_word(self):
        docs = [["b", "b", "a", "a", "c", "c", "c"]]
        counts = count_cooccurrences(docs, window=1, min_count=1)
        assert counts.vocab == ("c", "a", "b")

    def test_symmetric(self):
        text = synthetic_corpus_text(3000, vocab_size=60, seed=4)
        counts = count_cooccurrences(tokenize_corpus_text(text), window=5, min_count=2)
        diff = counts.counts - counts.counts.T
        assert abs(diff).sum() == 0.0

    def test_document_boundaries_not_crossed(self):
        joined = count_cooccurrences([["a", "b", "c", "d"]], window=3, min_count=1)
        split = count_cooccurrences([["a", "b"], ["c", "d"]], window=3, min_count=1)
        assert split.total < joined.total
        dense = split.counts.toarray()
        idx = {w: i for i, w in enumerate(split.vocab)}
        assert dense[idx["b"], idx["c"]] == 0.0

    def test_monotone_in_min_count(self):
        text = synthetic_corpus_text(4000, vocab_size=80, seed=5)
        docs = tokenize_corpus_text(text)
        sizes = [
            len(count_cooccurrences(docs, window=3, min_count=m).vocab)
            for m in (1, 3, 9, 27)
        ]
        assert sizes == sorted(sizes, reverse=True)

    def test_harmonic_weighting(self):
        flat = count_cooccurrences([["a", "b", "c"]], window=2, min_count=1)
        harmonic = count_cooccurrences([["a", "b", "c"]], window=2, min_count=1,
                                       weighting="harmonic")
        fa = flat.counts.toarray()
        ha = harmonic.counts.toarray()
        idx = {w: i for i, w in enumerate(flat.vocab)}
        assert fa[idx["a"], idx["c"]] == 1.0
        assert ha[idx["a"], idx["c"]] == 0.5
        assert ha[idx["a"], idx["b"]] == 1.0

    def test_deterministic(self):
        text = synthetic_corpus_text(2000, vocab_size=40, seed=6)
        docs = tokenize_corpus_text(text)
        c1 = count_cooccurrences(docs, window=4, min_count=2)
        c2 = count_cooccurrences(docs, window=4, min_count=2)
        assert c1.vocab == c2.vocab
        assert (c1.counts != c2.counts).nnz == 0

    def test_bad_arguments(self):
        with pytest.raises(PreconditionError):
            count_cooccurrences([["a", "b"]], window=0, min_count=1)
        with pytest.raises(PreconditionError):
            count_cooccurrences([["a", "b"]], window=1, min_count=1, weighting="gauss")


class TestSignalMatrices:
    def test_pmi_hand_value(self):
        counts = dense_counts([[0.0, 1.0], [1.0, 0.0]])
        pmi = pmi_matrix(counts)
        dense = pmi.matrix.toarray()
        assert dense[0, 1] == pytest.approx(np.log(2.0), rel=1e-15)
        assert pmi.kind == "pmi"

    def test_pmi_zero_cells_stay_zero(self):
        counts = dense_counts([[0.0, 2.0, 0.0], [2.0, 0.0, 1.0], [0.0, 1.0, 0.0]])
        dense = pmi_matrix(counts).matrix.toarray()
        assert dense[0, 2] == 0.0

    def test_pmi_matches_dense_formula(self, rng):
        raw = rng.integers(0, 6, size=(12, 12)).astype(float)
        raw = raw + raw.T
        np.fill_diagonal(raw, 0.0)
        counts = dense_counts(raw)
        dense = pmi_matrix(counts).matrix.toarray()

        total = raw.sum()
        rowsums = raw.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            expected = np.log(raw * total / np.outer(rowsums, rowsums))
        expected[~np.isfinite(expected)] = 0.0
        expected[expected < 0] = 0.0
        np.testing.assert_allclose(dense, expected, rtol=0, atol=1e-12)

    def test_log_count_values(self, rng):
        raw = rng.integers(0, 5, size=(8, 8)).astype(float)
        raw = raw + raw.T
        counts = dense_counts(raw)
        dense = log_count_matrix(counts).matrix.toarray()
        np.testing.assert_allclose(dense, np.log1p(raw), rtol=0, atol=1e-15)

    def test_log_count_fractional(self):
        value = np.e - 1.0
        counts = dense_counts([[0.0, value], [value, 0.0]])
        dense = log_count_matrix(counts).matrix.toarray()
        assert dense[0, 1] == pytest.approx(1.0, rel=1e-15)

    def test_signals_preserve_symmetry_and_sign(self, rng):
        raw = rng.integers(0, 4, size=(10, 10)).astype(float)
        raw = raw + raw.T
        counts = dense_counts(raw)
        for sig in (pmi_matrix(counts), log_count_matrix(counts)):
            dense = sig.matrix.toarray()
            np.testing.assert_allclose(dense, dense.T, atol=0)
            assert np.all(dense >= 0.0)


class TestTruncatedSvd:
    def test_diagonal_signal(self):
        sig = signal_of(np.diag([3.0, 2.0, 1.0]))
        factors = truncated_svd(sig, 2, seed=0)
        np.testing.assert_allclose(factors.S, [3.0, 2.0], atol=1e-12)
        # U columns are coordinate axes up to sign
        np.testing.assert_allclose(np.abs(factors.U), [[1, 0], [0, 1], [0, 0]],
                                   atol=1e-10)

    def test_random_symmetric_matches_dense(self, rng):
        a = rng.standard_normal((200, 200))
        m = (a + a.T) / 2.0
        sig = signal_of(m)
        # A near-flat spectrum needs many subspace iterations to reach the
        # dense oracle; the default suits decaying signal spectra.
        factors = truncated_svd(sig, 20, seed=1, power_iters=60)
        dense_s = np.linalg.svd(m, compute_uv=False)[:20]
        np.testing.assert_allclose(factors.S, dense_s, rtol=1e-6)

    def test_full_rank_reconstruction(self, rng):
        m = rng.standard_normal((40, 40))
        sig = signal_of(m)
        factors = truncated_svd(sig, 40, seed=2)
        recon = factors.U * factors.S @ factors.Vt
        assert np.linalg.norm(recon - m) / np.linalg.norm(m) < 1e-8

    def test_orthonormal_columns(self, rng):
        m = rng.standard_normal((60, 60))
        sig = signal_of((m + m.T) / 2.0)
        factors = truncated_svd(sig, 10, seed=3)
        gram = factors.U.T @ factors.U
        np.testing.assert_allclose(gram, np.eye(10), atol=1e-8)
        assert np.all(np.diff(factors.S) <= 1e-12)
        assert np.all(factors.S >= 0.0)

    def test_deterministic_for_seed(self, rng):
        m = rng.standard_normal((50, 50))
        sig = signal_of(m)
        f1 = truncated_svd(sig, 8, seed=4)
        f2 = truncated_svd(sig, 8, seed=4)
        np.testing.assert_array_equal(f1.U, f2.U)
        np.testing.assert_array_equal(f1.S, f2.S)

    def test_d_out_of_range(self, rng):
        sig = signal_of(rng.standard_normal((10, 10)))
        with pytest.raises(DimensionError):
            truncated_svd(sig, 11, seed=0)
        with pytest.raises(DimensionError):
            truncated_svd(sig, 0, seed=0)

    def test_truncation_error_is_optimal(self, rng):
        # The truncation residual must match the dense oracle's optimal
        # rank-d error, which equals the tail singular values' norm.
        b = rng.standard_normal((120, 15)) * np.linspace(1.0, 0.05, 15)
        m = b @ b.T + 0.01 * rng.standard_normal((120, 120))
        sig = signal_of(m)
        d = 10
        factors = truncated_svd(sig, d, seed=6)
        residual = np.linalg.norm(m - (factors.U * factors.S) @ factors.Vt)
        dense_s = np.linalg.svd(m, compute_uv=False)
        optimal = np.linalg.norm(dense_s[d:])
        assert residual == pytest.approx(optimal, rel=1e-6)


class TestSvdEmbedding:
    def test_hand_example(self):
        emb = svd_embedding(np.eye(3), np.array([4.0, 1.0, 0.0]), d=2)
        np.testing.assert_allclose(emb.matrix, [[2.0, 0.0], [0.0, 1.0], [0.0, 0.0]],
                                   atol=0)
        assert emb.vocab == ("w0", "w1", "w2")
        assert not emb.standardized

    def test_gram_is_diagonal_of_singular_values(self, rng):
        m = rng.standard_normal((30, 30))
        sig = signal_of((m + m.T) / 2.0)
        factors = truncated_svd(sig, 6, seed=5)
        emb = svd_embedding(factors.U, factors.S, vocab=factors.vocab)
        np.testing.assert_allclose(emb.matrix.T @ emb.matrix, np.diag(factors.S),
                                   atol=1e-8)

    def test_negative_singular_value_clamped(self):
        with pytest.warns(UserWarning):
            emb = svd_embedding(np.eye(2), np.array([1.0, -1e-12]))
        assert emb.matrix[1, 1] == 0.0

    def test_end_to_end_best_rank_d(self):
        text = synthetic_corpus_text(15000, vocab_size=150, seed=7)
        counts = count_cooccurrences(tokenize_corpus_text(text), window=5, min_count=3)
        signal = pmi_matrix(counts)
        d = 6
        dense = signal.matrix.toarray()
        # The identity below requires the d largest-magnitude eigenvalues of
        # this corpus's signal to be positive; verify before relying on it.
        eigenvalues = np.linalg.eigvalsh(dense)
        by_magnitude = eigenvalues[np.argsort(np.abs(eigenvalues))[::-1]]
        assert np.all(by_magnitude[:d] > 0)

        factors = truncated_svd(signal, d, seed=8)
        emb = svd_embedding(factors.U, factors.S, vocab=factors.vocab)
        gram = emb.matrix @ emb.matrix.T

        u, s, vt = np.linalg.svd(dense)
        best = u[:, :d] * s[:d] @ vt[:d]
        assert (
            np.linalg.norm(gram - best) / np.linalg.norm(best) < 1e-6
        )


class TestTrainPipeline:
    def test_deterministic_end_to_end(self):
        text = synthetic_corpus_text(8000, vocab_size=120, seed=9)
        docs = tokenize_corpus_text(text)
        kwargs = dict(signal="pmi", dim=16, window=5, min_count=3, seed=10)
        e1 = train_spectral_embedding(docs, **kwargs)
        e2 = train_spectral_embedding(docs, **kwargs)
        assert e1.vocab == e2.vocab
        np.testing.assert_array_equal(e1.matrix, e2.matrix)

    def test_signals_differ(self):
        text = synthetic_corpus_text(8000, vocab_size=120, seed=9)
        docs = tokenize_corpus_text(text)
        pmi = train_spectral_embedding(docs, signal="pmi", dim=16, window=5,
                                       min_count=3, seed=10)
        lc = train_spectral_embedding(docs, signal="logcount", dim=16, window=5,
                                      min_count=3, seed=10)
        assert pmi.vocab == lc.vocab
        assert not np.allclose(pmi.matrix, lc.matrix)

    def test_dim_exceeds_vocab(self):
        with pytest.raises(DimensionError):
            train_spectral_embedding([["a", "b", "a", "b"]], signal="pmi", dim=10,
                                     window=2, min_count=1)

    def test_seed_only_affects_range_finder(self):
        text = synthetic_corpus_text(6000, vocab_size=100, seed=11)
        docs = tokenize_corpus_text(text)
        counts = count_cooccurrences(docs, window=5, min_count=3)
        signal = pmi_matrix(counts)
        f1 = truncated_svd(signal, 10, seed=1)
        f2 = truncated_svd(signal, 10, seed=2)
        np.testing.assert_allclose(f1.S, f2.S, rtol=1e-6)


class TestCountsPersistence:
    def test_round_trip(self, tmp_path):
        text = synthetic_corpus_text(3000, vocab_size=50, seed=12)
        counts = count_cooccurrences(tokenize_corpus_text(text), window=4, min_count=2)
        path = tmp_path / "counts.txt"
        save_counts(counts, path)
        assert (tmp_path / "counts.txt.vocab").exists()

        back = load_counts(path)
        assert back.vocab == counts.vocab
        assert back.window == counts.window
        assert back.min_count == counts.min_count
        assert back.total == pytest.approx(counts.total, rel=1e-12)
        assert (back.counts != counts.counts).nnz == 0

    def test_round_trip_harmonic(self, tmp_path):
        counts = count_cooccurrences([["a", "b", "c", "a"]], window=3, min_count=1,
                                     weighting="harmonic")
        path = tmp_path / "counts.txt"
        save_counts(counts, path)
        back = load_counts(path)
        np.testing.assert_allclose(back.counts.toarray(), counts.counts.toarray(),
                                   rtol=0, atol=0)
