import numpy as np
import pytest

from rpd import EmbeddingMatrix


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_embedding(rng, n, d, prefix="w"):
    """Gaussian embedding with a deterministic synthetic vocabulary."""
    vocab = tuple(f"{prefix}{i}" for i in range(n))
    return EmbeddingMatrix(vocab, rng.standard_normal((n, d)))


def random_orthogonal(rng, d):
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    return q * np.sign(np.diag(r))
