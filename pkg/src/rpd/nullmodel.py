"""Null distribution of RPD between independent random embeddings, and the z-test.

The null model draws pairs of independent Gaussian embeddings matched to the
observed comparison's shape (n, d_left, d_right), records the RPD of each
pair, and summarizes the draws by their mean and standard deviation. Observed
distances many standard deviations below the null mean reject the hypothesis
that two embedding spaces are independent.
"""

from __future__ import annotations

import json
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._threads import worker_count
from .errors import DegenerateInputError, PreconditionError
from .metric import rpd
from .store import AlignedPair, random_gaussian_embedding

_SKEW_THRESHOLD = 0.3
_EXCESS_KURTOSIS_THRESHOLD = 0.6


def _sample_moments(samples: np.ndarray) -> tuple[float, float, float, float]:
    """(mean, std with N-1, skewness, excess kurtosis); nan moments when degenerate."""
    mu = float(samples.mean())
    sigma = float(samples.std(ddof=1))
    centered = samples - mu
    m2 = float(np.mean(centered**2))
    if m2 == 0.0:
        return mu, sigma, float("nan"), float("nan")
    skew = float(np.mean(centered**3) / m2**1.5)
    exkurt = float(np.mean(centered**4) / m2**2 - 3.0)
    return mu, sigma, skew, exkurt


@dataclass(frozen=True)
class NullDistribution:
    """Moment summary of RPD draws between independent Gaussian embeddings."""

    n: int
    d_left: int
    d_right: int
    replicates: int
    mu: float
    sigma: float
    skewness: float
    excess_kurtosis: float
    seed: int
    samples: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if self.replicates < 2:
            raise PreconditionError(f"replicates must be >= 2, got {self.replicates}")
        if self.sigma < 0:
            raise PreconditionError(f"sigma must be >= 0, got {self.sigma}")
        if self.samples is not None:
            arr = np.asarray(self.samples, dtype=np.float64)
            mu, sigma, _, _ = _sample_moments(arr)
            if abs(mu - self.mu) > 1e-12 or abs(sigma - self.sigma) > 1e-12:
                raise PreconditionError("stored samples disagree with mu/sigma")

    @classmethod
    def from_samples(
        cls,
        samples,
        *,
        n: int,
        d_left: int,
        d_right: int,
        seed: int,
        keep_samples: bool = True,
    ) -> "NullDistribution":
        arr = np.asarray(samples, dtype=np.float64)
        if arr.ndim != 1 or arr.size < 2:
            raise PreconditionError("need at least 2 samples")
        mu, sigma, skew, exkurt = _sample_moments(arr)
        return cls(
            n=n,
            d_left=d_left,
            d_right=d_right,
            replicates=int(arr.size),
            mu=mu,
            sigma=sigma,
            skewness=skew,
            excess_kurtosis=exkurt,
            seed=seed,
            samples=tuple(float(v) for v in arr) if keep_samples else None,
        )

    def to_dict(self, include_samples: bool = False) -> dict:
        out = {
            "n": self.n,
            "d_left": self.d_left,
            "d_right": self.d_right,
            "replicates": self.replicates,
            "mu": self.mu,
            "sigma": self.sigma,
            "skewness": self.skewness,
            "excess_kurtosis": self.excess_kurtosis,
            "seed": self.seed,
        }
        if include_samples and self.samples is not None:
            out["samples"] = list(self.samples)
        return out

    def to_json(self, indent: int | None = 2, include_samples: bool = False) -> str:
        return json.dumps(self.to_dict(include_samples=include_samples), indent=indent)

    def save_samples(self, path: str | Path) -> None:
        """Write the raw draws, one value per line, for external plotting."""
        if self.samples is None:
            raise PreconditionError("no samples stored")
        with open(Path(path), "w", encoding="utf-8") as fh:
            for v in self.samples:
                fh.write("%.17g\n" % v)


def _derived_seed(seed: int, replicate: int, side: int) -> int:
    # Splittable scheme: every (base seed, replicate, side) triple gets an
    # independent stream.
    ss = np.random.SeedSequence([seed, replicate, side])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def monte_carlo_null(
    n: int,
    d_left: int,
    d_right: int,
    replicates: int,
    seed: int,
    keep_samples: bool = True,
) -> NullDistribution:
    """Estimate the null RPD distribution by repeated independent draws.

    Each replicate r draws two independent Gaussian embeddings with seeds
    derived from (seed, r, side) and records their RPD (standardization on).
    The result is a pure function of the arguments, independent of evaluation
    order and worker count.

    Args:
        n: Vocabulary size of the simulated spaces; must exceed both dims.
        d_left, d_right: Per-side dimensions.
        replicates: Number of draws (>= 2; below 30 triggers a warning).
        seed: Base seed of the splittable stream.
        keep_samples: Store the raw draws on the result (needed for
            normality diagnostics).
    """
    if n < 1 or d_left < 1 or d_right < 1:
        raise PreconditionError("n, d_left, d_right must be positive")
    if n <= max(d_left, d_right):
        raise PreconditionError(
            f"need n > max(d_left, d_right), got n={n}, d={max(d_left, d_right)}"
        )
    if replicates < 2:
        raise PreconditionError(f"replicates must be >= 2, got {replicates}")
    if replicates < 30:
        warnings.warn(
            f"{replicates} replicates is a noisy estimate; 30+ recommended",
            stacklevel=2,
        )

    def draw(r: int) -> float:
        left = random_gaussian_embedding(n, d_left, _derived_seed(seed, r, 0))
        right = random_gaussian_embedding(n, d_right, _derived_seed(seed, r, 1))
        pair = AlignedPair(left, right, left.vocab)
        return rpd(pair).rpd

    workers = worker_count()
    if workers > 1 and replicates > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            samples = list(pool.map(draw, range(replicates)))
    else:
        samples = [draw(r) for r in range(replicates)]

    return NullDistribution.from_samples(
        samples,
        n=n,
        d_left=d_left,
        d_right=d_right,
        seed=seed,
        keep_samples=keep_samples,
    )


def analytic_null_mean(n: int, d: int) -> float:
    """Leading-order expected RPD of independent isotropic embeddings: 1 - d/n.

    First-order approximation used for sanity checks, not hypothesis tests;
    the Monte Carlo estimate carries the finite-n corrections.
    """
    if d < 1 or n <= d:
        raise PreconditionError(f"need n > d >= 1, got n={n}, d={d}")
    return 1.0 - d / n


@dataclass(frozen=True)
class ZTestResult:
    """Dependence z-test outcome. ``reject_at_0_01`` uses the two-sided p."""

    z: float
    p_two_sided: float
    p_one_sided: float
    reject_at_0_01: bool

    def to_dict(self) -> dict:
        return {
            "z": self.z,
            "p_two_sided": self.p_two_sided,
            "p_one_sided": self.p_one_sided,
            "reject_at_0_01": self.reject_at_0_01,
        }


def z_test(observed_rpd: float, null: NullDistribution) -> ZTestResult:
    """z = (observed - mu) / sigma against the Gaussian null.

    ``p_two_sided`` is the standard-normal two-tailed probability;
    ``p_one_sided`` is the lower-tail probability (dependence pulls RPD
    below the null mean).
    """
    if null.sigma == 0.0:
        raise DegenerateInputError("null distribution has zero sigma")
    z = (observed_rpd - null.mu) / null.sigma
    p_two = math.erfc(abs(z) / math.sqrt(2.0))
    p_one = 0.5 * math.erfc(-z / math.sqrt(2.0))  # lower tail
    return ZTestResult(
        z=float(z),
        p_two_sided=float(p_two),
        p_one_sided=float(p_one),
        reject_at_0_01=bool(p_two < 0.01),
    )


@dataclass(frozen=True)
class NormalityDiagnostics:
    skewness: float
    excess_kurtosis: float
    normal_plausible: bool

    def to_dict(self) -> dict:
        return {
            "skewness": self.skewness,
            "excess_kurtosis": self.excess_kurtosis,
            "normal_plausible": self.normal_plausible,
        }


def normality_diagnostics(null: NullDistribution) -> NormalityDiagnostics:
    """Moment-based normality check of the stored draws.

    ``normal_plausible`` is true when |skewness| < 0.3 and
    |excess kurtosis| < 0.6, heuristic thresholds sized for a few hundred
    draws.

    Raises:
        PreconditionError: samples missing or fewer than 100 replicates.
        DegenerateInputError: all samples identical (moments undefined).
    """
    if null.samples is None:
        raise PreconditionError("normality diagnostics need stored samples")
    if null.replicates < 100:
        raise PreconditionError(
            f"need >= 100 replicates for diagnostics, got {null.replicates}"
        )
    arr = np.asarray(null.samples, dtype=np.float64)
    _, _, skew, exkurt = _sample_moments(arr)
    if math.isnan(skew):
        raise DegenerateInputError("all samples identical; skewness undefined")
    plausible = abs(skew) < _SKEW_THRESHOLD and abs(exkurt) < _EXCESS_KURTOSIS_THRESHOLD
    return NormalityDiagnostics(
        skewness=skew,
        excess_kurtosis=exkurt,
        normal_plausible=plausible,
    )
