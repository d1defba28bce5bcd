"""Binomial and bootstrap interval estimates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import ConfigError, EmptyListError
from .rng import index_block

Z95 = 1.96
MIN_REPLICATES = 1000
_BLOCK = 1 << 20


@dataclass(frozen=True)
class IntervalEstimate:
    lower: float
    point: float
    upper: float

    def __post_init__(self):
        if not self.lower <= self.point <= self.upper:
            raise ValueError(f"inconsistent interval {self}")

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def to_dict(self) -> dict:
        return {"lower": self.lower, "point": self.point, "upper": self.upper}


def binomial_ci(m: int, M: int, z: float = Z95) -> IntervalEstimate:
    """Normal-approximation interval ``p ± z·sqrt(p(1-p)/M)``, clamped to [0, 1]."""
    if M < 1 or not 0 <= m <= M:
        raise ValueError(f"need 0 <= m <= M and M >= 1, got m={m}, M={M}")
    p = m / M
    half = z * math.sqrt(p * (1.0 - p) / M)
    return IntervalEstimate(max(0.0, p - half), p, min(1.0, p + half))


def odds_ratio(beta: float) -> float:
    return math.exp(beta)


def bootstrap_means(values: Sequence[float], B: int, seed: int) -> np.ndarray:
    """Means of ``B`` case resamples.

    Draw ``i`` of replicate ``r`` takes stream position ``r*n + i`` of the
    SplitMix64 stream seeded with ``seed``, so the result is fixed by
    ``(values, B, seed)`` regardless of how the work is chunked.
    """
    x = np.asarray(values, dtype=float)
    n = x.size
    if n == 0:
        raise EmptyListError("cannot resample an empty sample")
    if B < MIN_REPLICATES:
        raise ConfigError(f"bootstrap needs at least {MIN_REPLICATES} replicates, got {B}")
    per_block = max(1, _BLOCK // n)
    out = np.empty(B)
    for r0 in range(0, B, per_block):
        r1 = min(B, r0 + per_block)
        idx = index_block(seed, r0 * n, (r1 - r0) * n, n).reshape(r1 - r0, n)
        out[r0:r1] = x[idx].mean(axis=1)
    return out


def percentile_interval(replicates: np.ndarray, point: float, alpha: float = 0.05) -> IntervalEstimate:
    # linear interpolation between order statistics at q*(B-1)
    lo, hi = np.quantile(replicates, [alpha / 2, 1 - alpha / 2])
    lo, hi = float(lo), float(hi)
    return IntervalEstimate(min(lo, point), point, max(hi, point))


def bootstrap_mean_ci(values: Sequence[float], B: int = 2000, seed: int = 0, alpha: float = 0.05) -> IntervalEstimate:
    """Percentile bootstrap interval for the mean."""
    means = bootstrap_means(values, B, seed)
    return percentile_interval(means, float(np.mean(values)), alpha)


@dataclass(frozen=True)
class BootstrapDifference:
    estimate: IntervalEstimate
    p_value: float


def bootstrap_difference(
    a: Sequence[float], b: Sequence[float], B: int, seed_a: int, seed_b: int, alpha: float = 0.05
) -> BootstrapDifference:
    """Difference of means ``mean(a) - mean(b)`` with independent resampling of each group.

    The two-sided p-value is twice the smaller tail mass of the replicate
    differences on either side of zero, capped at 1.
    """
    d = bootstrap_means(a, B, seed_a) - bootstrap_means(b, B, seed_b)
    point = float(np.mean(a) - np.mean(b))
    below = float(np.mean(d <= 0.0))
    above = float(np.mean(d >= 0.0))
    p = min(1.0, 2.0 * min(below, above))
    return BootstrapDifference(percentile_interval(d, point, alpha), p)
