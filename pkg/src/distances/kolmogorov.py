from __future__ import annotations

import math
from typing import Callable, Tuple

import numpy as np
from scipy import stats

from src.errors import ArgumentError


def _as_sample(x, name: str = "sample") -> np.ndarray:
    arr = np.asarray(x, dtype=float).ravel()
    if arr.size == 0:
        raise ArgumentError(f"{name} must be non-empty")
    if not np.all(np.isfinite(arr)):
        raise ArgumentError(f"{name} contains non-finite values")
    return arr


def kolmogorov_vs_cdf(sample, cdf: Callable) -> float:
    """sup_x |F_n(x) - F(x)|, taking both one-sided gaps at every jump."""
    return float(stats.kstest(_as_sample(sample), cdf).statistic)


def kolmogorov_two_sample(a, b) -> float:
    return float(stats.ks_2samp(_as_sample(a, "a"), _as_sample(b, "b")).statistic)


def ks_two_sample_test(a, b) -> Tuple[float, float]:
    """(statistic, p-value) of the two-sample test."""
    result = stats.ks_2samp(_as_sample(a, "a"), _as_sample(b, "b"))
    return float(result.statistic), float(result.pvalue)


def dkw_threshold(n: int, alpha: float = 0.001) -> float:
    """Level-alpha bound on the one-sample statistic from the DKW inequality."""
    return math.sqrt(math.log(2.0 / alpha) / (2.0 * n))


def two_sample_threshold(n: int, m: int, alpha: float = 0.001) -> float:
    """Asymptotic level-alpha critical value of the two-sample statistic."""
    return math.sqrt(-math.log(alpha / 2.0) / 2.0) * math.sqrt((n + m) / (n * m))
