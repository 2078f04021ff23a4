"""Finite test-function dictionaries for lower estimates of d_k.

Each member is f(x) = w g((x - t) / s) with g a logistic sigmoid or the
Gaussian bump exp(-u^2 / 2). Since the p-th derivative of f has sup norm
w s^{-p} M_p(g), the norm ||f||_{k,inf} = sum_{p <= k} ||f^{(p)}||_inf is
known in closed form and w is chosen to make it exactly 1.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from scipy import special

from src.errors import ArgumentError
from src.rng import map_blocks

logger = logging.getLogger(__name__)

MAX_ORDER = 3

# sup |g^{(p)}| for p = 0..3
_SIGMOID_SUPS = (1.0, 0.25, 1.0 / (6.0 * math.sqrt(3.0)), 0.125)
_U3 = math.sqrt(3.0 - math.sqrt(6.0))
_BUMP_SUPS = (
    1.0,
    math.exp(-0.5),
    1.0,
    _U3 * math.sqrt(6.0) * math.exp(-(3.0 - math.sqrt(6.0)) / 2.0),
)
SUP_NORMS = {"sigmoid": _SIGMOID_SUPS, "bump": _BUMP_SUPS}

DEFAULT_SHIFT_QUANTILES = tuple((i + 0.5) / 8.0 for i in range(8))
DEFAULT_SCALES = (0.25, 0.5, 1.0, 2.0)  # multiples of the pooled standard deviation


def sobolev_sup_norm(kind: str, scale: float, k: int) -> float:
    """||g((. - t)/s)||_{k,inf} for the unweighted member."""
    if kind not in SUP_NORMS:
        raise ArgumentError(f"unknown test-function kind {kind!r}")
    if not 0 <= k <= MAX_ORDER:
        raise ArgumentError(f"smoothness order must lie in [0, {MAX_ORDER}], got {k}")
    if scale <= 0.0:
        raise ArgumentError(f"scale must be positive, got {scale}")
    return sum(scale ** (-p) * SUP_NORMS[kind][p] for p in range(k + 1))


@dataclass(frozen=True)
class TestFunction:
    kind: str
    shift: float
    scale: float
    weight: float

    __test__ = False  # not a pytest class

    def norm(self, k: int) -> float:
        return abs(self.weight) * sobolev_sup_norm(self.kind, self.scale, k)

    def __call__(self, x) -> np.ndarray:
        u = (np.asarray(x, dtype=float) - self.shift) / self.scale
        if self.kind == "sigmoid":
            return self.weight * special.expit(u)
        return self.weight * np.exp(-0.5 * u * u)


def normalized(kind: str, shift: float, scale: float, k: int) -> TestFunction:
    return TestFunction(kind, shift, scale, 1.0 / sobolev_sup_norm(kind, scale, k))


def default_dictionary(
    pooled, k: int, scales: Sequence[float] = DEFAULT_SCALES
) -> List[TestFunction]:
    """8 shifts at pooled quantiles x 4 scales x {sigmoid, bump}, each of unit k-norm."""
    data = np.sort(np.asarray(pooled, dtype=float).ravel())
    if data.size == 0:
        raise ArgumentError("cannot build a dictionary from an empty sample")
    spread = float(np.std(data)) or 1.0
    shifts = np.quantile(data, DEFAULT_SHIFT_QUANTILES)
    return [
        normalized(kind, float(t), factor * spread, k)
        for kind in ("sigmoid", "bump")
        for factor in scales
        for t in shifts
    ]


def renormalized(dictionary: Sequence[TestFunction], k: int) -> List[TestFunction]:
    """Same shapes rescaled to unit k-norm."""
    return [normalized(f.kind, f.shift, f.scale, k) for f in dictionary]


def dk_lower(
    a,
    b,
    k: int,
    dictionary: Optional[Sequence[TestFunction]] = None,
    workers: Optional[int] = None,
) -> float:
    """max over the dictionary of |mean f(a) - mean f(b)|, a lower estimate of d_k."""
    a_arr = np.asarray(a, dtype=float).ravel()
    b_arr = np.asarray(b, dtype=float).ravel()
    if a_arr.size == 0 or b_arr.size == 0:
        raise ArgumentError("dk_lower needs non-empty samples")
    if dictionary is None:
        dictionary = default_dictionary(np.concatenate([a_arr, b_arr]), k)
    for f in dictionary:
        if f.norm(k) > 1.0 + 1e-12:
            raise ArgumentError(f"test function {f} has ||f||_(k,inf) = {f.norm(k)} > 1")
    if not dictionary:
        return 0.0
    members = list(dictionary)

    def gap(i: int, _start: int, _stop: int) -> float:
        return abs(float(np.mean(members[i](a_arr)) - np.mean(members[i](b_arr))))

    gaps = map_blocks(gap, [(i, i, i + 1) for i in range(len(members))], workers)
    return max(gaps)
