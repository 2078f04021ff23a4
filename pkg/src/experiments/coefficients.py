"""Coefficient families of the worked examples and their deterministic facts.

a(i, j) = 1{i != j} |i - j|^{-1/2} on {1..n}; the quadratic CLT uses
c_n = a / sqrt(2 n ln n) and the variance estimator uses cbar_n = (1/n) a (x)_1 a,
whose diagonal is nonzero. All norms below are ordered sums over (i, j).
"""
from __future__ import annotations

import functools
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.coeffs.family import CoefficientFamily
from src.coeffs.functionals import influence, level_norm
from src.errors import ArgumentError
from src.experiments.phi import c_star

logger = logging.getLogger(__name__)

# n >= (32 sqrt(2) / pi)^2 in the statement, sqrt(n) >= 256 sqrt(2) / pi in its proof
STATEMENT_PROVISO = (32.0 * math.sqrt(2.0) / math.pi) ** 2
PROOF_PROVISO = (256.0 * math.sqrt(2.0) / math.pi) ** 2


def _check_n(n: int) -> None:
    if n < 3:
        raise ArgumentError(f"n must be >= 3, got {n}")


def interaction_matrix(n: int) -> np.ndarray:
    """a(i, j) with row/column i stored at position i - 1."""
    idx = np.arange(n)
    gap = np.abs(idx[:, None] - idx[None, :]).astype(float)
    out = np.zeros((n, n))
    off = gap > 0
    out[off] = 1.0 / np.sqrt(gap[off])
    return out


@dataclass(frozen=True)
class PhiGrid:
    n: int

    def __post_init__(self) -> None:
        _check_n(self.n)

    @functools.cached_property
    def a(self) -> np.ndarray:
        return interaction_matrix(self.n)

    @property
    def scale(self) -> float:
        return 1.0 / math.sqrt(2.0 * self.n * math.log(self.n))

    @property
    def c(self) -> np.ndarray:
        return self.scale * self.a

    @functools.cached_property
    def cbar(self) -> np.ndarray:
        return self.a @ self.a / self.n

    @functools.cached_property
    def cbar_prime(self) -> np.ndarray:
        out = self.cbar.copy()
        np.fill_diagonal(out, 0.0)
        return out

    @property
    def points(self) -> np.ndarray:
        return np.arange(1, self.n + 1) / self.n

    def second_moments(self) -> np.ndarray:
        """E X_i^2 = (1/n) sum_{j != i} a(i, j)^2."""
        return np.sum(self.a**2, axis=1) / self.n


def quad_clt_coeffs(n: int) -> CoefficientFamily:
    """c_n(i, j) = 1{i != j} / (sqrt(2 n ln n) sqrt|i - j|)."""
    return CoefficientFamily.from_dense(PhiGrid(n).c)


def quad_clt_facts(n: int, c: Optional[CoefficientFamily] = None) -> dict:
    """delta_2^2(c_n) <= 2/n and 1 - 1/ln n <= |c_n|_2^2 <= 1 + 1/ln n."""
    c = quad_clt_coeffs(n) if c is None else c
    delta_sq = influence(c, 2) ** 2
    norm_sq = level_norm(c, 2) ** 2
    log_n = math.log(n)
    return {
        "n": n,
        "delta_sq": delta_sq,
        "delta_sq_bound": 2.0 / n,
        "delta_ok": delta_sq <= 2.0 / n,
        "norm_sq": norm_sq,
        "norm_ok": 1.0 - 1.0 / log_n <= norm_sq <= 1.0 + 1.0 / log_n,
    }


def _harmonic(n: int) -> np.ndarray:
    """H_0..H_n."""
    return np.concatenate([[0.0], np.cumsum(1.0 / np.arange(1, n + 1))])


def row_logsum_check(n: int) -> np.ndarray:
    """ln i + ln(n - i) <= sum_j a^2(i, j) <= 2 + ln i + ln(n - i) for i = 1..n-1."""
    _check_n(n)
    i = np.arange(1, n)
    h = _harmonic(n)
    # sum_j a^2(i, j) = H_{i-1} + H_{n-i}
    rows = h[i - 1] + h[n - i]
    logs = np.log(i) + np.log(n - i)
    return (logs <= rows) & (rows <= 2.0 + logs)


@dataclass(frozen=True)
class AbarFacts:
    n: int
    c_star: float
    delta_sq: float  # max_i sum_j cbar_n(i, j)^2
    norm_sq: float  # sum_{i,j} cbar_n(i, j)^2
    diagonal_sq: float  # sum_k cbar_n(k, k)^2
    contraction_sq: float  # sum_{i,j} (c_n (x)_1 c_n)(i, j)^2
    statement_proviso: bool
    proof_proviso: bool

    @property
    def log_sq(self) -> float:
        return math.log(self.n) ** 2

    @property
    def norm_lower_ok(self) -> bool:
        return self.c_star <= self.norm_sq

    @property
    def contraction_lower_ok(self) -> bool:
        return self.c_star / (4.0 * self.log_sq) <= self.contraction_sq

    @property
    def passed(self) -> bool:
        return self.norm_lower_ok and self.contraction_lower_ok

    def ratios(self) -> dict:
        """Quantities divided by their rates; these should stay bounded in n."""
        return {
            "delta_ratio": self.delta_sq * self.n / self.log_sq,
            "norm_sq": self.norm_sq,
            "diagonal_ratio": self.diagonal_sq * self.n / self.log_sq,
            "contraction_ratio": self.contraction_sq * self.log_sq,
        }

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "c_star": self.c_star,
            "delta_sq": self.delta_sq,
            "norm_sq": self.norm_sq,
            "diagonal_sq": self.diagonal_sq,
            "contraction_sq": self.contraction_sq,
            "norm_lower_ok": self.norm_lower_ok,
            "contraction_lower_ok": self.contraction_lower_ok,
            "statement_proviso": self.statement_proviso,
            "proof_proviso": self.proof_proviso,
            **self.ratios(),
        }


def abar_facts(n: int) -> AbarFacts:
    grid = PhiGrid(n)
    cbar = grid.cbar
    c = grid.c
    contracted = c @ c
    facts = AbarFacts(
        n=n,
        c_star=c_star(),
        delta_sq=float(np.max(np.sum(cbar**2, axis=1))),
        norm_sq=float(np.sum(cbar**2)),
        diagonal_sq=float(np.sum(np.diag(cbar) ** 2)),
        contraction_sq=float(np.sum(contracted**2)),
        statement_proviso=n >= STATEMENT_PROVISO,
        proof_proviso=n >= PROOF_PROVISO,
    )
    if not facts.passed:
        logger.warning(f"cbar lower bounds fail at n={n}: {facts.to_dict()}")
    return facts


def chi2_target_coeffs(m: int, length: int) -> CoefficientFamily:
    """m blocks of ``length`` variables, c(i, j) = 1/length inside a block."""
    if m < 1:
        raise ArgumentError(f"m must be >= 1, got {m}")
    if length < 2:
        raise ArgumentError(f"block length must be >= 2, got {length}")
    entries = {}
    for b in range(m):
        first = b * length + 1
        for i in range(first, first + length):
            for j in range(i + 1, first + length):
                entries[(i, j)] = 1.0 / length
    return CoefficientFamily(degree=2, support=m * length, entries=entries)
