"""Scalar functionals of a coefficient family: norms, influence, N_q weight, lifts.

All sums run over ordered multi-indices. On canonical storage a level-m key
stands for m! ordered tuples, and a level-m key containing a fixed index k
stands for (m-1)! ordered tuples of the remaining entries.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from src.coeffs.family import CoefficientFamily, factorial
from src.coeffs.multi_index import MultiIndex
from src.errors import ArgumentError


@dataclass(frozen=True)
class CoeffStats:
    degree: int
    influence: List[float]  # delta_m for m = 1..N
    total_influence: float
    level_norms: List[float]  # |c|_m for m = 1..N
    total_norm: float

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "influence": self.influence,
            "total_influence": self.total_influence,
            "level_norms": self.level_norms,
            "total_norm": self.total_norm,
        }


def _check_level(c: CoefficientFamily, m: int) -> None:
    if not 1 <= m <= c.degree:
        raise ArgumentError(f"level {m} outside [1, {c.degree}]")


def _check_n(c: CoefficientFamily, n: int | None) -> int:
    level = c.degree if n is None else n
    if not 1 <= level <= c.degree:
        raise ArgumentError(f"N={level} outside [1, {c.degree}]")
    return level


def canonical_sum_sq(c: CoefficientFamily, m: int) -> float:
    _check_level(c, m)
    _, vals = c.level_arrays(m)
    return float(np.dot(vals, vals))


def level_norm(c: CoefficientFamily, m: int) -> float:
    """|c|_m: root of the ordered sum of squares at level m."""
    return math.sqrt(factorial(m) * canonical_sum_sq(c, m))


def per_variable_partial_sq(c: CoefficientFamily, m: int) -> np.ndarray:
    """For each k, the ordered sum of c^2(alpha, k) over |alpha| = m - 1."""
    _check_level(c, m)
    keys, vals = c.level_arrays(m)
    out = np.zeros(c.support)
    if len(vals):
        np.add.at(out, keys.ravel(), np.repeat(vals * vals, m))
    return factorial(m - 1) * out


def influence(c: CoefficientFamily, m: int) -> float:
    """delta_m(c); for m = 1 this is max_k |c(k)|."""
    partial = per_variable_partial_sq(c, m)
    return math.sqrt(float(partial.max(initial=0.0)))


def total_influence(c: CoefficientFamily, n: int | None = None) -> float:
    level = _check_n(c, n)
    return sum(influence(c, m) for m in range(1, level + 1))


def total_norm(c: CoefficientFamily, n: int | None = None) -> float:
    level = _check_n(c, n)
    return math.sqrt(sum(level_norm(c, m) ** 2 for m in range(1, level + 1)))


def coeff_stats(c: CoefficientFamily, n: int | None = None) -> CoeffStats:
    level = _check_n(c, n)
    deltas = [influence(c, m) for m in range(1, level + 1)]
    norms = [level_norm(c, m) for m in range(1, level + 1)]
    return CoeffStats(
        degree=level,
        influence=deltas,
        total_influence=sum(deltas),
        level_norms=norms,
        total_norm=math.sqrt(sum(v * v for v in norms)),
    )


def nq_weight(c: CoefficientFamily, q: int, big_m: float, n: int | None = None) -> float:
    """N_q(c, M) = (sum_{m=q}^{N} M^{m-q} m!/(m-q)! m! |c|_m^2)^{1/2}."""
    level = _check_n(c, n)
    if not 1 <= q <= level:
        raise ArgumentError(f"q={q} outside [1, {level}]")
    if big_m < 1:
        raise ArgumentError(f"M must be >= 1, got {big_m}")
    total = 0.0
    for m in range(q, level + 1):
        ordered_sq = level_norm(c, m) ** 2
        total += big_m ** (m - q) * factorial(m) / factorial(m - q) * factorial(m) * ordered_sq
    return math.sqrt(total)


def nq_weight_ceiling(c: CoefficientFamily, big_m: float, n: int | None = None) -> float:
    """N! e^{M/2} ||c||_N, the upper bound every N_q(c, M) sits under."""
    level = _check_n(c, n)
    return factorial(level) * math.exp(0.5 * big_m) * total_norm(c, level)


def lift_cj(c: CoefficientFamily, j: int) -> Tuple[float, CoefficientFamily]:
    """Split c into the constant c(j) and the lifted family c_j of degree N-1.

    c_j(alpha) = (1 + |alpha|) c(alpha, j) for non-void alpha. The void-alpha
    value c_j() = c(j) is returned separately since families have no level 0.
    """
    if not 1 <= j <= c.support:
        raise ArgumentError(f"j={j} outside [1, {c.support}]")
    constant = c.entries.get((j,), 0.0)
    lifted: Dict[MultiIndex, float] = {}
    for key, value in c.entries.items():
        if len(key) >= 2 and j in key:
            alpha = tuple(i for i in key if i != j)
            lifted[alpha] = (1 + len(alpha)) * value
    degree = max(c.degree - 1, 1)
    return constant, CoefficientFamily(degree=degree, support=c.support, entries=lifted)
