"""Slow reference evaluations used to check the vectorised engine."""
from __future__ import annotations

from itertools import combinations, permutations
from typing import Iterator, Tuple

import numpy as np

from src.coeffs.family import CoefficientFamily


def random_family(
    rng: np.random.Generator, degree: int, support: int, density: float = 0.6
) -> CoefficientFamily:
    """Sparse random family with every level from 1 to ``degree`` populated."""
    entries = {}
    for m in range(1, degree + 1):
        for key in combinations(range(1, support + 1), m):
            if rng.random() < density:
                entries[key] = float(rng.normal())
    return CoefficientFamily(degree=degree, support=support, entries=entries)


def ordered_tuples(support: int, length: int) -> Iterator[Tuple[int, ...]]:
    """All ordered tuples of distinct indices in 1..support."""
    return permutations(range(1, support + 1), length)


def brute_force_series(c: CoefficientFamily, z: np.ndarray, n: int) -> float:
    """S_N(c, z) as the literal sum over ordered multi-indices."""
    total = 0.0
    for m in range(1, n + 1):
        for alpha in ordered_tuples(c.support, m):
            total += c.value(alpha) * float(np.prod(z[[i - 1 for i in alpha]]))
    return total


def finite_difference_gradient(
    c: CoefficientFamily, z: np.ndarray, n: int, step: float = 1e-6
) -> np.ndarray:
    """Central differences of the brute-force series in each coordinate."""
    grad = np.empty(c.support)
    for j in range(c.support):
        up = z.copy()
        down = z.copy()
        up[j] += step
        down[j] -= step
        grad[j] = (brute_force_series(c, up, n) - brute_force_series(c, down, n)) / (2.0 * step)
    return grad
