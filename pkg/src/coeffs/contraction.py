"""Contractions c (x)_r d, their symmetrisation and the chi-squared functional kappa.

Tables are keyed by pairs of canonical multi-indices (alpha, beta), each of
length N - r. A stored pair stands for ((N-r)!)^2 ordered pairs, all with the
same value because c and d are symmetric. Degree 2 uses dense matrices; other
degrees use a hash join on the shared gamma keys and are limited to
``settings.MAX_GENERAL_SUPPORT`` variables.
"""
from __future__ import annotations

import enum
import logging
import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import DefaultDict, Dict, List, Tuple

import numpy as np

from src.coeffs.family import CoefficientFamily, factorial
from src.coeffs.functionals import level_norm
from src.coeffs.multi_index import MultiIndex
from src.config import settings
from src.errors import ArgumentError

logger = logging.getLogger(__name__)

PairKey = Tuple[MultiIndex, MultiIndex]


@dataclass(frozen=True)
class ContractionTable:
    degree: int
    order: int
    entries: Dict[PairKey, float]

    @property
    def arity(self) -> int:
        return self.degree - self.order

    def value(self, alpha: MultiIndex, beta: MultiIndex) -> float:
        if len(set(alpha)) < len(alpha) or len(set(beta)) < len(beta):
            return 0.0
        return self.entries.get((tuple(sorted(alpha)), tuple(sorted(beta))), 0.0)

    def scalar(self) -> float:
        if self.arity != 0:
            raise ArgumentError("only full contractions (r = N) are scalars")
        return self.entries.get(((), ()), 0.0)

    def norm_sq(self) -> float:
        """Ordered sum of squares over all (alpha, beta)."""
        mult = factorial(self.arity) ** 2
        return mult * sum(v * v for v in self.entries.values())

    def to_dense(self, support: int) -> np.ndarray:
        """Matrix form for tables over single indices (N - r = 1)."""
        if self.arity != 1:
            raise ArgumentError("dense view needs N - r = 1")
        mat = np.zeros((support, support))
        for (a, b), v in self.entries.items():
            mat[a[0] - 1, b[0] - 1] = v
        return mat


@dataclass(frozen=True)
class SymmetricTable:
    """Fully symmetric function of an ordered tuple, keyed by its sorted multiset."""

    length: int
    entries: Dict[Tuple[int, ...], float]

    def value(self, raw: Tuple[int, ...]) -> float:
        return self.entries.get(tuple(sorted(raw)), 0.0)

    def norm_sq(self) -> float:
        return sum(ordered_count(ms) * v * v for ms, v in self.entries.items())


def ordered_count(multiset: Tuple[int, ...]) -> float:
    """Number of distinct orderings of a sorted multiset."""
    count = factorial(len(multiset))
    for mult in Counter(multiset).values():
        count /= factorial(mult)
    return count


def _top_level(c: CoefficientFamily, n: int) -> Dict[MultiIndex, float]:
    if c.degree != n:
        raise ArgumentError(f"contraction needs degree {n}, got {c.degree}")
    return c.levels[n]


def contraction(c: CoefficientFamily, d: CoefficientFamily, r: int) -> ContractionTable:
    """(c (x)_r d)(alpha, beta) = sum over ordered gamma of c(alpha, gamma) d(beta, gamma)."""
    n = c.degree
    if d.degree != n:
        raise ArgumentError(f"contraction needs a common degree, got {c.degree} and {d.degree}")
    if not 0 <= r <= n:
        raise ArgumentError(f"contraction order r={r} outside [0, {n}]")
    if n == 2 and r == 1:
        return _dense_degree2(c, d)

    support = max(c.support, d.support)
    if n > 2 and 0 < r < n and support > settings.MAX_GENERAL_SUPPORT:
        raise ArgumentError(
            f"general-degree contraction limited to support <= "
            f"{settings.MAX_GENERAL_SUPPORT}, got {support}"
        )
    left = _index_by_gamma(_top_level(c, n), r)
    right = _index_by_gamma(_top_level(d, n), r)
    weight = factorial(r)
    table: DefaultDict[PairKey, float] = defaultdict(float)
    for gamma, alphas in left.items():
        betas = right.get(gamma)
        if not betas:
            continue
        for alpha, v in alphas:
            for beta, w in betas:
                table[(alpha, beta)] += weight * v * w
    entries = {k: v for k, v in table.items() if v != 0.0}
    logger.debug(f"Contraction N={n} r={r}: {len(entries)} pair entries")
    return ContractionTable(degree=n, order=r, entries=entries)


def _index_by_gamma(
    level: Dict[MultiIndex, float], r: int
) -> Dict[MultiIndex, List[Tuple[MultiIndex, float]]]:
    index: DefaultDict[MultiIndex, List[Tuple[MultiIndex, float]]] = defaultdict(list)
    for key, value in level.items():
        for gamma in combinations(key, r):
            alpha = tuple(i for i in key if i not in gamma)
            index[gamma].append((alpha, value))
    return index


def _dense_degree2(c: CoefficientFamily, d: CoefficientFamily) -> ContractionTable:
    support = max(c.support, d.support)
    left = np.zeros((support, support))
    right = np.zeros((support, support))
    left[: c.support, : c.support] = c.dense_matrix()
    right[: d.support, : d.support] = d.dense_matrix()
    prod = contraction_matrix(left, right)
    rows, cols = np.nonzero(prod)
    entries = {((int(i) + 1,), (int(j) + 1,)): float(prod[i, j]) for i, j in zip(rows, cols)}
    return ContractionTable(degree=2, order=1, entries=entries)


def contraction_matrix(left: np.ndarray, right: np.ndarray | None = None) -> np.ndarray:
    """Degree-2, r = 1 contraction of zero-diagonal symmetric matrices: (C D)(i, j)."""
    return left @ (left if right is None else right)


def symmetrize_contraction(table: ContractionTable) -> SymmetricTable:
    """Average over all permutations of the concatenated arguments (alpha, beta).

    The table is already symmetric inside alpha and inside beta, so averaging
    over the binom(2a, a) ways of choosing which positions feed alpha is the
    same as averaging over all (2a)! permutations.
    """
    a = table.arity
    if a == 0:
        return SymmetricTable(length=0, entries={(): table.scalar()})
    multisets = {tuple(sorted(alpha + beta)) for alpha, beta in table.entries}
    splits = list(combinations(range(2 * a), a))
    out: Dict[Tuple[int, ...], float] = {}
    for ms in multisets:
        total = 0.0
        for positions in splits:
            alpha = tuple(ms[p] for p in positions)
            beta = tuple(ms[p] for p in range(2 * a) if p not in positions)
            total += table.value(alpha, beta)
        value = total / len(splits)
        if value != 0.0:
            out[ms] = value
    return SymmetricTable(length=2 * a, entries=out)


class KappaConvention(str, enum.Enum):
    """How the chi-squared functional is normalised.

    AS_STATED: first term (m - N!|c|_N^2)^2 and theta_N = (N/2)! binom(N, N/2) / 4.
    VARIANCE_MATCHED: first term (2m - N!|c|_N^2)^2 and theta_N = (N/2)! binom(N, N/2)^2 / 4,
    which vanishes on coefficients whose series is exactly a centred chi-squared(m).
    """

    AS_STATED = "as_stated"
    VARIANCE_MATCHED = "variance_matched"


def theta_n(n: int, convention: KappaConvention = KappaConvention.AS_STATED) -> float:
    if n < 2 or n % 2:
        raise ArgumentError(f"theta_N needs an even N >= 2, got {n}")
    binom = math.comb(n, n // 2)
    if convention is KappaConvention.VARIANCE_MATCHED:
        binom = binom**2
    return 0.25 * factorial(n // 2) * binom


def kappa_chi2(
    c: CoefficientFamily,
    m: int,
    n: int | None = None,
    convention: KappaConvention = KappaConvention.AS_STATED,
) -> float:
    """kappa_{m,N}(c) for a family supported on its top level N (N even)."""
    n = c.degree if n is None else n
    if n % 2:
        raise ArgumentError(f"kappa needs an even level, got N={n}")
    if m < 1:
        raise ArgumentError(f"degrees of freedom must be >= 1, got {m}")
    if c.degree != n or any(len(key) != n for key in c.entries):
        raise ArgumentError("kappa needs coefficients supported on level N only")
    convention = KappaConvention(convention)
    target = m if convention is KappaConvention.AS_STATED else 2 * m
    theta = theta_n(n, convention)
    nfact = factorial(n)

    first = (target - nfact * level_norm(c, n) ** 2) ** 2
    if n == 2:
        mat = c.dense_matrix()
        prod = contraction_matrix(mat)
        sym = 0.5 * (prod + prod.T)
        second = 4 * nfact * float(np.sum((theta * sym - mat) ** 2))
        return first + second

    half = n // 2
    sym = symmetrize_contraction(contraction(c, c, half))
    residual = 0.0
    keys = set(sym.entries) | set(c.levels[n])
    for ms in keys:
        diff = theta * sym.entries.get(ms, 0.0) - c.levels[n].get(ms, 0.0)
        residual += ordered_count(ms) * diff * diff
    second = 4 * nfact * residual

    third = 0.0
    for r in range(1, n):
        if r == half:
            continue
        weight = factorial(2 * n - 2 * r) * factorial(r - 1) ** 2 * math.comb(n - 1, r - 1) ** 4
        third += weight * contraction(c, c, r).norm_sq()
    return first + second + n * n * third
