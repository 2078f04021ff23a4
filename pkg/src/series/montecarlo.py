"""Monte Carlo drivers: samples of S_N(c, Z) (and lambda_N), small-ball estimates."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np
from scipy import stats

from src.coeffs.family import CoefficientFamily
from src.config import settings
from src.errors import ArgumentError
from src.laws.batch import LawFamily, sample_block
from src.rng import Namespace, block_ranges, map_blocks, stream_generator
from src.series.evaluate import (
    covariance_lambda_batch,
    eval_series_batch,
    level2_operator,
)

logger = logging.getLogger(__name__)


@dataclass
class SeriesSample:
    values: np.ndarray
    lam: Optional[np.ndarray] = None
    meta: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not np.all(np.isfinite(self.values)):
            raise ArgumentError("series sample contains non-finite values")
        if self.lam is not None and np.any(self.lam < 0.0):
            raise ArgumentError("lambda values must be non-negative")

    @property
    def draws(self) -> int:
        return int(self.values.shape[0])

    def mean(self) -> float:
        return float(np.mean(self.values))

    def variance(self) -> float:
        return float(np.var(self.values, ddof=1))

    def mean_std_error(self) -> float:
        return math.sqrt(self.variance() / self.draws)

    def variance_std_error(self) -> float:
        """Standard error of the sample variance from the fourth central moment."""
        centred = self.values - self.values.mean()
        m4 = float(np.mean(centred**4))
        var = float(np.mean(centred**2))
        return math.sqrt(max(m4 - var * var, 0.0) / self.draws)


@dataclass
class SmallBallEstimate:
    eta: float
    hits: int
    draws: int
    estimate: float
    ci_low: float
    ci_high: float

    def to_dict(self) -> dict:
        return {
            "eta": self.eta,
            "hits": self.hits,
            "draws": self.draws,
            "estimate": self.estimate,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
        }


def mc_series(
    c: CoefficientFamily,
    family: LawFamily,
    draws: int,
    seed: int,
    n: Optional[int] = None,
    with_lambda: bool = False,
    workers: Optional[int] = None,
    namespace: Namespace = (),
) -> SeriesSample:
    """Sample S_N(c, Z); with ``with_lambda`` the split sampler also yields lambda_N."""
    if family.support < c.support:
        raise ArgumentError(
            f"law family covers {family.support} variables, coefficients need {c.support}"
        )
    level = c.degree if n is None else n
    op = level2_operator(c) if level >= 2 and c.levels[2] else None

    def run_block(b: int, start: int, stop: int):
        z, chi = sample_block(
            family, seed, b, start, stop, with_lambda, namespace, columns=c.support
        )
        values = eval_series_batch(c, z, level, op)
        lam = covariance_lambda_batch(c, z, chi, level, op) if with_lambda else None
        return values, lam

    blocks = block_ranges(draws)
    logger.debug(f"mc_series: {draws} draws in {len(blocks)} blocks, J={c.support}")
    parts = map_blocks(run_block, blocks, workers)
    values = np.concatenate([v for v, _ in parts])
    lam = np.concatenate([part for _, part in parts]) if with_lambda else None
    meta = {
        "schema_version": settings.SCHEMA_VERSION,
        "coeff_digest": c.digest(),
        "law_digest": family.digest(),
        "seed": seed,
        "draws": draws,
        "degree": level,
        "with_lambda": with_lambda,
        "namespace": list(namespace),
    }
    return SeriesSample(values=values, lam=lam, meta=meta)


def wilson_interval(hits: int, draws: int, confidence: float = 0.95):
    ci = stats.binomtest(hits, draws).proportion_ci(confidence_level=confidence, method="wilson")
    return float(ci.low), float(ci.high)


def small_ball_curve(lam: np.ndarray, etas: Sequence[float]) -> List[SmallBallEstimate]:
    """P(lambda_N <= eta) with Wilson 95% intervals for each eta."""
    out = []
    draws = int(lam.shape[0])
    for eta in etas:
        if eta < 0.0:
            raise ArgumentError(f"eta must be >= 0, got {eta}")
        hits = int(np.count_nonzero(lam <= eta))
        low, high = wilson_interval(hits, draws)
        out.append(SmallBallEstimate(float(eta), hits, draws, hits / draws, low, high))
        if hits == 0:
            logger.warning(f"No draws with lambda <= {eta}; estimate is 0")
    return out


def mc_small_ball(
    c: CoefficientFamily,
    family: LawFamily,
    eta: float,
    draws: int,
    seed: int,
    n: Optional[int] = None,
    workers: Optional[int] = None,
    namespace: Namespace = (),
) -> SmallBallEstimate:
    if eta < 0.0:
        raise ArgumentError(f"eta must be >= 0, got {eta}")
    sample = mc_series(
        c, family, draws, seed, n, with_lambda=True, workers=workers, namespace=namespace
    )
    return small_ball_curve(sample.lam, [eta])[0]


def mc_indicator_lower_tail(
    c: CoefficientFamily,
    p_chi: float,
    x: float,
    draws: int,
    seed: int,
    n: Optional[int] = None,
    workers: Optional[int] = None,
    namespace: Namespace = (),
) -> SmallBallEstimate:
    """P(S_N(c^2, chi) <= x) for i.i.d. Bernoulli(p_chi) indicators chi_j."""
    if not 0.0 < p_chi < 1.0:
        raise ArgumentError(f"p_chi must lie in (0, 1), got {p_chi}")
    level = c.degree if n is None else n
    squared = c.squared()

    def run_block(b: int, start: int, stop: int) -> int:
        chi = np.empty((stop - start, c.support))
        for k in range(c.support):
            chi[:, k] = stream_generator(seed, k, b, namespace).random(stop - start) < p_chi
        return int(np.count_nonzero(eval_series_batch(squared, chi, level) <= x))

    hits = sum(map_blocks(run_block, block_ranges(draws), workers))
    low, high = wilson_interval(hits, draws)
    return SmallBallEstimate(float(x), hits, draws, hits / draws, low, high)
