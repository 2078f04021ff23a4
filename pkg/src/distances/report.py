from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from src.config import settings
from src.errors import ArgumentError
from src.rng import map_blocks, stream_generator

logger = logging.getLogger(__name__)

BOOTSTRAP_STREAM = 0


@dataclass
class DistanceReport:
    """One distance estimate between two samples (or a sample and a CDF)."""

    kind: str
    estimate: float
    ci: Optional[Tuple[float, float]] = None
    params: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.estimate < 0.0:
            raise ArgumentError(f"{self.kind} estimate must be >= 0, got {self.estimate}")

    def to_dict(self) -> dict:
        return {
            "schema_version": settings.SCHEMA_VERSION,
            "kind": self.kind,
            "estimate": self.estimate,
            "ci": list(self.ci) if self.ci is not None else None,
            "params": dict(self.params),
        }


def bootstrap_interval(
    statistic: Callable[[np.ndarray, np.ndarray], float],
    a,
    b,
    replicates: int = 200,
    level: float = 0.95,
    seed: int | None = None,
    workers: int | None = None,
) -> Tuple[float, float]:
    """Percentile interval from resampling both samples with replacement.

    Replicate i uses its own generator, so the interval does not depend on the
    worker count.
    """
    if replicates < 2:
        raise ArgumentError(f"need at least 2 bootstrap replicates, got {replicates}")
    if not 0.0 < level < 1.0:
        raise ArgumentError(f"confidence level must lie in (0, 1), got {level}")
    a_arr = np.asarray(a, dtype=float).ravel()
    b_arr = np.asarray(b, dtype=float).ravel()
    root = settings.SEED if seed is None else seed

    def replicate(i: int, _start: int, _stop: int) -> float:
        rng = stream_generator(root, BOOTSTRAP_STREAM, i, namespace=(7,))
        ra = a_arr[rng.integers(0, a_arr.size, a_arr.size)]
        rb = b_arr[rng.integers(0, b_arr.size, b_arr.size)]
        return statistic(ra, rb)

    values = np.array(map_blocks(replicate, [(i, i, i + 1) for i in range(replicates)], workers))
    tail = 0.5 * (1.0 - level)
    low, high = np.quantile(values, [tail, 1.0 - tail])
    logger.debug(f"Bootstrap over {replicates} replicates: [{low:.4g}, {high:.4g}]")
    return float(low), float(high)
