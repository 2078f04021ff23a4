from __future__ import annotations

import math
from typing import List, Tuple

import numpy as np
from scipy import stats

from src.laws.base import SplitLaw

HALF_WIDTH = math.sqrt(3.0)


class UniformLaw(SplitLaw):
    """Uniform on [-sqrt(3), sqrt(3)]; constant density 1/(2 sqrt(3))."""

    kind = "uniform"
    _dist = stats.uniform(loc=-HALF_WIDTH, scale=2.0 * HALF_WIDTH)

    def density(self, z):
        return self._dist.pdf(z)

    def cdf(self, z):
        return self._dist.cdf(z)

    def abs_moment(self, p: int) -> float:
        return HALF_WIDTH**p / (p + 1)

    def support(self) -> Tuple[float, float]:
        return -HALF_WIDTH, HALF_WIDTH

    def breakpoints(self) -> List[float]:
        return [0.0]

    def _draw(self, rng: np.random.Generator, size: int) -> np.ndarray:
        # inverse CDF
        return -HALF_WIDTH + 2.0 * HALF_WIDTH * rng.random(size)
