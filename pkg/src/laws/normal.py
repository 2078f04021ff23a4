from __future__ import annotations

import math

import numpy as np
from scipy import special, stats

from src.laws.base import SplitLaw


class NormalLaw(SplitLaw):
    kind = "normal"

    def density(self, z):
        return stats.norm.pdf(z)

    def cdf(self, z):
        return stats.norm.cdf(z)

    def abs_moment(self, p: int) -> float:
        return 2.0 ** (p / 2.0) * special.gamma((p + 1) / 2.0) / math.sqrt(math.pi)

    def _draw(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.standard_normal(size)
