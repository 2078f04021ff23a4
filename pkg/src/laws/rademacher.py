from __future__ import annotations

import numpy as np

from src.errors import ArgumentError
from src.laws.base import SplitLaw


class RademacherLaw(SplitLaw):
    """Symmetric +-1 law. Centred with unit variance but without a density."""

    kind = "rademacher"
    discrete = True

    def density(self, z):
        raise ArgumentError("rademacher law has no density")

    def cdf(self, z):
        z_arr = np.asarray(z, dtype=float)
        return np.where(z_arr < -1.0, 0.0, np.where(z_arr < 1.0, 0.5, 1.0))

    def abs_moment(self, p: int) -> float:
        return 1.0

    def _draw(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return np.where(rng.random(size) < 0.5, -1.0, 1.0)
