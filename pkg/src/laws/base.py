from __future__ import annotations

import hashlib
import json
import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

from src.config import settings
from src.errors import ArgumentError, NumericError
from src.laws.bump import bump_support, checked_quad, mass_m, psi, sample_bump

logger = logging.getLogger(__name__)

MOMENT_TOL = 1e-8


@dataclass
class MembershipReport:
    kind: str
    center: float
    r: float
    epsilon: float
    has_density: bool
    mass: float = float("nan")
    mean: float = float("nan")
    variance: float = float("nan")
    moment_norms: Dict[int, float] = field(default_factory=dict)
    moment_bounds: Dict[int, float] = field(default_factory=dict)
    min_margin: float = float("nan")  # min over the grid of p_Z - eps psi_r
    epsilon_max: float = float("nan")  # largest eps for which the lower bound holds
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "center": self.center,
            "r": self.r,
            "epsilon": self.epsilon,
            "has_density": self.has_density,
            "mass": self.mass,
            "mean": self.mean,
            "variance": self.variance,
            "moment_norms": {str(p): v for p, v in self.moment_norms.items()},
            "moment_bounds": {str(p): v for p, v in self.moment_bounds.items()},
            "min_margin": self.min_margin,
            "epsilon_max": self.epsilon_max,
            "passed": self.passed,
            "failures": list(self.failures),
        }


class SplitLaw(ABC):
    """A centred, unit-variance law on the line with its splitting data (z_k, r, eps).

    Subclasses supply the closed-form density, CDF, absolute moments and a
    direct sampler. Splitting writes Z = chi U + (1 - chi) V with
    P(chi = 1) = eps m(r), U the bump law around z_k, and V the normalised
    remainder (p_Z - eps psi_r) / (1 - eps m(r)).
    """

    kind: str = ""
    discrete: bool = False

    def __init__(
        self,
        center: float = 0.0,
        r: float = 0.25,
        epsilon: float = 0.2,
        moment_p_max: Optional[int] = None,
        moment_bounds: Optional[Mapping[int, float]] = None,
    ) -> None:
        if not 0.0 < r < 1.0:
            raise ArgumentError(f"r must lie in (0, 1), got {r}")
        if not 0.0 < epsilon < 1.0:
            raise ArgumentError(f"epsilon must lie in (0, 1), got {epsilon}")
        self.center = float(center)
        self.r = float(r)
        self.epsilon = float(epsilon)
        self.moment_p_max = moment_p_max or settings.MOMENT_P_MAX
        if self.moment_p_max < 2:
            raise ArgumentError(f"moment_p_max must be >= 2, got {self.moment_p_max}")
        self.moment_bounds = dict(moment_bounds) if moment_bounds else None
        self._split_report: Optional[Tuple[tuple, MembershipReport]] = None

    # --- closed forms supplied by each law ----------------------------------

    @abstractmethod
    def density(self, z):
        """p_Z(z), vectorised."""

    @abstractmethod
    def cdf(self, z):
        """P(Z <= z), vectorised."""

    @abstractmethod
    def abs_moment(self, p: int) -> float:
        """E|Z|^p."""

    @abstractmethod
    def _draw(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Direct draws from p_Z."""

    def support(self) -> Tuple[float, float]:
        return -math.inf, math.inf

    def params(self) -> dict:
        return {}

    # --- derived quantities -------------------------------------------------

    @property
    def bernoulli_p(self) -> float:
        return self.epsilon * mass_m(self.r)

    def moment_norm(self, p: int) -> float:
        return self.abs_moment(p) ** (1.0 / p)

    def resolved_moment_bounds(self) -> Dict[int, float]:
        """The (M_p) used by bounds: user values, else the exact norms."""
        if self.moment_bounds:
            return dict(self.moment_bounds)
        return {p: self.moment_norm(p) for p in range(1, self.moment_p_max + 1)}

    # --- sampling -----------------------------------------------------------

    def sample_direct(self, rng: np.random.Generator, size: int) -> np.ndarray:
        if size < 0:
            raise ArgumentError(f"sample size must be >= 0, got {size}")
        return self._draw(rng, size)

    def split_report(self) -> MembershipReport:
        """Membership at the current (z_k, r, eps), validated once and cached.

        Raises when eps psi_r exceeds p_Z somewhere or eps m(r) >= 1, since the
        remainder V is then not a probability law.
        """
        key = (self.center, self.r, self.epsilon)
        cached = self._split_report
        if cached is None or cached[0] != key:
            cached = (key, self.validate_membership())
            self._split_report = cached
        report = cached[1]
        if report.min_margin < -1e-12 or report.epsilon * mass_m(report.r) >= 1.0:
            raise ArgumentError(
                f"{self.kind} law cannot be split at r={report.r}, eps={report.epsilon}: "
                f"largest admissible eps is {report.epsilon_max:.6g}"
            )
        return report

    def sample_split(
        self, rng: np.random.Generator, size: int
    ) -> Tuple[np.ndarray, np.ndarray]:
        """Draw (chi, z) pairs; the marginal of z is p_Z."""
        if self.discrete:
            raise ArgumentError(f"{self.kind} law has no density and cannot be split")
        self.split_report()
        chi = (rng.random(size) < self.bernoulli_p).astype(np.int8)
        z = np.empty(size)
        n_u = int(chi.sum())
        z[chi == 1] = sample_bump(rng, n_u, self.r, self.center)
        z[chi == 0] = self._sample_remainder(rng, size - n_u)
        return chi, z

    def _sample_remainder(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """V by rejection against p_Z, accepting with 1 - eps psi_r / p_Z."""
        budget = settings.REJECTION_BUDGET
        out = np.empty(size)
        pending = np.arange(size)
        rounds = 0
        while pending.size:
            rounds += 1
            if rounds > budget:
                raise NumericError(f"remainder sampler exceeded {budget} proposals per draw")
            proposal = self._draw(rng, pending.size)
            dens = self.density(proposal)
            bump = self.epsilon * psi(self.r, (proposal - self.center) ** 2)
            with np.errstate(divide="ignore", invalid="ignore"):
                accept_p = np.where(dens > 0.0, 1.0 - bump / dens, 1.0)
            accept = rng.random(pending.size) < accept_p
            out[pending[accept]] = proposal[accept]
            pending = pending[~accept]
        return out

    # --- validation ---------------------------------------------------------

    def validate_membership(
        self,
        moment_bounds: Optional[Mapping[int, float]] = None,
        r: Optional[float] = None,
        epsilon: Optional[float] = None,
    ) -> MembershipReport:
        """Check centring, unit variance, moment bounds and eps psi_r <= p_Z.

        Failures are collected in the report; nothing is raised.
        """
        r = self.r if r is None else float(r)
        epsilon = self.epsilon if epsilon is None else float(epsilon)
        report = MembershipReport(
            kind=self.kind,
            center=self.center,
            r=r,
            epsilon=epsilon,
            has_density=not self.discrete,
        )
        bounds = dict(moment_bounds) if moment_bounds else self.resolved_moment_bounds()
        report.moment_bounds = bounds
        for p in range(1, self.moment_p_max + 1):
            report.moment_norms[p] = self.moment_norm(p)
            if p in bounds and report.moment_norms[p] > bounds[p] * (1.0 + 1e-12):
                report.failures.append(f"||Z||_{p} = {report.moment_norms[p]:.6g} > M_{p}")

        if self.discrete:
            report.mean = 0.0
            report.variance = self.abs_moment(2)
            report.failures.append("law has no density")
            logger.warning(f"{self.kind} law fails membership: no density")
            return report

        lo, hi = self.support()
        report.mass = self._integrate(lambda z: float(self.density(z)), lo, hi)
        report.mean = self._integrate(lambda z: z * float(self.density(z)), lo, hi)
        report.variance = self._integrate(lambda z: z * z * float(self.density(z)), lo, hi)
        if abs(report.mass - 1.0) > MOMENT_TOL:
            report.failures.append(f"density integrates to {report.mass:.12g}")
        if abs(report.mean) > MOMENT_TOL:
            report.failures.append(f"mean {report.mean:.3g} is not 0")
        if abs(report.variance - 1.0) > MOMENT_TOL:
            report.failures.append(f"variance {report.variance:.12g} is not 1")

        grid = np.linspace(*bump_support(r, self.center), settings.GRID_POINTS)
        dens = self.density(grid)
        bump = psi(r, (grid - self.center) ** 2)
        report.min_margin = float(np.min(dens - epsilon * bump))
        positive = bump > 0.0
        report.epsilon_max = float(np.min(dens[positive] / bump[positive]))
        if report.min_margin < -1e-12:
            report.failures.append(
                f"eps psi_r exceeds p_Z (eps={epsilon}, "
                f"largest admissible {report.epsilon_max:.6g})"
            )
        if epsilon * mass_m(r) >= 1.0:
            report.failures.append("eps m(r) >= 1")
        if report.failures:
            logger.warning(f"{self.kind} law fails membership: {report.failures}")
        return report

    def _integrate(self, fn, lo: float, hi: float) -> float:
        points = self.breakpoints()
        if math.isfinite(lo) and math.isfinite(hi) and points:
            return checked_quad(fn, lo, hi, points=points)
        return checked_quad(fn, lo, hi)

    def breakpoints(self) -> List[float]:
        return []

    # --- identity -----------------------------------------------------------

    def to_config(self) -> dict:
        return {
            "kind": self.kind,
            "z_k": self.center,
            "r": self.r,
            "epsilon": self.epsilon,
            "moment_p_max": self.moment_p_max,
            "moment_bounds": (
                {str(p): v for p, v in self.moment_bounds.items()} if self.moment_bounds else None
            ),
            "params": self.params(),
        }

    def digest(self) -> str:
        payload = json.dumps(self.to_config(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    def __repr__(self) -> str:
        return f"<{type(self).__name__} z_k={self.center} r={self.r} eps={self.epsilon}>"
