"""Monte Carlo experiments: quadratic CLT, chi-squared limit and the variance estimator.

Each driver returns an ExperimentResult with one row per n (or block length).
Random streams are namespaced by (experiment id, n), so rerunning one value
of n on its own reproduces the corresponding row.
"""
from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Literal, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel, Field, ValidationError
from scipy import stats

from src.artifacts import write_csv, write_manifest
from src.bounds import (
    UniversalConstants,
    chi2_bound,
    quad_clt_templates,
    tv_invariance_template,
)
from src.coeffs.contraction import KappaConvention, kappa_chi2
from src.coeffs.family import CoefficientFamily
from src.coeffs.functionals import level_norm
from src.config import settings
from src.distances import (
    dk_lower,
    dkw_threshold,
    kolmogorov_two_sample,
    kolmogorov_vs_cdf,
    tv_kde,
    two_sample_threshold,
)
from src.errors import ArgumentError, ConfigError
from src.experiments.coefficients import (
    PhiGrid,
    abar_facts,
    chi2_target_coeffs,
    quad_clt_coeffs,
    quad_clt_facts,
)
from src.experiments.phi import phi_family
from src.laws import LawConfig, LawFamily, law_from_config, sample_block
from src.laws.base import SplitLaw
from src.laws.normal import NormalLaw
from src.rng import Namespace, block_ranges, map_blocks, stream_generator
from src.series import SeriesSample, mc_series

logger = logging.getLogger(__name__)

QUAD_CLT_ID = 1
CHI2_ID = 2
VARIANCE_ID = 3
I2_REFERENCE_ID = 4
GAUSS_REFERENCE_ID = 5
CHI2_REFERENCE_ID = 6

LawLike = Union[SplitLaw, LawConfig, dict, None]


class ExperimentConfig(BaseModel):
    experiment: Literal["quad_clt", "chi2", "variance"]
    n_list: List[int] = Field(default_factory=lambda: [64, 256, 1024])
    L_list: List[int] = Field(default_factory=lambda: [8, 32, 128])
    m: int = Field(default=2, ge=1)
    law: LawConfig = Field(default_factory=LawConfig)
    draws: int = Field(default=100_000, ge=1)
    seed: int = Field(default_factory=lambda: settings.SEED, ge=0)
    reference_grid: int = Field(default=512, ge=16)
    output_dir: Optional[str] = None
    workers: Optional[int] = Field(default=None, ge=1)


def load_experiment_config(path: Union[str, Path]) -> ExperimentConfig:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"experiment config not found: {path}")
    try:
        return ExperimentConfig.model_validate(json.loads(path.read_text(encoding="utf-8")))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {path}: {exc}") from exc
    except ValidationError as exc:
        raise ConfigError(f"invalid experiment config {path}: {exc}") from exc


@dataclass
class ExperimentResult:
    experiment: str
    params: Dict[str, object]
    columns: List[str]
    rows: List[Dict[str, object]] = field(default_factory=list)
    seeds: Dict[str, object] = field(default_factory=dict)

    def column(self, name: str) -> list:
        if name not in self.columns:
            raise ArgumentError(f"{self.experiment} has no column {name!r}")
        return [row[name] for row in self.rows]

    def write(self, out_dir: Union[str, Path]) -> List[Path]:
        """<experiment>.csv plus <experiment>.manifest.json listing it."""
        out_dir = Path(out_dir)
        csv_path = write_csv(
            out_dir / f"{self.experiment}.csv",
            self.columns,
            ([row[c] for c in self.columns] for row in self.rows),
        )
        manifest = write_manifest(
            out_dir / f"{self.experiment}.manifest.json",
            self.experiment,
            {**self.params, "seeds": self.seeds},
            [csv_path],
        )
        return [csv_path, manifest]


def _law(law: LawLike) -> SplitLaw:
    if law is None:
        return NormalLaw()
    if isinstance(law, SplitLaw):
        return law
    return law_from_config(law)


def kde_delta(draws: int, variance: float) -> float:
    """Smoothing scale for tv_kde: variance * draws^(-2/5)."""
    return variance * draws ** (-0.4)


def reference_sample(
    draw: Callable[[np.random.Generator, int], np.ndarray],
    draws: int,
    seed: int,
    namespace: Namespace,
    workers: Optional[int] = None,
) -> np.ndarray:
    """Exact draws from a limit law, blocked like every other sample."""

    def run_block(b: int, start: int, stop: int) -> np.ndarray:
        return draw(stream_generator(seed, 0, b, namespace), stop - start)

    return np.concatenate(map_blocks(run_block, block_ranges(draws), workers))


def _moments(sample: SeriesSample, target: float) -> dict:
    se = sample.variance_std_error()
    return {
        "mean": sample.mean(),
        "mean_se": sample.mean_std_error(),
        "variance": sample.variance(),
        "variance_se": se,
        "target_variance": target,
        "isometry_z": (sample.variance() - target) / se if se > 0.0 else 0.0,
    }


QUAD_CLT_COLUMNS = [
    "n",
    "draws",
    "mean",
    "mean_se",
    "variance",
    "variance_se",
    "target_variance",
    "isometry_z",
    "kolmogorov",
    "dkw_threshold",
    "dk1_lower",
    "tv_kde",
    "tv_invariance_template",
    "rate_invariance",
    "rate_gaussian",
    "delta_ok",
    "norm_ok",
]


def run_quadratic_clt(
    n_list: Sequence[int],
    law: LawLike = None,
    draws: int = 100_000,
    seed: int = 42,
    workers: Optional[int] = None,
    consts: Optional[UniversalConstants] = None,
) -> ExperimentResult:
    """S_n = S_2(c_n, Z) against the Gaussian N(0, 2|c_n|_2^2) for each n."""
    law = _law(law)
    consts = consts or UniversalConstants()
    result = ExperimentResult(
        experiment="quad_clt",
        params={"n_list": list(n_list), "law": law.to_config(), "draws": draws},
        columns=QUAD_CLT_COLUMNS,
        seeds={"seed": seed, "namespace": [QUAD_CLT_ID]},
    )
    logger.info(f"quad_clt: n={list(n_list)}, law={law.kind}, draws={draws}, seed={seed}")
    for n in n_list:
        c = quad_clt_coeffs(n)
        sample = mc_series(
            c, LawFamily.iid(law, n), draws, seed, workers=workers, namespace=(QUAD_CLT_ID, n)
        )
        target = isometry_variance(c)
        sd = math.sqrt(target)
        gauss = reference_sample(
            lambda g, size: sd * g.standard_normal(size),
            draws,
            seed,
            (GAUSS_REFERENCE_ID, n),
            workers,
        )
        facts = quad_clt_facts(n, c)
        rates = quad_clt_templates(n, consts)
        row = {
            "n": n,
            "draws": draws,
            **_moments(sample, target),
            "kolmogorov": kolmogorov_vs_cdf(sample.values, stats.norm(scale=sd).cdf),
            "dkw_threshold": dkw_threshold(draws),
            "dk1_lower": dk_lower(sample.values, gauss, 1, workers=workers),
            "tv_kde": tv_kde(sample.values, gauss, kde_delta(draws, target)),
            "tv_invariance_template": tv_invariance_template(c, 2, consts),
            "rate_invariance": rates["invariance"],
            "rate_gaussian": rates["gaussian_limit"],
            "delta_ok": facts["delta_ok"],
            "norm_ok": facts["norm_ok"],
        }
        logger.info(f"quad_clt n={n}: kolmogorov={row['kolmogorov']:.4f}")
        result.rows.append(row)
    return result


CHI2_COLUMNS = [
    "L",
    "m",
    "draws",
    "mean",
    "mean_se",
    "variance",
    "variance_se",
    "target_variance",
    "isometry_z",
    "kolmogorov",
    "dk1_lower",
    "kappa",
    "kappa_as_stated",
    "chi2_bound",
    "dk1_below_bound",
]


def centered_chi2_cdf(m: int) -> Callable:
    """CDF of F(m) = G_1^2 + ... + G_m^2 - m."""
    dist = stats.chi2(m)
    return lambda x: dist.cdf(np.asarray(x) + m)


def run_chi2(
    m: int,
    lengths: Sequence[int],
    law: LawLike = None,
    draws: int = 100_000,
    seed: int = 42,
    workers: Optional[int] = None,
) -> ExperimentResult:
    """Block sums S_2(c, Z) against the centred chi-squared F(m) for each block length L."""
    law = _law(law)
    result = ExperimentResult(
        experiment="chi2",
        params={"m": m, "L_list": list(lengths), "law": law.to_config(), "draws": draws},
        columns=CHI2_COLUMNS,
        seeds={"seed": seed, "namespace": [CHI2_ID]},
    )
    logger.info(f"chi2: m={m}, L={list(lengths)}, law={law.kind}, draws={draws}, seed={seed}")
    cdf = centered_chi2_cdf(m)
    for length in lengths:
        c = chi2_target_coeffs(m, length)
        sample = mc_series(
            c,
            LawFamily.iid(law, m * length),
            draws,
            seed,
            workers=workers,
            namespace=(CHI2_ID, length),
        )
        reference = reference_sample(
            lambda g, size: g.chisquare(m, size) - m,
            draws,
            seed,
            (CHI2_REFERENCE_ID, length),
            workers,
        )
        bound = chi2_bound(c, m, convention=KappaConvention.VARIANCE_MATCHED)
        dk1 = dk_lower(sample.values, reference, 1, workers=workers)
        row = {
            "L": length,
            "m": m,
            "draws": draws,
            **_moments(sample, 2.0 * m * (1.0 - 1.0 / length)),
            "kolmogorov": kolmogorov_vs_cdf(sample.values, cdf),
            "dk1_lower": dk1,
            "kappa": kappa_chi2(c, m, convention=KappaConvention.VARIANCE_MATCHED),
            "kappa_as_stated": kappa_chi2(c, m),
            "chi2_bound": bound,
            "dk1_below_bound": dk1 <= bound,
        }
        logger.info(f"chi2 L={length}: kolmogorov={row['kolmogorov']:.4f}, bound={bound:.4f}")
        result.rows.append(row)
    return result


def variance_estimator_parts(
    grid: PhiGrid, z: np.ndarray, cbar_prime: Optional[np.ndarray] = None
):
    """(direct, V', V'') for each row of z.

    direct is sum_i (X_i^2 - E X_i^2) with X = z a / sqrt(n); V' is S_2 of the
    off-diagonal cbar_n and V'' = sum_j cbar_n(j, j) (Z_j^2 - 1).
    """
    z = np.atleast_2d(np.asarray(z, dtype=float))
    if z.shape[1] != grid.n:
        raise ArgumentError(f"expected {grid.n} columns, got {z.shape[1]}")
    x = z @ grid.a / math.sqrt(grid.n)
    direct = np.sum(x * x, axis=1) - float(np.sum(grid.second_moments()))
    if cbar_prime is None:
        cbar_prime = grid.cbar_prime
    prime = np.sum((z @ cbar_prime) * z, axis=1)
    second = (z * z - 1.0) @ np.diag(grid.cbar)
    return direct, prime, second


def variance_estimator_sample(
    n: int,
    law: LawLike = None,
    draws: int = 100_000,
    seed: int = 42,
    workers: Optional[int] = None,
) -> SeriesSample:
    """Sample of V_n; meta records the largest per-draw gap between the two evaluation paths."""
    law = _law(law)
    grid = PhiGrid(n)
    family = LawFamily.iid(law, n)
    namespace = (VARIANCE_ID, n)
    cbar_prime = grid.cbar_prime

    def run_block(b: int, start: int, stop: int):
        z, _ = sample_block(family, seed, b, start, stop, False, namespace)
        direct, prime, second = variance_estimator_parts(grid, z, cbar_prime)
        return direct, float(np.max(np.abs(direct - (prime + second))))

    parts = map_blocks(run_block, block_ranges(draws), workers)
    values = np.concatenate([v for v, _ in parts])
    gap = max(g for _, g in parts)
    logger.debug(f"variance estimator n={n}: decomposition gap {gap:.3e}")
    meta = {
        "schema_version": settings.SCHEMA_VERSION,
        "law_digest": family.digest(),
        "seed": seed,
        "draws": draws,
        "n": n,
        "namespace": list(namespace),
        "decomposition_gap": gap,
    }
    return SeriesSample(values=values, meta=meta)


def i2_phi_reference(
    grid_n: int = 512,
    draws: int = 100_000,
    seed: int = 42,
    workers: Optional[int] = None,
) -> SeriesSample:
    """Off-diagonal midpoint discretisation of the double Wiener integral of phi."""
    if grid_n < 16:
        raise ArgumentError(f"grid_n must be >= 16, got {grid_n}")
    c = phi_family(grid_n)
    return mc_series(
        c,
        LawFamily.iid(NormalLaw(), grid_n),
        draws,
        seed,
        workers=workers,
        namespace=(I2_REFERENCE_ID, grid_n),
    )


def isometry_variance(c: CoefficientFamily) -> float:
    """Var S_2(c, G) = 2 |c|_2^2."""
    return 2.0 * level_norm(c, 2) ** 2


VARIANCE_COLUMNS = [
    "n",
    "draws",
    "mean",
    "mean_se",
    "kolmogorov_two_sample",
    "two_sample_threshold",
    "tv_kde",
    "decomposition_gap",
    "norm_lower_ok",
    "contraction_lower_ok",
    "statement_proviso",
    "proof_proviso",
    "delta_ratio",
    "diagonal_ratio",
    "contraction_ratio",
]


def run_variance_experiment(
    n_list: Sequence[int],
    law: LawLike = None,
    draws: int = 100_000,
    seed: int = 42,
    reference_grid: int = 512,
    workers: Optional[int] = None,
) -> ExperimentResult:
    """V_n against the I_2(phi) reference for each n."""
    law = _law(law)
    result = ExperimentResult(
        experiment="variance",
        params={
            "n_list": list(n_list),
            "law": law.to_config(),
            "draws": draws,
            "reference_grid": reference_grid,
        },
        columns=VARIANCE_COLUMNS,
        seeds={"seed": seed, "namespace": [VARIANCE_ID], "reference": [I2_REFERENCE_ID]},
    )
    logger.info(f"variance: n={list(n_list)}, law={law.kind}, draws={draws}, seed={seed}")
    reference = i2_phi_reference(reference_grid, draws, seed, workers).values
    delta = kde_delta(draws, float(np.var(reference)))
    for n in n_list:
        sample = variance_estimator_sample(n, law, draws, seed, workers)
        facts = abar_facts(n)
        ratios = facts.ratios()
        row = {
            "n": n,
            "draws": draws,
            "mean": sample.mean(),
            "mean_se": sample.mean_std_error(),
            "kolmogorov_two_sample": kolmogorov_two_sample(sample.values, reference),
            "two_sample_threshold": two_sample_threshold(draws, draws, 0.01),
            "tv_kde": tv_kde(sample.values, reference, delta),
            "decomposition_gap": sample.meta["decomposition_gap"],
            "norm_lower_ok": facts.norm_lower_ok,
            "contraction_lower_ok": facts.contraction_lower_ok,
            "statement_proviso": facts.statement_proviso,
            "proof_proviso": facts.proof_proviso,
            "delta_ratio": ratios["delta_ratio"],
            "diagonal_ratio": ratios["diagonal_ratio"],
            "contraction_ratio": ratios["contraction_ratio"],
        }
        logger.info(f"variance n={n}: ks={row['kolmogorov_two_sample']:.4f}")
        result.rows.append(row)
    return result


def get_experiment_runners() -> Dict[str, Callable[[ExperimentConfig], ExperimentResult]]:
    """Return a mapping of experiment id -> runner taking an ExperimentConfig."""
    return {
        "quad_clt": lambda cfg: run_quadratic_clt(
            cfg.n_list, cfg.law, cfg.draws, cfg.seed, cfg.workers
        ),
        "chi2": lambda cfg: run_chi2(cfg.m, cfg.L_list, cfg.law, cfg.draws, cfg.seed, cfg.workers),
        "variance": lambda cfg: run_variance_experiment(
            cfg.n_list, cfg.law, cfg.draws, cfg.seed, cfg.reference_grid, cfg.workers
        ),
    }


def run_experiment(config: Union[ExperimentConfig, dict]) -> ExperimentResult:
    if isinstance(config, dict):
        try:
            config = ExperimentConfig.model_validate(config)
        except ValidationError as exc:
            raise ConfigError(f"invalid experiment config: {exc}") from exc
    return get_experiment_runners()[config.experiment](config)
