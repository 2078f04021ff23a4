"""Command-line entry point: ``homsum <subcommand> ...``.

Exit codes: 0 success, 2 usage or config error, 3 numeric failure,
4 acceptance failure, 1 anything unexpected.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from pydantic import BaseModel, Field, ValidationError, model_validator
from scipy import stats

from src.artifacts import write_json, write_manifest
from src.bounds import evaluate_bounds, load_constants
from src.coeffs.contraction import KappaConvention, kappa_chi2
from src.coeffs.family import CoefficientFamily
from src.coeffs.functionals import coeff_stats
from src.coeffs.io import load_coefficients
from src.config import settings
from src.distances import (
    DistanceReport,
    bootstrap_interval,
    dk_lower,
    kolmogorov_two_sample,
    kolmogorov_vs_cdf,
    tv_kde,
)
from src.errors import ArgumentError, ConfigError, HomsumError
from src.experiments import (
    AcceptanceConfig,
    chi2_target_coeffs,
    load_experiment_config,
    quad_clt_coeffs,
    quad_clt_facts,
    run_acceptance,
    run_experiment,
)
from src.experiments.drivers import centered_chi2_cdf, kde_delta
from src.laws import LawConfig, LawFamily, law_from_config
from src.series import mc_series, read_series_csv, write_series_csv

logger = logging.getLogger(__name__)


class RunConfig(BaseModel):
    """Flags shared by every subcommand."""

    command: str
    seed: Optional[int] = Field(default=None, ge=0)
    workers: int = Field(default_factory=lambda: settings.WORKERS, ge=1)
    out: Path = Field(default_factory=lambda: Path(settings.OUTPUT_DIR))
    constants: Optional[Path] = None


class SimulationConfig(BaseModel):
    """A simulate run: coefficients from a file or a named generator, one law for every variable."""

    coefficients: Optional[str] = None
    quad_clt: Optional[int] = Field(default=None, ge=3)
    chi2: Optional[Dict[str, int]] = None
    law: LawConfig = Field(default_factory=LawConfig)
    draws: int = Field(default=100_000, ge=1)
    seed: int = Field(default_factory=lambda: settings.SEED, ge=0)
    level: Optional[int] = Field(default=None, ge=1)
    with_lambda: bool = False
    output: str = "sample.csv"

    @model_validator(mode="after")
    def _one_source(self) -> SimulationConfig:
        sources = [self.coefficients, self.quad_clt, self.chi2]
        if sum(s is not None for s in sources) != 1:
            raise ValueError("give exactly one of coefficients, quad_clt, chi2")
        return self


def _load_simulation(path: Path) -> SimulationConfig:
    if not path.is_file():
        raise ConfigError(f"simulation config not found: {path}")
    try:
        return SimulationConfig.model_validate(json.loads(path.read_text(encoding="utf-8")))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {path}: {exc}") from exc
    except ValidationError as exc:
        raise ConfigError(f"invalid simulation config {path}: {exc}") from exc


def _simulation_coeffs(config: SimulationConfig, base: Path) -> CoefficientFamily:
    if config.coefficients is not None:
        path = Path(config.coefficients)
        return load_coefficients(path if path.is_absolute() else base / path)
    if config.quad_clt is not None:
        return quad_clt_coeffs(config.quad_clt)
    try:
        return chi2_target_coeffs(config.chi2["m"], config.chi2["L"])
    except KeyError as exc:
        raise ConfigError(f"chi2 generator needs keys m and L, missing {exc}") from exc


def _print_json(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True, default=str))


# --- subcommands -----------------------------------------------------------


def cmd_coeffs(args: argparse.Namespace, run: RunConfig) -> int:
    if (args.path is None) == (args.quad_clt is None):
        raise ArgumentError("give a coefficient file or --quad-clt N, not both")
    c = load_coefficients(args.path) if args.path else quad_clt_coeffs(args.quad_clt)
    payload = coeff_stats(c).to_dict()
    if args.m is not None:
        convention = KappaConvention(args.convention)
        payload["kappa"] = kappa_chi2(c, args.m, convention=convention)
        payload["kappa_convention"] = convention.value
    if args.quad_clt is not None:
        facts = quad_clt_facts(args.quad_clt, c)
        payload["quad_clt"] = facts
        print(f"delta_2^2 <= 2/n: {'pass' if facts['delta_ok'] else 'FAIL'}")
        print(f"1 - 1/ln n <= |c_n|_2^2 <= 1 + 1/ln n: {'pass' if facts['norm_ok'] else 'FAIL'}")
    _print_json(payload)
    if args.save:
        write_json(run.out / "coeffs.json", payload)
    return 0


def cmd_simulate(args: argparse.Namespace, run: RunConfig) -> int:
    config_path = Path(args.config)
    config = _load_simulation(config_path)
    c = _simulation_coeffs(config, config_path.parent)
    seed = config.seed if run.seed is None else run.seed
    law = law_from_config(config.law)
    sample = mc_series(
        c,
        LawFamily.iid(law, c.support),
        config.draws,
        seed,
        n=config.level,
        with_lambda=config.with_lambda,
        workers=run.workers,
    )
    csv_path, meta_path = write_series_csv(sample, run.out / config.output)
    write_manifest(
        run.out / "simulate.manifest.json",
        "simulate",
        {**config.model_dump(mode="json"), "seed": seed},
        [csv_path, meta_path],
    )
    logger.info(f"Simulated {config.draws} draws of {c!r}")
    return 0


def _cdf(name: str) -> Callable:
    if name == "normal":
        return stats.norm.cdf
    if name.startswith("chi2:"):
        try:
            return centered_chi2_cdf(int(name.split(":", 1)[1]))
        except ValueError as exc:
            raise ArgumentError(f"bad chi2 CDF spec {name!r}") from exc
    raise ArgumentError(f"unknown CDF {name!r}; use 'normal' or 'chi2:<m>'")


def cmd_distance(args: argparse.Namespace, run: RunConfig) -> int:
    a = read_series_csv(args.a)
    reports: List[DistanceReport] = []
    if args.cdf:
        if args.b:
            raise ArgumentError("give a second sample or --cdf, not both")
        estimate = kolmogorov_vs_cdf(a, _cdf(args.cdf))
        reports.append(DistanceReport("kolmogorov", estimate, params={"cdf": args.cdf}))
    elif args.b:
        b = read_series_csv(args.b)
        ci = None
        if args.bootstrap:
            ci = bootstrap_interval(
                kolmogorov_two_sample, a, b, args.bootstrap, seed=run.seed, workers=run.workers
            )
        reports.append(DistanceReport("kolmogorov", kolmogorov_two_sample(a, b), ci))
        dk = dk_lower(a, b, args.k, workers=run.workers)
        reports.append(DistanceReport("dk_lower", dk, params={"k": args.k}))
        delta = args.delta if args.delta else kde_delta(a.size, float(a.var()) or 1.0)
        reports.append(DistanceReport("tv_kde", tv_kde(a, b, delta), params={"delta": delta}))
    else:
        raise ArgumentError("distance needs a second sample or --cdf")
    payload = [r.to_dict() for r in reports]
    _print_json(payload)
    if args.save:
        write_json(run.out / "distance.json", payload)
    return 0


def cmd_bounds(args: argparse.Namespace, run: RunConfig) -> int:
    c = load_coefficients(args.path)
    consts = load_constants(run.constants)
    reports = evaluate_bounds(c, consts, r=args.r, epsilon=args.epsilon, eta=args.eta, m=args.m)
    payload = [r.to_dict() for r in reports]
    _print_json(payload)
    if args.save:
        write_json(run.out / "bounds.json", payload)
    return 0


def cmd_experiment(args: argparse.Namespace, run: RunConfig) -> int:
    config = load_experiment_config(args.config)
    updates = {}
    if args.workers is not None:
        updates["workers"] = run.workers
    if run.seed is not None:
        updates["seed"] = run.seed
    config = config.model_copy(update=updates)
    result = run_experiment(config)
    out = Path(config.output_dir) if config.output_dir else run.out
    for path in result.write(out):
        print(path)
    return 0


def cmd_accept(args: argparse.Namespace, run: RunConfig) -> int:
    config = AcceptanceConfig(
        seed=settings.SEED if run.seed is None else run.seed,
        draws=args.draws,
        workers=run.workers,
        criteria=args.criteria or list(range(1, 13)),
        output_dir=str(run.out),
    )
    report = run_acceptance(config)
    for record in report.records:
        status = "pass" if record.passed else ("FAIL" if record.hard else "soft-fail")
        print(f"{record.criterion:>2} {record.name:<22} {status:<9} {record.seconds:8.1f}s")
    report.raise_for_failures()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="homsum", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="Root seed")
    common.add_argument(
        "--workers", type=int, default=None, help="Worker threads (default: HOMSUM_WORKERS)"
    )
    common.add_argument("--out", default=None, help="Output directory")
    common.add_argument("--constants", default=None, help="Universal constants JSON file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", parents=[common], help="Influence and norm statistics")
    p.add_argument("path", nargs="?", help="Coefficient file (JSON or dense CSV)")
    p.add_argument("--quad-clt", type=int, default=None, help="Use the quadratic-CLT family c_n")
    p.add_argument("--m", type=int, default=None, help="Degrees of freedom for kappa")
    p.add_argument(
        "--convention",
        default=KappaConvention.AS_STATED.value,
        choices=[c.value for c in KappaConvention],
    )
    p.add_argument("--save", action="store_true", help="Also write coeffs.json under --out")
    p.set_defaults(handler=cmd_coeffs)

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo sample of S_N(c, Z)")
    p.add_argument("config", help="Simulation config JSON")
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("distance", parents=[common], help="Distances between samples")
    p.add_argument("a", help="Sample CSV")
    p.add_argument("b", nargs="?", help="Second sample CSV")
    p.add_argument("--cdf", default=None, help="'normal' or 'chi2:<m>'")
    p.add_argument("--k", type=int, default=1, help="Smoothness of the d_k dictionary")
    p.add_argument("--delta", type=float, default=None, help="KDE smoothing scale")
    p.add_argument("--bootstrap", type=int, default=0, help="Bootstrap replicates for a CI")
    p.add_argument("--save", action="store_true")
    p.set_defaults(handler=cmd_distance)

    p = sub.add_parser("bounds", parents=[common], help="Evaluate every applicable bound")
    p.add_argument("path", help="Coefficient file")
    p.add_argument("--m", type=int, default=None, help="Chi-squared degrees of freedom")
    p.add_argument("--r", type=float, default=0.25)
    p.add_argument("--epsilon", type=float, default=0.2)
    p.add_argument("--eta", type=float, default=1e-2)
    p.add_argument("--save", action="store_true")
    p.set_defaults(handler=cmd_bounds)

    p = sub.add_parser("experiment", parents=[common], help="Run an experiment config")
    p.add_argument("config", help="Experiment config JSON")
    p.set_defaults(handler=cmd_experiment)

    p = sub.add_parser("accept", parents=[common], help="Run the acceptance suite")
    p.add_argument("--draws", type=int, default=100_000)
    p.add_argument("--criteria", type=int, nargs="*", default=None)
    p.set_defaults(handler=cmd_accept)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    logging.basicConfig(
        level=getattr(logging, settings.LOG_LEVEL),
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
    )
    try:
        run = RunConfig(
            command=args.command,
            seed=args.seed,
            workers=args.workers if args.workers is not None else settings.WORKERS,
            out=Path(args.out) if args.out else Path(settings.OUTPUT_DIR),
            constants=Path(args.constants) if args.constants else None,
        )
    except ValidationError as exc:
        logger.error(f"Invalid arguments: {exc}")
        return ConfigError.exit_code
    try:
        return args.handler(args, run)
    except HomsumError as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        return exc.exit_code
    except Exception:
        logger.exception(f"Unexpected failure in '{args.command}'")
        return 1


if __name__ == "__main__":
    sys.exit(main())
