from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Literal, Optional, Type, Union

from pydantic import BaseModel, Field, ValidationError

from src.errors import ArgumentError, ConfigError
from src.laws.base import MembershipReport, SplitLaw
from src.laws.batch import LawFamily, SampleBatch, sample_batch, sample_block
from src.laws.mixture import GaussMixtureLaw
from src.laws.normal import NormalLaw
from src.laws.rademacher import RademacherLaw
from src.laws.uniform import UniformLaw


class LawConfig(BaseModel):
    kind: Literal["normal", "uniform", "gauss_mixture", "rademacher"] = "normal"
    z_k: float = 0.0
    r: float = Field(default=0.25, gt=0.0, lt=1.0)
    epsilon: float = Field(default=0.2, gt=0.0, lt=1.0)
    moment_p_max: Optional[int] = Field(default=None, ge=2)
    moment_bounds: Optional[Dict[int, float]] = None
    params: Dict[str, Any] = Field(default_factory=dict)


def get_law_classes() -> Dict[str, Type[SplitLaw]]:
    """Return a mapping of law kind -> law class."""
    return {
        "normal": NormalLaw,
        "uniform": UniformLaw,
        "gauss_mixture": GaussMixtureLaw,
        "rademacher": RademacherLaw,
    }


def get_law(kind: str, **kwargs) -> SplitLaw:
    """Instantiate a law by kind."""
    law_class = get_law_classes().get(kind)
    if law_class is None:
        raise ArgumentError(f"No law registered for kind: {kind}")
    return law_class(**kwargs)


def law_from_config(config: Union[LawConfig, dict]) -> SplitLaw:
    if isinstance(config, dict):
        try:
            config = LawConfig.model_validate(config)
        except ValidationError as exc:
            raise ConfigError(f"invalid law config: {exc}") from exc
    try:
        return get_law(
            config.kind,
            center=config.z_k,
            r=config.r,
            epsilon=config.epsilon,
            moment_p_max=config.moment_p_max,
            moment_bounds=config.moment_bounds,
            **config.params,
        )
    except TypeError as exc:
        raise ConfigError(f"bad parameters for {config.kind} law: {exc}") from exc


def load_law(path: Union[str, Path]) -> SplitLaw:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"law config not found: {path}")
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {path}: {exc}") from exc
    return law_from_config(payload)


__all__ = [
    "GaussMixtureLaw",
    "LawConfig",
    "LawFamily",
    "MembershipReport",
    "NormalLaw",
    "RademacherLaw",
    "SampleBatch",
    "SplitLaw",
    "UniformLaw",
    "get_law",
    "get_law_classes",
    "law_from_config",
    "load_law",
    "sample_batch",
    "sample_block",
]
