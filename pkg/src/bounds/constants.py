"""Universal constants, the two generic constants built from them, and bound reports.

The universal constants are known to exist but are never pinned down, so
every bound that uses them is a template: it is evaluated with whatever the
caller supplies (default 1) and its report says so.
"""
from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Union

from pydantic import BaseModel, Field, ValidationError

from src.coeffs.family import factorial
from src.errors import ArgumentError, ConfigError

logger = logging.getLogger(__name__)


class UniversalConstants(BaseModel):
    p_star: float = Field(default=1.0, ge=1.0)
    C: float = Field(default=1.0, gt=0.0)
    q1: int = Field(default=1, ge=1)
    q2: int = Field(default=1, ge=1)
    q3: int = Field(default=1, ge=1)
    q4: int = Field(default=1, ge=1)
    p: int = Field(default=1, ge=1)  # moment order whose bound M_p enters C_N(r, eps)
    m_p: float = Field(default=1.0, ge=1.0)
    source: str = "default"


def load_constants(path: Union[str, Path, None]) -> UniversalConstants:
    if path is None:
        return UniversalConstants()
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ConfigError(f"constants file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"constants file {path} is not valid JSON: {exc}") from exc
    try:
        return UniversalConstants(**{"source": str(path), **payload})
    except (ValidationError, TypeError) as exc:
        raise ConfigError(f"invalid constants in {path}: {exc}") from exc


@dataclass
class BoundReport:
    name: str
    value: float
    inputs: Dict[str, object] = field(default_factory=dict)
    flags: Dict[str, bool] = field(default_factory=dict)
    template: bool = False
    constants_source: str = ""

    def __post_init__(self) -> None:
        if not self.value >= 0.0:
            raise ArgumentError(f"bound {self.name} evaluated to {self.value}")

    @property
    def constants_assumed(self) -> bool:
        return self.template

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "value": self.value,
            "inputs": dict(self.inputs),
            "flags": dict(self.flags),
            "template": self.template,
            "constants_assumed": self.constants_assumed,
            "constants_source": self.constants_source,
        }


def _check_r_eps(r: float, epsilon: float) -> None:
    if not 0.0 < r < 1.0:
        raise ArgumentError(f"r must lie in (0, 1), got {r}")
    if not 0.0 < epsilon <= 1.0:
        raise ArgumentError(f"epsilon must lie in (0, 1], got {epsilon}")


def c_small(n: int, r: float, epsilon: float) -> float:
    """c_N(r, eps) = (eps sqrt(r) / sqrt(2))^{2N} / N."""
    if n < 1:
        raise ArgumentError(f"N must be >= 1, got {n}")
    _check_r_eps(r, epsilon)
    return (epsilon * math.sqrt(r) / math.sqrt(2.0)) ** (2 * n) / n


def c_big(n: int, r: float, epsilon: float, consts: UniversalConstants) -> float:
    """C_N(r, eps) = C (N!)^{q1} e^{q2 M_p} r^{-q3} eps^{-q4}."""
    if n < 1:
        raise ArgumentError(f"N must be >= 1, got {n}")
    _check_r_eps(r, epsilon)
    return (
        consts.C
        * factorial(n) ** consts.q1
        * math.exp(consts.q2 * consts.m_p)
        * r ** (-consts.q3)
        * epsilon ** (-consts.q4)
    )
