"""Coefficient files: JSON sparse form and dense CSV for degree 2."""
from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import List

import numpy as np
from pydantic import BaseModel, Field, ValidationError

from src.coeffs.family import CoefficientFamily
from src.coeffs.multi_index import is_canonical
from src.config import settings
from src.errors import ArgumentError, ConfigError

logger = logging.getLogger(__name__)


class CoefficientEntry(BaseModel):
    indices: List[int] = Field(min_length=1)
    value: float


class CoefficientFile(BaseModel):
    schema_version: int = settings.SCHEMA_VERSION
    degree: int = Field(ge=1)
    support: int = Field(ge=1)
    entries: List[CoefficientEntry] = Field(default_factory=list)


def family_from_payload(payload: dict) -> CoefficientFamily:
    try:
        parsed = CoefficientFile.model_validate(payload)
    except ValidationError as exc:
        raise ConfigError(f"invalid coefficient file: {exc}") from exc
    entries = {}
    for entry in parsed.entries:
        key = tuple(entry.indices)
        if not is_canonical(key):
            raise ConfigError(f"coefficient key {entry.indices} is not strictly increasing")
        if key in entries:
            raise ConfigError(f"duplicate coefficient key {entry.indices}")
        entries[key] = entry.value
    try:
        return CoefficientFamily(degree=parsed.degree, support=parsed.support, entries=entries)
    except ArgumentError as exc:
        raise ConfigError(str(exc)) from exc


def load_coefficients(path: str | Path) -> CoefficientFamily:
    """Load a JSON coefficient file, or a dense CSV matrix when the suffix is .csv."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"coefficient file not found: {path}")
    if path.suffix.lower() == ".csv":
        return load_dense_csv(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {path}: {exc}") from exc
    family = family_from_payload(payload)
    logger.info(f"Loaded {family!r} from {path}")
    return family


def load_dense_csv(path: str | Path) -> CoefficientFamily:
    try:
        matrix = np.loadtxt(path, delimiter=",", ndmin=2)
    except ValueError as exc:
        raise ConfigError(f"malformed dense CSV {path}: {exc}") from exc
    try:
        return CoefficientFamily.from_dense(matrix)
    except ArgumentError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def save_coefficients(c: CoefficientFamily, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {"schema_version": settings.SCHEMA_VERSION, **c.to_dict()}
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return path
