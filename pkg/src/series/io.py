"""SeriesSample persistence: one value per CSV row plus a JSON metadata sidecar."""
from __future__ import annotations

import logging
from pathlib import Path
from typing import Tuple, Union

import numpy as np

from src.artifacts import read_csv, sha256_file, write_csv, write_json
from src.errors import ConfigError
from src.series.montecarlo import SeriesSample

logger = logging.getLogger(__name__)


def sidecar_path(path: Union[str, Path]) -> Path:
    path = Path(path)
    return path.with_name(path.stem + ".meta.json")


def write_series_csv(sample: SeriesSample, path: Union[str, Path]) -> Tuple[Path, Path]:
    path = Path(path)
    if sample.lam is None:
        header = ["value"]
        rows = ([v] for v in sample.values.tolist())
    else:
        header = ["value", "lambda"]
        rows = zip(sample.values.tolist(), sample.lam.tolist())
    write_csv(path, header, rows)
    meta = dict(sample.meta)
    meta["csv_sha256"] = sha256_file(path)
    meta["columns"] = header
    return path, write_json(sidecar_path(path), meta)


def read_series_csv(path: Union[str, Path], column: str = "value") -> np.ndarray:
    """Load one column of a series CSV (or any CSV with that header)."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"sample file not found: {path}")
    header, rows = read_csv(path)
    if column not in header:
        if len(header) == 1:
            column = header[0]
        else:
            raise ConfigError(f"{path} has no column {column!r}")
    idx = header.index(column)
    try:
        return np.array([float(row[idx]) for row in rows], dtype=float)
    except (ValueError, IndexError) as exc:
        raise ConfigError(f"malformed sample CSV {path}: {exc}") from exc
