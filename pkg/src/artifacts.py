"""Output files: CSV tables, JSON documents and run manifests.

Every writer is deterministic: floats are written with repr, CSV rows end in
LF, JSON keys are sorted and manifests carry file digests but no timestamps,
so rerunning a config reproduces the bytes.
"""
from __future__ import annotations

import csv
import hashlib
import json
import logging
import math
from pathlib import Path
from typing import Iterable, List, Mapping, Sequence, Union

import numpy as np

from src.config import settings

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _cell(value) -> str:
    if hasattr(value, "item") and callable(value.item):
        value = value.item()
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(float(value))
    if value is None:
        return ""
    return str(value)


def _jsonable(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, Mapping):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if hasattr(value, "item") and callable(value.item):
        return _jsonable(value.item())
    return value


def write_csv(path: PathLike, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(v) for v in row])
    logger.info(f"Wrote {path}")
    return path


def read_csv(path: PathLike) -> tuple:
    with Path(path).open("r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [row for row in reader]
    return header, rows


def write_json(path: PathLike, payload) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(_jsonable(payload), indent=2, sort_keys=True)
    path.write_text(text + "\n", encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path


def sha256_file(path: PathLike) -> str:
    h = hashlib.sha256()
    with Path(path).open("rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def write_manifest(
    path: PathLike, kind: str, params: Mapping, files: Sequence[PathLike]
) -> Path:
    """JSON manifest listing every output file with its sha256."""
    path = Path(path)
    entries: List[dict] = []
    for f in files:
        f = Path(f)
        entries.append({"path": f.name, "sha256": sha256_file(f), "bytes": f.stat().st_size})
    payload = {
        "schema_version": settings.SCHEMA_VERSION,
        "kind": kind,
        "params": params,
        "files": entries,
    }
    return write_json(path, payload)
