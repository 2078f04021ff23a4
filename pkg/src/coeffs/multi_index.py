from __future__ import annotations

from enum import Enum
from typing import Sequence, Tuple, Union

from src.errors import ArgumentError

# Strictly increasing tuple of positive variable indices.
MultiIndex = Tuple[int, ...]


class DiagonalFlag(Enum):
    """Marker for raw indices with a repeated entry (coefficients vanish there)."""

    DIAGONAL = "diagonal"


DIAGONAL = DiagonalFlag.DIAGONAL


def canonicalize(raw: Sequence[int]) -> Union[MultiIndex, DiagonalFlag]:
    if len(raw) == 0:
        raise ArgumentError("multi-index must be non-empty")
    key = tuple(sorted(int(i) for i in raw))
    if key[0] < 1:
        raise ArgumentError(f"variable indices start at 1, got {list(raw)}")
    for a, b in zip(key, key[1:]):
        if a == b:
            return DIAGONAL
    return key


def is_canonical(key: Sequence[int]) -> bool:
    return (
        len(key) >= 1
        and key[0] >= 1
        and all(a < b for a, b in zip(key, key[1:]))
    )
