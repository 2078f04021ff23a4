"""Draws x variables sample matrices from a family of per-variable laws.

Column k uses RNG stream k and draw block b uses generator (seed, ..., k, b),
so any block can be regenerated on its own and the assembled batch does not
depend on the worker count.
"""
from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from src.errors import ArgumentError
from src.laws.base import MembershipReport, SplitLaw
from src.rng import Namespace, block_ranges, map_blocks, stream_generator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LawFamily:
    laws: Tuple[SplitLaw, ...]

    def __post_init__(self) -> None:
        if not self.laws:
            raise ArgumentError("a law family needs at least one variable")

    @classmethod
    def iid(cls, law: SplitLaw, support: int) -> LawFamily:
        if support < 1:
            raise ArgumentError(f"support must be >= 1, got {support}")
        return cls(laws=(law,) * support)

    @property
    def support(self) -> int:
        return len(self.laws)

    def validate(self) -> List[MembershipReport]:
        reports = {}
        for law in self.laws:
            if id(law) not in reports:
                reports[id(law)] = law.validate_membership()
        return list(reports.values())

    def digest(self) -> str:
        h = hashlib.sha256()
        for law in self.laws:
            h.update(law.digest().encode("ascii"))
        return h.hexdigest()

    def describe(self) -> dict:
        first = self.laws[0]
        if all(law is first for law in self.laws):
            return {"support": self.support, "iid": first.to_config()}
        return {"support": self.support, "laws": [law.to_config() for law in self.laws]}


@dataclass
class SampleBatch:
    values: np.ndarray  # draws x J
    chi: Optional[np.ndarray]  # draws x J indicators when split sampling is used
    seed: int

    @property
    def draws(self) -> int:
        return self.values.shape[0]

    @property
    def split(self) -> bool:
        return self.chi is not None


def sample_block(
    family: LawFamily,
    seed: int,
    block: int,
    start: int,
    stop: int,
    split: bool = False,
    namespace: Namespace = (),
    columns: Optional[int] = None,
) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """Values (and chi when ``split``) for draws [start, stop) of the first ``columns`` vars."""
    n_cols = family.support if columns is None else columns
    if n_cols > family.support:
        raise ArgumentError(f"requested {n_cols} columns from a family of {family.support}")
    length = stop - start
    values = np.empty((length, n_cols))
    chi = np.empty((length, n_cols), dtype=np.int8) if split else None
    for k in range(n_cols):
        gen = stream_generator(seed, k, block, namespace)
        law = family.laws[k]
        if split:
            chi[:, k], values[:, k] = law.sample_split(gen, length)
        else:
            values[:, k] = law.sample_direct(gen, length)
    return values, chi


def sample_batch(
    family: LawFamily,
    draws: int,
    seed: int,
    split: bool = False,
    workers: Optional[int] = None,
    namespace: Namespace = (),
) -> SampleBatch:
    blocks = block_ranges(draws)
    parts = map_blocks(
        lambda b, start, stop: sample_block(family, seed, b, start, stop, split, namespace),
        blocks,
        workers,
    )
    values = np.concatenate([v for v, _ in parts], axis=0)
    chi = np.concatenate([c for _, c in parts], axis=0) if split else None
    logger.debug(f"Sampled {draws} x {family.support} batch (split={split})")
    return SampleBatch(values=values, chi=chi, seed=seed)
