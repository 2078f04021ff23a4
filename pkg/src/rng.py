"""Counter-based random streams keyed by (namespace..., stream, block).

Every column of a sample batch is its own stream, and draws are cut into
fixed-size blocks. A block's generator depends only on its key, so blocks can
be produced in any order, on any worker, and still give the same bits.
The namespace separates independent uses of one seed (experiment id, n).
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Sequence, Tuple, TypeVar

import numpy as np

from src.config import settings
from src.errors import ArgumentError

logger = logging.getLogger(__name__)

T = TypeVar("T")

Namespace = Tuple[int, ...]


def stream_generator(
    seed: int, stream: int, block: int = 0, namespace: Namespace = ()
) -> np.random.Generator:
    """Philox generator for one (seed, namespace, stream, block) key."""
    key = (*namespace, stream, block)
    if seed < 0 or any(k < 0 for k in key):
        raise ArgumentError(f"RNG key components must be non-negative: {(seed, *key)}")
    seq = np.random.SeedSequence(seed, spawn_key=key)
    return np.random.Generator(np.random.Philox(seq))


def block_ranges(draws: int, block_size: int | None = None) -> List[Tuple[int, int, int]]:
    """Split ``draws`` into (block index, start, stop) triples."""
    if draws < 1:
        raise ArgumentError(f"draws must be >= 1, got {draws}")
    size = block_size or settings.DRAW_BLOCK
    return [(b, start, min(start + size, draws)) for b, start in enumerate(range(0, draws, size))]


def map_blocks(
    fn: Callable[[int, int, int], T],
    blocks: Sequence[Tuple[int, int, int]],
    workers: int | None = None,
) -> List[T]:
    """Apply ``fn(block, start, stop)`` to every block, results in block order.

    The worker count only changes wall-clock time; the output is the same list
    either way because each block carries its own streams.
    """
    n_workers = workers if workers is not None else settings.WORKERS
    if n_workers < 1:
        raise ArgumentError(f"worker count must be >= 1, got {n_workers}")
    if n_workers == 1 or len(blocks) == 1:
        return [fn(*b) for b in blocks]
    logger.debug(f"Dispatching {len(blocks)} blocks over {n_workers} workers")
    with ThreadPoolExecutor(max_workers=n_workers) as pool:
        return list(pool.map(lambda b: fn(*b), blocks))
