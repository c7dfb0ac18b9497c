"""Deterministic per-sample seeds and an order-preserving worker pool."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

import numpy as np

T = TypeVar("T")
R = TypeVar("R")


def derive_seeds(seed: int, count: int) -> list[int]:
    """Child seeds for samples 0..count-1.

    Child i depends only on (seed, i), so growing ``count`` keeps the earlier
    samples unchanged.
    """
    if seed is None:
        raise ValueError("a seed is required")
    return [int(np.random.SeedSequence(seed, spawn_key=(i,)).generate_state(1, dtype=np.uint64)[0])
            for i in range(count)]


def ordered_map(fn: Callable[[T], R], items: Iterable[T], workers: int = 1) -> list[R]:
    """``[fn(x) for x in items]``, optionally fanned out; output order is input order."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def stderr(values: Sequence[float]) -> float:
    values = np.asarray(values, dtype=float)
    if len(values) < 2:
        return 0.0
    return float(values.std(ddof=1) / np.sqrt(len(values)))
