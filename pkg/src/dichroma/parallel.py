"""Optional thread-based fan-out with deterministic reduction.

Work items carry their own derived random streams and results are folded
in item order, so outputs never depend on the worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")

__all__ = ["default_threads", "parallel_map"]


def default_threads() -> int:
    env = os.environ.get("DICHROMA_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def parallel_map(fn: Callable[[T], R], items: Iterable[T], threads: int | None) -> list[R]:
    work: Sequence[T] = list(items)
    if threads is None:
        threads = default_threads()
    if threads <= 1 or len(work) <= 1:
        return [fn(x) for x in work]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, work))
