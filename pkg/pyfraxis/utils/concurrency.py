"""Trial-level thread pool with results kept in submission order."""

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

logger = logging.getLogger(__name__)

THREADS_ENV = "PYFRAXIS_THREADS"

T = TypeVar("T")
R = TypeVar("R")


def thread_count() -> int:
    """Pool size from ``PYFRAXIS_THREADS``, else the CPU count."""
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            value = int(raw)
        except ValueError:
            logger.warning("Ignoring non-integer %s=%r", THREADS_ENV, raw)
        else:
            if value >= 1:
                return value
            logger.warning("Ignoring %s=%r; must be at least 1", THREADS_ENV, raw)
    return os.cpu_count() or 1


def map_ordered(fn: Callable[[T], R], items: Iterable[T], threads: int | None = None) -> list[R]:
    """``[fn(x) for x in items]`` run on a pool; order follows ``items``."""
    work = list(items)
    workers = min(threads or thread_count(), max(len(work), 1))
    if workers <= 1:
        return [fn(x) for x in work]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, work))
