"""Thread-pool fan-out with results gathered in submission order."""

from __future__ import annotations

from concurrent.futures import Future, ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def collect_in_order(fn: Callable[[T], R], items: Sequence[T], threads: int = 1) -> list[R]:
    """``[fn(x) for x in items]``, optionally across a pool; order never depends on completion."""
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    pool = ThreadPoolExecutor(max_workers=threads)
    futures = [pool.submit(fn, item) for item in items]
    try:
        results = list(_gather_results(futures))
    except KeyboardInterrupt:
        for future in futures:
            future.cancel()
        pool.shutdown(wait=False, cancel_futures=True)
        raise
    except Exception:
        pool.shutdown(wait=False, cancel_futures=True)
        raise
    else:
        pool.shutdown(wait=True)
    return results


def _gather_results(futures: Iterable[Future]) -> Iterable:
    for future in futures:
        yield future.result()
