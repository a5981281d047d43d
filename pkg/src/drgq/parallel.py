"""Tiny worker-pool helper honoring the --jobs cap.

Work items must be independent and results are returned in input order, so
a run is deterministic regardless of scheduling.  With jobs <= 1 this is a
plain map; threads are adequate here because the heavy lifting happens in
BLAS calls that release the interpreter lock.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def pmap(fn: Callable[[T], R], items: Sequence[T], jobs: int = 1) -> list[R]:
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(jobs, len(items))) as pool:
        return list(pool.map(fn, items))
