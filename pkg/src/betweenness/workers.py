"""Worker-pool plumbing and work counters shared by the method modules."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass


@dataclass
class WorkCounters:
    relaxations: int = 0
    products: int = 0
    forward_iterations: int = 0
    rounds: int = 0

    def add(self, **kw: int) -> None:
        for k, v in kw.items():
            setattr(self, k, getattr(self, k) + v)


def default_workers() -> int:
    env = os.environ.get("BC_THREADS")
    return max(1, int(env)) if env else 1


def chunked(items, size: int):
    items = list(items)
    return [items[i:i + size] for i in range(0, len(items), size)]


def pmap(fn, tasks, workers: int | None = None) -> list:
    """``[fn(t) for t in tasks]`` on a thread pool; result order follows ``tasks``.

    Task boundaries must not depend on ``workers`` if results are to be
    identical for every pool width.
    """
    tasks = list(tasks)
    workers = workers or 1
    if workers == 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, tasks))
