"""Deterministic process-pool mapping.

Work is split by index; results are reassembled in index order, so output
never depends on the worker count.  Workers are forked, which keeps the
per-task cost low and inherits the selected kernel backend.
"""

from __future__ import annotations

import multiprocessing as mp
from typing import Callable, Sequence


def map_ordered(fn: Callable, args: Sequence, workers: int = 1):
    """[fn(a) for a in args], optionally fanned out over a fork pool."""
    args = list(args)
    if workers <= 1 or len(args) <= 1:
        return [fn(a) for a in args]
    ctx = mp.get_context("fork")
    with ctx.Pool(processes=min(workers, len(args))) as pool:
        return pool.map(fn, args)


def index_chunks(n: int, workers: int, per_worker: int = 4):
    """Contiguous (start, stop) ranges covering range(n)."""
    pieces = max(1, min(n, workers * per_worker))
    step = (n + pieces - 1) // pieces
    return [(i, min(i + step, n)) for i in range(0, n, step)]
