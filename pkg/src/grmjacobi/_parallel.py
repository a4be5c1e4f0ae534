"""Deterministic worker-pool helpers.

Work is split into chunks up front and results are merged in chunk order
(or by commutative integer sums), so every output is identical whatever
the worker count.  A worker count of 1 runs inline with no pool.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor

ENV_WORKERS = "GRMJACOBI_WORKERS"


def resolve_workers(workers: int | None = None) -> int:
    """Explicit argument, else the GRMJACOBI_WORKERS env var, else 1."""
    if workers is None:
        raw = os.environ.get(ENV_WORKERS, "").strip()
        workers = int(raw) if raw else 1
    if workers < 1:
        raise ValueError(f"worker count must be >= 1, got {workers}")
    return workers


def run_chunks(fn, args_list: list, workers: int) -> list:
    """Apply fn to each element of args_list, preserving input order."""
    if workers <= 1 or len(args_list) <= 1:
        return [fn(a) for a in args_list]
    with ProcessPoolExecutor(max_workers=min(workers, len(args_list))) as pool:
        return list(pool.map(fn, args_list))
