"""Run independent enumeration units serially or on a process pool.

Each unit returns a list of partial counts, one per sample bound, and the
merge is plain addition, so the merged series does not depend on the number
of workers.
"""

from __future__ import annotations

import logging
import multiprocessing
import time
from collections.abc import Callable, Sequence
from typing import Any

from stackcount.logging import log_count_unit

logger = logging.getLogger(__name__)

UnitResult = tuple[list[int], float]


def timed_unit(func: Callable[..., list[int]], *args: Any) -> UnitResult:
    """Call one unit and return its partial counts with the elapsed milliseconds."""
    start = time.perf_counter()
    partial = func(*args)
    return partial, (time.perf_counter() - start) * 1000


def run_units(
    family: str,
    func: Callable[..., list[int]],
    units: Sequence[tuple[Any, ...]],
    samples: int,
    *,
    workers: int = 1,
) -> list[int]:
    """Run func(*unit) for every unit and add the partial counts.

    Args:
        family: Family descriptor for log events
        func: Picklable top-level function returning one count per sample
        units: Argument tuples, one per work unit
        samples: Number of sample bounds
        workers: Number of worker processes; 1 runs in-process

    Returns:
        Merged counts, one per sample
    """
    jobs = [(func, *unit) for unit in units]
    if workers > 1 and len(jobs) > 1:
        with multiprocessing.Pool(processes=min(workers, len(jobs))) as pool:
            results = pool.starmap(timed_unit, jobs)
    else:
        results = [timed_unit(*job) for job in jobs]

    totals = [0] * samples
    for unit, (partial, duration_ms) in enumerate(results):
        if len(partial) != samples:
            msg = f"work unit {unit} returned {len(partial)} counts for {samples} samples"
            raise RuntimeError(msg)
        totals = [t + p for t, p in zip(totals, partial, strict=True)]
        log_count_unit(family, unit, len(results), partial[-1] if partial else 0, duration_ms)
    logger.debug("Merged %d units for %s", len(results), family)
    return totals
