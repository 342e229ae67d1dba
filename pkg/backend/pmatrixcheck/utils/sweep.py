"""
Chunked brute-force sweeps over a thread or process pool

Every oracle in pmatrixcheck walks a fixed, deterministic enumeration
(cuts, sign vectors, vertex matrices, index sets). The enumeration is cut
into contiguous index ranges; each range is handed to a worker function and
the per-range results come back in range order, so an order-aware reduction
over them gives exactly the sequential answer.
"""

import logging
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from typing import Any, Callable, List, Optional, Tuple, TypeVar

from pmatrixcheck.config import config

logger = logging.getLogger(__name__)

T = TypeVar("T")


def split_range(total: int, chunk_size: int) -> List[Tuple[int, int]]:
    """Split range(total) into contiguous (start, stop) chunks"""
    if total <= 0:
        return []
    return [
        (start, min(start + chunk_size, total))
        for start in range(0, total, chunk_size)
    ]


class SweepExecutor:
    """Runs chunk workers in-process or on a thread/process pool"""

    def __init__(
        self,
        max_workers: Optional[int] = None,
        worker_type: Optional[str] = None,
        min_parallel_size: Optional[int] = None,
        chunk_size: Optional[int] = None,
    ):
        self.max_workers = (
            max_workers if max_workers is not None else config.SWEEP_MAX_WORKERS
        )
        self.worker_type = worker_type or config.SWEEP_WORKER_TYPE
        self.min_parallel_size = (
            min_parallel_size
            if min_parallel_size is not None
            else config.SWEEP_MIN_PARALLEL_SIZE
        )
        self.chunk_size = chunk_size or config.SWEEP_CHUNK_SIZE

        if self.worker_type not in ("thread", "process"):
            raise ValueError(f"Unknown worker type: {self.worker_type}")

        self.metrics = {"sweeps": 0, "parallel_sweeps": 0, "items": 0}

    def is_parallel(self, total: int) -> bool:
        return self.max_workers > 1 and total >= self.min_parallel_size

    def map_chunks(
        self, worker: Callable[..., T], total: int, *args: Any
    ) -> List[T]:
        """
        Apply worker(*args, start, stop) to every chunk of range(total)

        Args:
            worker: Module-level function (must be picklable for process pools)
            total: Number of items in the enumeration
            *args: Leading arguments passed to every worker call

        Returns:
            Worker results in chunk order
        """
        chunks = split_range(total, self.chunk_size)
        self.metrics["sweeps"] += 1
        self.metrics["items"] += total

        if not chunks:
            return []
        if not self.is_parallel(total):
            return [worker(*args, start, stop) for start, stop in chunks]

        self.metrics["parallel_sweeps"] += 1
        pool_class = (
            ThreadPoolExecutor if self.worker_type == "thread" else ProcessPoolExecutor
        )
        logger.debug(
            f"Sweeping {total:,} items in {len(chunks)} chunks on "
            f"{self.max_workers} {self.worker_type} workers"
        )
        columns = list(zip(*[args + chunk for chunk in chunks]))
        with pool_class(max_workers=self.max_workers) as pool:
            return list(pool.map(worker, *columns))


_sweep_executor: Optional[SweepExecutor] = None


def get_sweep_executor() -> SweepExecutor:
    """Get the shared sweep executor"""
    global _sweep_executor
    if _sweep_executor is None:
        _sweep_executor = SweepExecutor()
    return _sweep_executor


def set_sweep_executor(executor: Optional[SweepExecutor]) -> None:
    """Replace the shared sweep executor (None resets to config defaults)"""
    global _sweep_executor
    _sweep_executor = executor
