"""
Worker Pool
Fans sweep evaluations out over worker processes.

Results always come back in input order, whatever order the workers finish in,
so CSV output is identical for any --jobs value.
"""

import asyncio
from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence, TypeVar

import structlog
from pydantic import BaseModel, Field

logger = structlog.get_logger(__name__)

T = TypeVar("T")
R = TypeVar("R")


class PoolConfig(BaseModel):
    """Configuration for sweep pools."""

    max_workers: int = Field(default=1, ge=1, le=256)


@dataclass
class PoolStats:
    """Bookkeeping for one pool's lifetime."""

    submitted: int = 0
    completed: int = 0


class SweepPool:
    """
    Ordered parallel map over picklable callables.

    With max_workers = 1 the work runs inline in the calling process.
    """

    def __init__(self, config: Optional[PoolConfig] = None):
        self.config = config or PoolConfig()
        self._stats: PoolStats = PoolStats()
        self._executor: Optional[Executor] = None

    async def __aenter__(self) -> "SweepPool":
        if self.config.max_workers > 1:
            self._executor = ProcessPoolExecutor(max_workers=self.config.max_workers)
        return self

    async def __aexit__(self, *exc: object) -> None:
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None

    async def map(self, fn: Callable[[T], R], items: Sequence[T]) -> List[R]:
        """Apply fn to every item; the result list follows the input order."""
        self._stats.submitted += len(items)
        logger.debug("sweep_started", items=len(items), workers=self.config.max_workers)

        if self._executor is None:
            results = [fn(item) for item in items]
        else:
            loop = asyncio.get_running_loop()
            futures = [loop.run_in_executor(self._executor, fn, item) for item in items]
            results = await asyncio.gather(*futures)

        self._stats.completed += len(results)
        logger.debug("sweep_completed", items=len(results))
        return list(results)

    @property
    def stats(self) -> dict:
        return {
            "max_workers": self.config.max_workers,
            "submitted": self._stats.submitted,
            "completed": self._stats.completed,
        }


def run_ordered(fn: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> List[R]:
    """Synchronous front end used by the CLI and the analysis sweeps."""
    materialized = list(items)

    async def _go() -> List[R]:
        async with SweepPool(PoolConfig(max_workers=jobs)) as pool:
            return await pool.map(fn, materialized)

    return asyncio.run(_go())
