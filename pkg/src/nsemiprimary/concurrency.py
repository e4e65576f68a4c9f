"""Thread-pool helpers for the exhaustive search cores.

Searches are split into ordered partitions. Every helper returns results in
partition order so that the reported witness never depends on scheduling.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import TypeVar

from .config import threads_override
from .logging import get_logger

T = TypeVar("T")
R = TypeVar("R")


@dataclass(frozen=True)
class ConcurrencyConfig:
    """Configuration for concurrency settings."""

    enabled: bool = False
    max_workers: int = 4

    @classmethod
    def from_settings(
        cls, enabled: bool, max_workers: int, threads: int | None = None
    ) -> ConcurrencyConfig:
        """Apply ``--threads`` and then the THREADS environment override."""
        count = threads if threads is not None else threads_override()
        if count is None:
            return cls(enabled=enabled, max_workers=max_workers)
        return cls(enabled=count > 1, max_workers=count)


SERIAL = ConcurrencyConfig()

_ACTIVE: ConcurrencyConfig = SERIAL


def set_default_concurrency(config: ConcurrencyConfig) -> None:
    global _ACTIVE  # noqa: PLW0603
    _ACTIVE = config


def default_concurrency() -> ConcurrencyConfig:
    return _ACTIVE


def parallel_map(
    fn: Callable[[T], R], items: Iterable[T], config: ConcurrencyConfig | None = None
) -> list[R]:
    cfg = config or _ACTIVE
    work = list(items)
    if not cfg.enabled or cfg.max_workers <= 1 or len(work) <= 1:
        return [fn(item) for item in work]
    get_logger().debug("parallel map", operation="parallel_map", items=len(work))
    with ThreadPoolExecutor(max_workers=cfg.max_workers) as pool:
        return list(pool.map(fn, work))


def parallel_first(
    fn: Callable[[T], R | None],
    partitions: Sequence[T],
    config: ConcurrencyConfig | None = None,
) -> R | None:
    """Return the hit of the lowest-index partition that has one.

    Serially this stops at the first hit. In the pool all partitions run and the
    lowest index wins (first-witness-wins).
    """
    cfg = config or _ACTIVE
    if not cfg.enabled or cfg.max_workers <= 1 or len(partitions) <= 1:
        for part in partitions:
            hit = fn(part)
            if hit is not None:
                return hit
        return None
    for hit in parallel_map(fn, partitions, cfg):
        if hit is not None:
            return hit
    return None


__all__ = [
    "SERIAL",
    "ConcurrencyConfig",
    "default_concurrency",
    "parallel_first",
    "parallel_map",
    "set_default_concurrency",
]
