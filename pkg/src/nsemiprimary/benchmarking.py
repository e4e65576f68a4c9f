"""Timing and memory sampling for audit checks and long searches."""

from __future__ import annotations

import statistics
import threading
import time
from collections.abc import Generator
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from typing import Any

from .logging import get_logger

# Optional system metrics dependency (module-level import for linting)
_psutil: Any | None
try:
    import psutil as _psutil_mod
except Exception:  # pragma: no cover - optional dependency
    _psutil = None
else:
    _psutil = _psutil_mod

SLOW_OPERATION_MS = 1000


@dataclass
class PerformanceMetric:
    name: str
    duration_ms: float
    context: dict[str, Any] = field(default_factory=dict)
    memory_delta_mb: float | None = None

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["duration_ms"] = round(self.duration_ms, 3)
        if self.memory_delta_mb is None:
            data.pop("memory_delta_mb")
        return data


@dataclass
class BenchmarkConfig:
    enabled: bool = True
    track_memory: bool = True


def _rss_mb() -> float | None:
    if _psutil is None:
        return None
    try:
        return float(_psutil.Process().memory_info().rss) / 1024 / 1024
    except Exception as e:  # pragma: no cover - platform dependent
        get_logger().debug(f"Failed to sample memory: {e}")
        return None


class PerformanceBenchmark:
    """Collects one metric per measured block; safe to share between worker threads."""

    def __init__(self, config: BenchmarkConfig | None = None) -> None:
        self.config = config or BenchmarkConfig()
        self._metrics: list[PerformanceMetric] = []
        self._lock = threading.Lock()

    @contextmanager
    def measure(self, operation: str, **context: Any) -> Generator[PerformanceMetric, None, None]:
        metric = PerformanceMetric(operation, 0.0, dict(context))
        if not self.config.enabled:
            yield metric
            return
        start_rss = _rss_mb() if self.config.track_memory else None
        start = time.perf_counter()
        try:
            yield metric
        finally:
            metric.duration_ms = (time.perf_counter() - start) * 1000
            end_rss = _rss_mb() if start_rss is not None else None
            if start_rss is not None and end_rss is not None:
                metric.memory_delta_mb = end_rss - start_rss
            with self._lock:
                self._metrics.append(metric)
            logger = get_logger()
            logger.log_performance(operation, metric.duration_ms, **context)
            if metric.duration_ms > SLOW_OPERATION_MS:
                logger.debug(f"slow operation {operation}: {metric.duration_ms:.0f} ms")

    def get_metrics(self) -> list[PerformanceMetric]:
        with self._lock:
            return list(self._metrics)

    def get_summary(self) -> dict[str, Any]:
        metrics = self.get_metrics()
        if not metrics:
            return {}
        durations = [m.duration_ms for m in metrics]
        slowest = max(metrics, key=lambda m: m.duration_ms)
        return {
            "total_metrics": len(metrics),
            "total_duration_ms": round(sum(durations), 3),
            "median_ms": round(statistics.median(durations), 3),
            "slowest": slowest.name,
            "psutil": _psutil is not None,
        }


__all__ = [
    "SLOW_OPERATION_MS",
    "BenchmarkConfig",
    "PerformanceBenchmark",
    "PerformanceMetric",
]
