import time

from nsemiprimary.benchmarking import (
    SLOW_OPERATION_MS,
    BenchmarkConfig,
    PerformanceBenchmark,
    PerformanceMetric,
)


def test_benchmark_config_defaults() -> None:
    config = BenchmarkConfig()
    assert config.enabled is True
    assert config.track_memory is True


def test_disabled_benchmark_records_nothing() -> None:
    benchmark = PerformanceBenchmark(BenchmarkConfig(enabled=False))
    with benchmark.measure("check", check="prime-implies-n-semiprimary"):
        time.sleep(0.001)
    assert benchmark.get_metrics() == []
    assert benchmark.get_summary() == {}


def test_measure_records_duration_and_context() -> None:
    benchmark = PerformanceBenchmark(BenchmarkConfig(track_memory=False))
    with benchmark.measure("enumerate_ideals", ring="Z12") as metric:
        time.sleep(0.005)
    metrics = benchmark.get_metrics()
    assert metrics == [metric]
    assert metric.duration_ms >= 4
    assert metric.context == {"ring": "Z12"}
    assert metric.memory_delta_mb is None


def test_measure_records_even_when_block_raises() -> None:
    benchmark = PerformanceBenchmark(BenchmarkConfig(track_memory=False))
    try:
        with benchmark.measure("failing"):
            raise RuntimeError("boom")
    except RuntimeError:
        pass
    assert [m.name for m in benchmark.get_metrics()] == ["failing"]


def test_metrics_keep_order_and_summarize() -> None:
    benchmark = PerformanceBenchmark(BenchmarkConfig(track_memory=False))
    with benchmark.measure("series.tower"):
        pass
    with benchmark.measure("series.closure"):
        time.sleep(0.003)
    with benchmark.measure("classify"):
        pass
    assert [m.name for m in benchmark.get_metrics()] == ["series.tower", "series.closure", "classify"]
    summary = benchmark.get_summary()
    assert summary["total_metrics"] == 3
    assert summary["slowest"] == "series.closure"
    assert summary["total_duration_ms"] >= summary["median_ms"]
    assert "psutil" in summary


def test_metric_to_dict_drops_missing_memory() -> None:
    data = PerformanceMetric("x", 1.23456, {"n": 2}).to_dict()
    assert data == {"name": "x", "duration_ms": 1.235, "context": {"n": 2}}
    with_memory = PerformanceMetric("x", 1.0, memory_delta_mb=0.5).to_dict()
    assert with_memory["memory_delta_mb"] == 0.5



def test_slow_threshold_is_one_second() -> None:
    benchmark = PerformanceBenchmark(BenchmarkConfig(track_memory=False))
    with benchmark.measure("quick") as metric:
        pass
    assert metric.duration_ms < SLOW_OPERATION_MS
