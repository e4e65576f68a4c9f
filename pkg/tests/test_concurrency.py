import threading
import time

from nsemiprimary.concurrency import (
    SERIAL,
    ConcurrencyConfig,
    default_concurrency,
    parallel_first,
    parallel_map,
    set_default_concurrency,
)


def test_from_settings_uses_config_without_overrides() -> None:
    cfg = ConcurrencyConfig.from_settings(True, 6)
    assert cfg == ConcurrencyConfig(enabled=True, max_workers=6)


def test_threads_flag_beats_config() -> None:
    assert ConcurrencyConfig.from_settings(False, 4, threads=3) == ConcurrencyConfig(True, 3)
    assert ConcurrencyConfig.from_settings(True, 4, threads=1) == ConcurrencyConfig(False, 1)


def test_threads_environment_override(monkeypatch) -> None:
    monkeypatch.setenv("THREADS", "5")
    assert ConcurrencyConfig.from_settings(False, 2) == ConcurrencyConfig(True, 5)
    # an explicit flag still wins over the environment
    assert ConcurrencyConfig.from_settings(False, 2, threads=2).max_workers == 2


def test_default_concurrency_roundtrip() -> None:
    assert default_concurrency() == SERIAL
    cfg = ConcurrencyConfig(enabled=True, max_workers=2)
    set_default_concurrency(cfg)
    assert default_concurrency() is cfg


def test_parallel_map_preserves_order() -> None:
    def slow_square(x: int) -> int:
        time.sleep(0.001 * (5 - x))
        return x * x

    cfg = ConcurrencyConfig(enabled=True, max_workers=4)
    assert parallel_map(slow_square, range(5), cfg) == [0, 1, 4, 9, 16]
    assert parallel_map(slow_square, range(5), SERIAL) == [0, 1, 4, 9, 16]


def test_parallel_map_uses_worker_threads() -> None:
    seen: set[int] = set()
    lock = threading.Lock()

    def record(_: int) -> None:
        time.sleep(0.01)
        with lock:
            seen.add(threading.get_ident())

    parallel_map(record, range(8), ConcurrencyConfig(enabled=True, max_workers=4))
    assert threading.get_ident() not in seen


def test_parallel_first_lowest_partition_wins() -> None:
    def hit(part: int) -> str | None:
        # later partitions finish first
        time.sleep(0.002 * (6 - part))
        return f"witness-{part}" if part in (2, 4) else None

    cfg = ConcurrencyConfig(enabled=True, max_workers=6)
    assert parallel_first(hit, list(range(6)), cfg) == "witness-2"
    assert parallel_first(hit, list(range(6)), SERIAL) == "witness-2"


def test_parallel_first_serial_stops_at_first_hit() -> None:
    calls: list[int] = []

    def hit(part: int) -> int | None:
        calls.append(part)
        return part if part == 1 else None

    assert parallel_first(hit, [0, 1, 2, 3]) == 1
    assert calls == [0, 1]
    assert parallel_first(lambda _: None, [0, 1]) is None
