"""Pytest configuration for nsemiprimary tests.

Ensures the in-repo `src` directory is on `sys.path` so the package can be
imported without an editable install, and keeps process-wide switches (log
handler, worker pool, colour, oracle) from leaking between tests.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

import pytest

_TEST_START_TIMES: dict[str, float] = {}
_TEST_DURATIONS: list[tuple[str, float]] = []

ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "src"
FIXTURES = ROOT / "fixtures"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

from nsemiprimary.concurrency import SERIAL, set_default_concurrency  # noqa: E402
from nsemiprimary.logging import configure_logging  # noqa: E402
from nsemiprimary.ux import disable_color  # noqa: E402
from nsemiprimary.valuation import enable_oracle  # noqa: E402


@pytest.fixture(autouse=True)
def _reset_process_state(monkeypatch: pytest.MonkeyPatch):
    monkeypatch.delenv("THREADS", raising=False)
    yield
    set_default_concurrency(SERIAL)
    disable_color(False)
    enable_oracle(False)
    configure_logging()


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def isolated_cwd(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    """Run in an empty directory so no nsemiprimary.config.yaml is picked up."""
    monkeypatch.chdir(tmp_path)
    return tmp_path


# --- Timing utilities to help identify slow tests ---


def pytest_runtest_setup(item):  # type: ignore
    _TEST_START_TIMES[item.nodeid] = time.perf_counter()


def pytest_runtest_teardown(item):  # type: ignore
    start = _TEST_START_TIMES.pop(item.nodeid, None)
    if start is not None:
        _TEST_DURATIONS.append((item.nodeid, time.perf_counter() - start))


def pytest_sessionfinish(session, exitstatus):  # type: ignore
    if not _TEST_DURATIONS:
        return
    slow = sorted(_TEST_DURATIONS, key=lambda x: x[1], reverse=True)[:10]
    print("\n=== Slowest Tests (top 10) ===")
    for nodeid, secs in slow:
        print(f"{secs:0.3f}s  {nodeid}")
    total_time = sum(d for _, d in _TEST_DURATIONS)
    print(f"Total recorded test time: {total_time:0.3f}s over {len(_TEST_DURATIONS)} tests")
