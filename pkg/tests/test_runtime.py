from __future__ import annotations

from types import SimpleNamespace

import pytest

from nsemiprimary import runtime
from nsemiprimary.concurrency import ConcurrencyConfig, default_concurrency
from nsemiprimary.config import SuiteConfig
from nsemiprimary.errors import EXIT_BUDGET, EXIT_INTERNAL, EXIT_USAGE, BudgetExceededError
from nsemiprimary.logging import get_logger


def _args(**kw: object) -> SimpleNamespace:
    base: dict[str, object] = {
        "config": None,
        "log_json": False,
        "verbose": 0,
        "no_color": False,
        "threads": None,
    }
    base.update(kw)
    return SimpleNamespace(**base)


def test_prepare_config_requires_config_attribute() -> None:
    with pytest.raises(AttributeError):
        runtime.prepare_config(SimpleNamespace(cmd="classify"))


def test_prepare_config_passes_path_to_loader() -> None:
    seen: list[str | None] = []

    def loader(path: str | None) -> SuiteConfig:
        seen.append(path)
        return SuiteConfig()

    runtime.prepare_config(_args(config="custom.yaml"), loader=loader)
    assert seen == ["custom.yaml"]


def test_prepare_config_folds_global_flags() -> None:
    cfg = runtime.prepare_config(
        _args(log_json=True, verbose=2, threads=3, profile="small", seed=9, strict=True),
        loader=lambda _: SuiteConfig(),
    )
    assert cfg.logging_json_enabled is True
    assert cfg.logging_level == "DEBUG"
    assert cfg.concurrency_enabled is True
    assert cfg.concurrency_max_workers == 3
    assert default_concurrency() == ConcurrencyConfig(True, 3)
    assert cfg.audit.profile == "small"
    assert cfg.audit.seed == 9
    assert cfg.audit.strict is True
    assert get_logger().level == 10


def test_single_verbose_raises_warning_to_info() -> None:
    cfg = runtime.prepare_config(_args(verbose=1), loader=lambda _: SuiteConfig())
    assert cfg.logging_level == "INFO"


def test_threads_environment_applies(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("THREADS", "2")
    cfg = runtime.prepare_config(_args(), loader=lambda _: SuiteConfig())
    assert cfg.concurrency_max_workers == 2
    assert cfg.concurrency_enabled is True


def test_nonpositive_threads_rejected() -> None:
    with pytest.raises(ValueError, match="--threads"):
        runtime.prepare_config(_args(threads=0), loader=lambda _: SuiteConfig())


def test_default_loader_tolerates_missing_default(isolated_cwd) -> None:
    cfg = runtime.prepare_config(_args())
    assert cfg.source is None


def test_execute_command_returns_handler_code() -> None:
    assert runtime.execute_command(lambda: 2, _args(), "delta-bar") == 2
    assert runtime.execute_command(lambda: None, _args(), "classify") == 0


def test_execute_command_maps_errors(capsys) -> None:
    def budget() -> None:
        raise BudgetExceededError("table_order_limit", 4096, 8192)

    def bug() -> None:
        raise RuntimeError("boom")

    def usage() -> None:
        raise ValueError("bad ring")

    assert runtime.execute_command(budget, _args(), "classify") == EXIT_BUDGET
    assert runtime.execute_command(bug, _args(), "classify") == EXIT_INTERNAL
    assert runtime.execute_command(usage, _args(), "classify") == EXIT_USAGE
    err = capsys.readouterr().err
    assert "budget: budget 'table_order_limit' exceeded" in err
    assert "internal: boom" in err
    assert "usage: bad ring" in err
