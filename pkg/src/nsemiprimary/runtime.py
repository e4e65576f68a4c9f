"""Runtime helpers for CLI orchestration: configuration and error mapping."""

from __future__ import annotations

import time
from collections.abc import Callable
from dataclasses import replace
from typing import Any, Protocol

from .concurrency import ConcurrencyConfig, set_default_concurrency
from .config import DEFAULT_CONFIG_PATH, SuiteConfig, load_config
from .errors import EXIT_INTERNAL, classify_error
from .logging import configure_logging, get_logger
from .ux import disable_color, print_error
from .valuation import enable_oracle


class _HandlerCallable(Protocol):
    def __call__(self) -> Any: ...


def _default_loader(path: str | None) -> SuiteConfig:
    # only an explicit --config must exist
    return load_config(path or DEFAULT_CONFIG_PATH, required=path is not None)


def prepare_config(
    args: Any, *, loader: Callable[[str | None], SuiteConfig] = _default_loader
) -> SuiteConfig:
    """Load the configuration and fold the global flags into it.

    Side effects: configures the process logger, the default worker pool,
    the colour switch and (at DEBUG) the valuation oracle.
    """
    if not hasattr(args, "config"):
        raise AttributeError("Command namespace is missing 'config' attribute")
    cfg = loader(args.config)
    if getattr(args, "log_json", False):
        cfg.logging_json_enabled = True
    verbose = int(getattr(args, "verbose", 0) or 0)
    if verbose >= 2:
        cfg.logging_level = "DEBUG"
    elif verbose == 1 and cfg.logging_level not in ("DEBUG", "INFO"):
        cfg.logging_level = "INFO"
    configure_logging(cfg.logging_json_enabled, cfg.logging_level)
    enable_oracle(cfg.logging_level == "DEBUG")
    disable_color(bool(getattr(args, "no_color", False)))

    threads = getattr(args, "threads", None)
    if threads is not None and threads < 1:
        raise ValueError(f"--threads must be positive, got {threads}")
    concurrency = ConcurrencyConfig.from_settings(
        cfg.concurrency_enabled, cfg.concurrency_max_workers, threads
    )
    cfg.concurrency_enabled = concurrency.enabled
    cfg.concurrency_max_workers = concurrency.max_workers
    set_default_concurrency(concurrency)

    audit = cfg.audit
    if getattr(args, "profile", None):
        audit = replace(audit, profile=args.profile)
    if getattr(args, "seed", None) is not None:
        audit = replace(audit, seed=args.seed)
    if getattr(args, "strict", False):
        audit = replace(audit, strict=True)
    cfg.audit = audit
    return cfg


def execute_command(handler: _HandlerCallable, args: Any, command: str) -> int:
    """Run a handler and turn library errors into exit codes and one-line messages."""
    logger = get_logger()
    start = time.monotonic()
    try:
        result = handler()
        exit_code = int(result) if result is not None else 0
    except SystemExit:  # pragma: no cover - allow propagation
        raise
    except Exception as exc:
        info = classify_error(exc)
        logger.log_error(
            f"command {command} failed",
            error=info.message,
            category=info.category,
            original_type=info.original_type,
            **info.details,
        )
        print_error(f"{info.category}: {info.message}")
        exit_code = info.exit_code
        if exit_code == EXIT_INTERNAL:
            logger.debug("internal error", command=command, namespace=repr(vars(args)))
    logger.log_performance(command, (time.monotonic() - start) * 1000, exit_code=exit_code)
    return exit_code


__all__ = ["execute_command", "prepare_config"]
