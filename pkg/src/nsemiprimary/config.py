from __future__ import annotations

import importlib
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, cast

yaml: Any
try:
    yaml = cast(Any, importlib.import_module("yaml"))
except Exception:  # pragma: no cover
    yaml = cast(Any, None)

DEFAULT_CONFIG_PATH = "nsemiprimary.config.yaml"
THREADS_ENV = "THREADS"
PROFILES = ("small", "default", "large")


class ConfigError(RuntimeError):
    pass


@dataclass(frozen=True)
class Budgets:
    """Hard limits for the exhaustive cores; exceeding one refuses the request."""

    table_order_limit: int = 4096
    algebra_order_limit: int = 1 << 16
    ideal_enumeration: int = 20_000
    absorbing_operations: int = 10**9
    axiom_operations: int = 20_000_000
    pair_budget: int = 50_000_000
    monomial_search: int = 2_000_000
    factor_limit: int = 1 << 64


@dataclass(frozen=True)
class SeriesBounds:
    order_bound: int = 8
    degree_bound: int = 5
    max_field_order: int = 81
    max_n: int = 16

    def as_record(self, q: int) -> dict[str, int]:
        return {"order_bound": self.order_bound, "degree_bound": self.degree_bound, "q": q}


@dataclass(frozen=True)
class AuditSettings:
    seed: int = 20240601
    profile: str = "default"
    max_n: int = 4
    strict: bool = False


@dataclass
class SuiteConfig:
    version: int = 1
    logging_json_enabled: bool = False
    logging_level: str = "WARNING"
    concurrency_enabled: bool = False
    concurrency_max_workers: int = 4
    budgets: Budgets = field(default_factory=Budgets)
    series: SeriesBounds = field(default_factory=SeriesBounds)
    audit: AuditSettings = field(default_factory=AuditSettings)
    source: Path | None = None


def _positive_int(section: str, key: str, value: Any) -> int:
    try:
        number = int(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{section}.{key} must be an integer, got {value!r}") from exc
    if number < 1:
        raise ConfigError(f"{section}.{key} must be positive, got {number}")
    return number


def _section(raw: dict[str, Any], name: str) -> dict[str, Any]:
    value = raw.get(name, {}) or {}
    if not isinstance(value, dict):
        raise ConfigError(f"section '{name}' must be a mapping")
    return cast(dict[str, Any], value)


def _apply_ints(obj: Any, section: str, values: dict[str, Any]) -> Any:
    known = set(obj.__dataclass_fields__)
    updates: dict[str, int] = {}
    for key, value in values.items():
        if key not in known:
            raise ConfigError(f"unknown key {section}.{key}")
        updates[key] = _positive_int(section, key, value)
    return replace(obj, **updates)


def threads_override(environ: dict[str, str] | None = None) -> int | None:
    """Return the THREADS environment override, the only variable this tool reads."""
    env = os.environ if environ is None else environ
    value = env.get(THREADS_ENV)
    if value is None or value.strip() == "":
        return None
    return _positive_int("env", THREADS_ENV, value)


def default_config() -> SuiteConfig:
    return SuiteConfig()


def load_config(path: str | Path | None = None, *, required: bool = True) -> SuiteConfig:
    """Load the YAML configuration at *path*.

    A missing file is an error unless *required* is false, in which case the
    built-in defaults are returned.
    """
    p = Path(path or DEFAULT_CONFIG_PATH)
    if not p.exists():
        if required:
            raise ConfigError(f"Configuration file not found: {p}")
        return default_config()
    if yaml is None:
        raise ConfigError("PyYAML not installed; pip install PyYAML")
    try:
        raw = yaml.safe_load(p.read_text(encoding="utf-8")) or {}
    except yaml.YAMLError as exc:
        raise ConfigError(f"Invalid YAML in {p}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"{p}: top level must be a mapping")
    raw = cast(dict[str, Any], raw)
    logging_config = _section(raw, "logging")
    concurrency_config = _section(raw, "concurrency")
    audit_config = dict(_section(raw, "audit"))

    profile = str(audit_config.pop("profile", AuditSettings.profile))
    if profile not in PROFILES:
        raise ConfigError(f"audit.profile must be one of {', '.join(PROFILES)}")
    strict = bool(audit_config.pop("strict", False))
    audit = _apply_ints(AuditSettings(), "audit", audit_config)
    audit = replace(audit, profile=profile, strict=strict)

    return SuiteConfig(
        version=int(raw.get("version", 1)),
        logging_json_enabled=bool(logging_config.get("json_enabled", False)),
        logging_level=str(logging_config.get("level", "WARNING")).upper(),
        concurrency_enabled=bool(concurrency_config.get("enabled", False)),
        concurrency_max_workers=_positive_int(
            "concurrency", "max_workers", concurrency_config.get("max_workers", 4)
        ),
        budgets=_apply_ints(Budgets(), "budgets", _section(raw, "budgets")),
        series=_apply_ints(SeriesBounds(), "series", _section(raw, "series")),
        audit=audit,
        source=p,
    )


__all__ = [
    "DEFAULT_CONFIG_PATH",
    "PROFILES",
    "AuditSettings",
    "Budgets",
    "ConfigError",
    "SeriesBounds",
    "SuiteConfig",
    "default_config",
    "load_config",
    "threads_override",
]
