"""Location references for audit checks and location-named fixture aliases.

The table lives in ``data/locations.yaml``. Every audit check carries a
``ref`` such as ``Thm2.2b`` and a short quoted ``anchor``; several checks may
share one ref, and the ``in_scope`` list names every ref the audit must cover.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Any

import yaml

from .config import ConfigError

DATA_PACKAGE = "nsemiprimary"
DATA_FILE = "data/locations.yaml"

_KIND_DOT = re.compile(r"^([a-z]+)\.")
_NOISE = re.compile(r"[\s()]")


@dataclass(frozen=True)
class Location:
    ref: str
    anchor: str


@dataclass(frozen=True)
class LocationTable:
    checks: dict[str, Location]
    aliases: dict[str, str]
    fixtures: dict[str, str]
    in_scope: tuple[str, ...]


def normalize_ref(text: str) -> str:
    """``"Thm. 2.2(b)"`` and ``"thm2.2b"`` both become ``"thm2.2b"``."""
    return _KIND_DOT.sub(r"\1", _NOISE.sub("", text).casefold())


def _mapping(data: dict[str, Any], key: str) -> dict[str, Any]:
    value = data.get(key, {})
    if not isinstance(value, dict):
        raise ConfigError(f"{DATA_FILE}: '{key}' must be a mapping")
    return value


def parse_table(data: Any) -> LocationTable:
    if not isinstance(data, dict):
        raise ConfigError(f"{DATA_FILE} must hold a mapping")
    checks = {}
    for check_id, entry in _mapping(data, "checks").items():
        if not isinstance(entry, dict) or not entry.get("ref") or not entry.get("anchor"):
            raise ConfigError(f"{DATA_FILE}: check {check_id!r} needs a ref and an anchor")
        checks[str(check_id)] = Location(str(entry["ref"]), str(entry["anchor"]))
    aliases = {str(k): str(v) for k, v in _mapping(data, "aliases").items()}
    for alias, target in aliases.items():
        if target not in checks:
            raise ConfigError(f"{DATA_FILE}: alias {alias!r} points at unknown check {target!r}")
    fixtures = {str(k): str(v) for k, v in _mapping(data, "fixtures").items()}
    in_scope = data.get("in_scope", [])
    if not isinstance(in_scope, list):
        raise ConfigError(f"{DATA_FILE}: 'in_scope' must be a list")
    return LocationTable(checks, aliases, fixtures, tuple(str(r) for r in in_scope))


@lru_cache(maxsize=1)
def location_table() -> LocationTable:
    text = resources.files(DATA_PACKAGE).joinpath(DATA_FILE).read_text(encoding="utf-8")
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"{DATA_FILE} is not valid YAML: {exc}") from exc
    return parse_table(data)


def check_location(check_id: str) -> Location:
    try:
        return location_table().checks[check_id]
    except KeyError as exc:
        raise ConfigError(f"{DATA_FILE}: no location for check {check_id!r}") from exc


def check_aliases() -> dict[str, str]:
    return dict(location_table().aliases)


def fixture_aliases() -> dict[str, str]:
    return dict(location_table().fixtures)


def in_scope_refs() -> tuple[str, ...]:
    return location_table().in_scope


__all__ = [
    "Location",
    "LocationTable",
    "check_aliases",
    "check_location",
    "fixture_aliases",
    "in_scope_refs",
    "location_table",
    "normalize_ref",
    "parse_table",
]
