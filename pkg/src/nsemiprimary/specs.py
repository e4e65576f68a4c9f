"""Ring, ideal and fixture specifications.

Rings arrive either as CLI shorthand (``zn:12``, ``zn:4*zn:2``,
``poly:2:4,4:X^2*Y^2``, ``zn:8(+)4``) or as JSON documents. Both are turned
into one canonical dictionary form first; constructing the ring is a separate
step so that manifests and fixtures can be compared without building anything.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Union

import numpy as np

from .config import Budgets
from .errors import InvalidParameterError, ParseError
from .monomial import MonomialIdeal
from .rings import (
    DEFAULT_BUDGETS,
    FiniteRing,
    IdealHandle,
    ModuleSpec,
    ideal_generated,
    mk_idealization,
    mk_poly_quotient,
    mk_product,
    mk_zn,
    zero_ideal,
)
from .series import (
    SeriesIdealSpec,
    SeriesRingSpec,
    ideal_from_dict,
    maximal_ideal,
    order_ideal,
    ring_from_dict,
)
from .valuation import OrderedGroup

ZN = "zn"
PRODUCT = "product"
POLY_QUOTIENT = "poly_quotient"
IDEALIZATION = "idealization"
SERIES = "series"
MONOMIAL = "monomial"
VALUATION = "valuation"

RING_KINDS = (ZN, PRODUCT, POLY_QUOTIENT, IDEALIZATION)
FIXTURE_KINDS = ("ring", SERIES, MONOMIAL, VALUATION)

_FACTOR_SPLIT = re.compile(r"\*(?=(?:zn|poly|file):)")
_IDEALIZATION_MARK = "(+)"


def split_top_level(text: str, sep: str = ",") -> list[str]:
    """Split on *sep* outside parentheses; empty pieces are dropped."""
    parts: list[str] = []
    depth = 0
    current: list[str] = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses in {text!r}")
        if ch == sep and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if depth:
        raise ParseError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(current))
    return [p.strip() for p in parts if p.strip()]


def _int(value: Any, what: str) -> int:
    try:
        return int(value)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{what} must be an integer, got {value!r}") from exc


# --- ring specs -------------------------------------------------------------


def read_json(path: str | Path) -> Any:
    target = Path(path)
    if not target.exists():
        raise ParseError(f"spec file not found: {target}")
    try:
        return json.loads(target.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{target}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def ring_spec_from_text(text: str) -> dict[str, Any]:
    """Shorthand or a JSON file reference to a canonical ring spec.

    ``*`` binds loosest: ``zn:4(+)2*zn:2`` is a product whose first factor is
    an idealization.
    """
    src = text.strip()
    if not src:
        raise ParseError("empty ring spec")
    factors = _FACTOR_SPLIT.split(src)
    if len(factors) > 1:
        return normalize_ring_spec(
            {"kind": PRODUCT, "factors": [ring_spec_from_text(f) for f in factors]}
        )
    if _IDEALIZATION_MARK in src:
        base, _, module = src.rpartition(_IDEALIZATION_MARK)
        module = module.strip()
        if module.upper() == "R":
            mod: dict[str, Any] = {"kind": "regular"}
        else:
            mod = {"kind": "natural", "d": _int(module, "module order")}
        return normalize_ring_spec(
            {"kind": IDEALIZATION, "ring": ring_spec_from_text(base), "module": mod}
        )
    if src.startswith("file:") or src.endswith(".json"):
        data = read_json(src.removeprefix("file:"))
        if isinstance(data, dict) and data.get("kind") == "ring":
            data = data.get("ring")
        return normalize_ring_spec(data)
    if src.startswith("zn:"):
        return normalize_ring_spec({"kind": ZN, "n": _int(src[3:], "n")})
    if src.startswith("poly:"):
        pieces = src.split(":")
        if len(pieces) not in (3, 4):
            raise ParseError(f"poly spec must look like poly:p:c1,c2[:rel;rel], got {text!r}")
        extra = [r.strip() for r in pieces[3].split(";") if r.strip()] if len(pieces) == 4 else []
        return normalize_ring_spec(
            {
                "kind": POLY_QUOTIENT,
                "p": _int(pieces[1], "p"),
                "caps": [_int(c, "cap") for c in pieces[2].split(",") if c.strip()],
                "extra": extra,
            }
        )
    raise ParseError(f"unrecognised ring spec {text!r}")


def _normalize_module(data: Any) -> dict[str, Any]:
    if not isinstance(data, dict):
        raise ParseError("module spec must be an object")
    kind = data.get("kind", "table" if "action" in data else None)
    if kind == "natural":
        return {"kind": "natural", "d": _int(data.get("d"), "module order")}
    if kind == "regular":
        return {"kind": "regular"}
    if kind == "table":
        try:
            orders = [_int(o, "module order") for o in data["orders"]]
            action = [[_int(v, "action entry") for v in row] for row in data["action"]]
        except KeyError as exc:
            raise ParseError(f"module table missing key {exc}") from exc
        return {"kind": "table", "orders": orders, "action": action}
    raise ParseError(f"unknown module kind {kind!r}")


def normalize_ring_spec(data: Any) -> dict[str, Any]:
    """Canonical form: fixed keys per kind, integers coerced, defaults filled in."""
    if isinstance(data, str):
        return ring_spec_from_text(data)
    if not isinstance(data, dict):
        raise ParseError("ring spec must be an object or shorthand string")
    kind = data.get("kind")
    try:
        if kind == ZN:
            return {"kind": ZN, "n": _int(data["n"], "n")}
        if kind == PRODUCT:
            factors = [normalize_ring_spec(f) for f in data["factors"]]
            if len(factors) < 2:
                raise ParseError("a product needs at least two factors")
            return {"kind": PRODUCT, "factors": factors}
        if kind == POLY_QUOTIENT:
            return {
                "kind": POLY_QUOTIENT,
                "p": _int(data["p"], "p"),
                "caps": [_int(c, "cap") for c in data["caps"]],
                "extra": [str(r).strip() for r in data.get("extra", [])],
            }
        if kind == IDEALIZATION:
            return {
                "kind": IDEALIZATION,
                "ring": normalize_ring_spec(data["ring"]),
                "module": _normalize_module(data["module"]),
            }
    except KeyError as exc:
        raise ParseError(f"{kind} spec missing key {exc}") from exc
    raise ParseError(f"unknown ring kind {kind!r}; expected one of {', '.join(RING_KINDS)}")


def ring_spec_text(spec: dict[str, Any]) -> str:
    """Shorthand for a canonical spec (table modules have none)."""
    kind = spec["kind"]
    if kind == ZN:
        return f"zn:{spec['n']}"
    if kind == PRODUCT:
        return "*".join(ring_spec_text(f) for f in spec["factors"])
    if kind == POLY_QUOTIENT:
        text = f"poly:{spec['p']}:{','.join(str(c) for c in spec['caps'])}"
        return text + (":" + ";".join(spec["extra"]) if spec["extra"] else "")
    module = spec["module"]
    if module["kind"] == "table":
        return f"{ring_spec_text(spec['ring'])}(+)M{module['orders']}"
    suffix = "R" if module["kind"] == "regular" else str(module["d"])
    return f"{ring_spec_text(spec['ring'])}{_IDEALIZATION_MARK}{suffix}"


def module_from_spec(ring: FiniteRing, data: dict[str, Any]) -> ModuleSpec:
    spec = _normalize_module(data)
    if spec["kind"] == "natural":
        return ModuleSpec.natural(ring, spec["d"])
    if spec["kind"] == "regular":
        return ModuleSpec.regular(ring)
    return ModuleSpec(tuple(spec["orders"]), np.asarray(spec["action"], dtype=np.int64))


def build_ring(spec: dict[str, Any], budgets: Budgets = DEFAULT_BUDGETS) -> FiniteRing:
    spec = normalize_ring_spec(spec)
    kind = spec["kind"]
    if kind == ZN:
        return mk_zn(spec["n"], budgets)
    if kind == PRODUCT:
        rings = [build_ring(f, budgets) for f in spec["factors"]]
        ring = rings[0]
        for other in rings[1:]:
            ring = mk_product(ring, other, budgets)
        return ring
    if kind == POLY_QUOTIENT:
        return mk_poly_quotient(spec["p"], spec["caps"], spec["extra"], budgets)
    base = build_ring(spec["ring"], budgets)
    return mk_idealization(base, module_from_spec(base, spec["module"]), budgets)


def parse_ring(text: str, budgets: Budgets = DEFAULT_BUDGETS) -> FiniteRing:
    return build_ring(ring_spec_from_text(text), budgets)


def parse_ideal(ring: FiniteRing, text: str) -> IdealHandle:
    """``gen:a,b``, ``zero`` or ``nil`` (the nilradical)."""
    src = text.strip()
    if src in {"zero", "0", "(0)"}:
        return zero_ideal(ring)
    if src == "nil":
        return ring.nilradical()
    if not src.startswith("gen:"):
        raise ParseError(f"ideal spec must look like gen:a,b, got {text!r}")
    gens = split_top_level(src[4:])
    if not gens:
        raise ParseError("gen: needs at least one generator")
    return ideal_generated(ring, [ring.parse_element(g) for g in gens])


# --- fixtures ---------------------------------------------------------------


@dataclass(frozen=True)
class RingFixture:
    name: str
    spec: dict[str, Any]
    ideals: dict[str, str]
    note: str = ""

    def ring(self, budgets: Budgets = DEFAULT_BUDGETS) -> FiniteRing:
        return build_ring(self.spec, budgets)

    def ideal(self, ring: FiniteRing, name: str | None = None) -> IdealHandle:
        key = name or next(iter(self.ideals), None)
        if key is None or key not in self.ideals:
            raise InvalidParameterError(f"{self.name}: no ideal named {name!r}")
        return parse_ideal(ring, self.ideals[key])

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "kind": "ring",
            "name": self.name,
            "ring": self.spec,
            "ideals": dict(self.ideals),
        }
        if self.note:
            data["note"] = self.note
        return data


@dataclass(frozen=True)
class SeriesFixture:
    name: str
    ring: SeriesRingSpec
    ideals: dict[str, SeriesIdealSpec] = field(default_factory=dict)
    note: str = ""

    def ideal(self, name: str | None = None) -> SeriesIdealSpec:
        if name is None or name == "M":
            return self.ideals.get("M", maximal_ideal(self.ring))
        if name not in self.ideals:
            raise InvalidParameterError(
                f"{self.name}: no ideal named {name!r}; known: M, {', '.join(self.ideals)}"
            )
        return self.ideals[name]

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"kind": SERIES, "name": self.name}
        data.update(self.ring.to_dict())
        data["ideals"] = {k: v.to_dict() for k, v in self.ideals.items()}
        if self.note:
            data["note"] = self.note
        return data


@dataclass(frozen=True)
class MonomialFixture:
    name: str
    ideal: MonomialIdeal
    n_values: tuple[int, ...] = ()
    note: str = ""

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "kind": MONOMIAL,
            "name": self.name,
            "p": self.ideal.p,
            "ideal": self.ideal.describe()[1:-1],
            "n": list(self.n_values),
        }
        if self.note:
            data["note"] = self.note
        return data


@dataclass(frozen=True)
class ValuationFixture:
    """Value groups whose valuation domains are tabulated together."""

    name: str
    groups: tuple[OrderedGroup, ...]
    note: str = ""

    @property
    def tags(self) -> tuple[str, ...]:
        return tuple(g.tag for g in self.groups)

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"kind": VALUATION, "name": self.name, "groups": list(self.tags)}
        if self.note:
            data["note"] = self.note
        return data


Fixture = Union[RingFixture, SeriesFixture, MonomialFixture, ValuationFixture]


def _series_ideal(ring: SeriesRingSpec, name: str, data: Any) -> SeriesIdealSpec:
    if not isinstance(data, dict):
        raise ParseError(f"ideal {name!r} must be an object")
    if "order" in data:
        return order_ideal(ring, _int(data["order"], "order"), name)
    return ideal_from_dict(ring, data, name)


def fixture_from_dict(data: Any, name: str = "") -> Fixture:
    if not isinstance(data, dict):
        raise ParseError("fixture must be a JSON object")
    kind = data.get("kind")
    label = name or str(data.get("name", ""))
    note = str(data.get("note", ""))
    if kind == SERIES:
        ring = ring_from_dict(data, label)
        ideals = {
            key: _series_ideal(ring, key, value)
            for key, value in dict(data.get("ideals", {})).items()
        }
        return SeriesFixture(label, ring, ideals, note)
    if kind == MONOMIAL:
        try:
            ideal = MonomialIdeal.parse(_int(data["p"], "p"), str(data["ideal"]))
        except KeyError as exc:
            raise ParseError(f"monomial fixture missing key {exc}") from exc
        return MonomialFixture(
            label, ideal, tuple(_int(n, "n") for n in data.get("n", [])), note
        )
    if kind == VALUATION:
        groups = data.get("groups")
        if not isinstance(groups, list) or not groups:
            raise ParseError("valuation fixture needs a non-empty 'groups' list")
        try:
            parsed = tuple(OrderedGroup.parse(str(g)) for g in groups)
        except InvalidParameterError as exc:
            raise ParseError(str(exc)) from exc
        return ValuationFixture(label, parsed, note)
    if kind == "ring" or kind in RING_KINDS:
        spec = normalize_ring_spec(data["ring"] if kind == "ring" else data)
        ideals = {str(k): str(v) for k, v in dict(data.get("ideals", {})).items()}
        return RingFixture(label, spec, ideals, note)
    raise ParseError(f"unknown fixture kind {kind!r}")


def load_fixture(path: str | Path) -> Fixture:
    target = Path(path)
    data = read_json(target)
    name = data.get("name", "") if isinstance(data, dict) else ""
    return fixture_from_dict(data, name or target.stem)


def load_series(path: str | Path) -> SeriesFixture:
    target = Path(path)
    fixture = fixture_from_dict(read_json(target))
    if not isinstance(fixture, SeriesFixture):
        raise ParseError(f"{target} does not describe a series ring")
    if not fixture.name:
        fixture = SeriesFixture(target.stem, fixture.ring, fixture.ideals, fixture.note)
    return fixture


def dump_fixture(fixture: Fixture) -> str:
    return json.dumps(fixture.to_dict(), indent=2, sort_keys=True) + "\n"


__all__ = [
    "FIXTURE_KINDS",
    "IDEALIZATION",
    "MONOMIAL",
    "POLY_QUOTIENT",
    "PRODUCT",
    "RING_KINDS",
    "SERIES",
    "ZN",
    "VALUATION",
    "Fixture",
    "MonomialFixture",
    "RingFixture",
    "SeriesFixture",
    "ValuationFixture",
    "build_ring",
    "dump_fixture",
    "fixture_from_dict",
    "load_fixture",
    "load_series",
    "module_from_spec",
    "normalize_ring_spec",
    "parse_ideal",
    "parse_ring",
    "read_json",
    "ring_spec_from_text",
    "ring_spec_text",
    "split_top_level",
]
