"""Named fixtures and the seeded audit corpus.

Fixtures are kept here as plain dictionaries; ``fixtures/*.json`` in the
repository are exported copies and a test keeps the two in step.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from typing import Any

import numpy as np
import sympy

from .config import PROFILES, AuditSettings
from .errors import InvalidParameterError
from .fields import CoeffField
from .locations import fixture_aliases
from .series import SeriesRingSpec
from .specs import (
    Fixture,
    MonomialFixture,
    RingFixture,
    SeriesFixture,
    ValuationFixture,
    fixture_from_dict,
    normalize_ring_spec,
    ring_spec_from_text,
    ring_spec_text,
)

_SERIES: dict[str, dict[str, Any]] = {
    "z2_x2_x5": {
        "field": "F2",
        "conductor": 4,
        "slots": {"0": "F2", "1": "0", "2": "F2", "3": "0"},
        "ideals": {"I": {"order": 4}},
        "note": "F2[[X^2,X^5]]; the maximal ideal is n-powerful semiprimary exactly off {1, 3}",
    },
    "z2_x2_x3": {
        "field": "F2",
        "conductor": 2,
        "slots": {"0": "F2", "1": "0"},
        "note": "F2[[X^2,X^3]]; an n-VD exactly for even n",
    },
    "z3_x2_x3": {
        "field": "F3",
        "conductor": 2,
        "slots": {"0": "F3", "1": "0"},
        "note": "F3[[X^2,X^3]]; M is generated by A_2(M) in odd characteristic",
    },
    "z3_z3x9_x12": {
        "field": "F3",
        "conductor": 12,
        "slots": {"0": "F3", "9": "F3"},
        "note": "F3 + F3X^9 + X^12F3[[X]]; (M:M) = F3 + X^3F3[[X]]",
    },
    "z2_z2x_x2f4": {
        "field": "F4",
        "conductor": 2,
        "slots": {"0": "F2", "1": "F2"},
        "note": "F2 + F2X + X^2F4[[X]]; not a PnVD for any n",
    },
    "z3_z3x_x2f9": {
        "field": "F9",
        "conductor": 2,
        "slots": {"0": "F3", "1": "F3"},
        "note": "F3 + F3X + X^2F9[[X]]; not a PnVD for any n",
    },
    "z2_x3_x4_x5": {
        "field": "F2",
        "conductor": 3,
        "slots": {"0": "F2"},
        "note": "F2 + X^3F2[[X]]; an n-PVD exactly for n >= 3",
    },
    "z2_x4_x5_x6_x7": {
        "field": "F2",
        "conductor": 4,
        "slots": {"0": "F2"},
        "note": "F2 + X^4F2[[X]]; an n-PVD exactly for n >= 4",
    },
    "z2_f4x2_x4f4": {
        "field": "F4",
        "conductor": 4,
        "slots": {"0": "F2", "2": "F4"},
        "note": "F2 + F4X^2 + X^4F4[[X]]",
    },
    "z2_z2x2_x3f4": {
        "field": "F4",
        "conductor": 3,
        "slots": {"0": "F2", "2": "F2"},
        "note": "F2 + F2X^2 + X^3F4[[X]]",
    },
    "z2_xf4": {
        "field": "F4",
        "conductor": 1,
        "slots": {"0": "F2"},
        "note": "F2 + XF4[[X]], the pullback of F4[[X]] along F2",
    },
    "f4_x": {
        "field": "F4",
        "conductor": 0,
        "slots": {},
        "note": "F4[[X]], a discrete valuation ring",
    },
}

_RINGS: dict[str, dict[str, Any]] = {
    "z4_x_z2": {
        "ring": "zn:4*zn:2",
        "ideals": {"I": "gen:(0,1)"},
        "note": "{0} x Z2 is 2-semiprimary, not prime, and misses the nilradical",
    },
    "z36_ideal_6": {
        "ring": "zn:36",
        "ideals": {"I": "gen:6"},
        "note": "(6) has a radical that is not prime",
    },
    "poly_x2_y2_caps44": {
        "ring": "poly:2:4,4:X^2*Y^2",
        "ideals": {"I": "gen:X^2,Y^2"},
        "note": "2-semiprimary but neither 2-absorbing nor strongly 2-semiprimary",
    },
}

_MONOMIALS: dict[str, dict[str, Any]] = {
    "mono_x2_y2": {"p": 2, "ideal": "X^2, Y^2", "n": [2]},
    "mono_xy_y2": {"p": 2, "ideal": "X*Y, Y^2", "n": [2]},
    "mono_xy_y3": {"p": 2, "ideal": "X*Y, Y^3", "n": [3]},
    "mono_xy_y4": {"p": 2, "ideal": "X*Y, Y^4", "n": [4]},
    "mono_x3_y3_p3": {"p": 3, "ideal": "X^3, Y^3", "n": [3]},
}

_VALUATIONS: dict[str, dict[str, Any]] = {
    "valuation_groups": {
        "groups": ["Z", "Q", "Z+Z", "Q+Q", "Z+Q", "Q+Z"],
        "note": "value groups of rank at most two; one valuation domain per group",
    },
}


def fixture_data(name: str) -> dict[str, Any]:
    """The exportable document for fixture *name*; an alias keeps its own name."""
    target = fixture_aliases().get(name)
    if target is not None:
        return {**fixture_data(target), "name": name}
    if name in _SERIES:
        return {"kind": "series", "name": name, **_SERIES[name]}
    if name in _RINGS:
        data = dict(_RINGS[name])
        return {"kind": "ring", "name": name, **data, "ring": ring_spec_from_text(data["ring"])}
    if name in _MONOMIALS:
        return {"kind": "monomial", "name": name, **_MONOMIALS[name]}
    if name in _VALUATIONS:
        return {"kind": "valuation", "name": name, **_VALUATIONS[name]}
    raise InvalidParameterError(f"unknown fixture {name!r}")


def fixture_names() -> list[str]:
    return [*_RINGS, *_MONOMIALS, *_SERIES, *_VALUATIONS]


def exported_names() -> list[str]:
    """Catalog names followed by the location-named aliases."""
    return [*fixture_names(), *fixture_aliases()]


def get_fixture(name: str) -> Fixture:
    return fixture_from_dict(fixture_data(name), name)


def series_fixture(name: str) -> SeriesFixture:
    fixture = get_fixture(name)
    if not isinstance(fixture, SeriesFixture):
        raise InvalidParameterError(f"{name} is not a series fixture")
    return fixture


def ring_fixture(name: str) -> RingFixture:
    fixture = get_fixture(name)
    if not isinstance(fixture, RingFixture):
        raise InvalidParameterError(f"{name} is not a finite ring fixture")
    return fixture


def monomial_fixture(name: str) -> MonomialFixture:
    fixture = get_fixture(name)
    if not isinstance(fixture, MonomialFixture):
        raise InvalidParameterError(f"{name} is not a monomial fixture")
    return fixture


def valuation_fixture(name: str) -> ValuationFixture:
    fixture = get_fixture(name)
    if not isinstance(fixture, ValuationFixture):
        raise InvalidParameterError(f"{name} is not a valuation fixture")
    return fixture


# --- ring families built per field ------------------------------------------


def prime_slots_ring(field: CoeffField) -> SeriesRingSpec:
    """``F_p + F_pX + X^2F_q[[X]]``; a power series ring when q = p."""
    prime = field.subfield(1)
    return SeriesRingSpec.make(field, [prime, prime], f"F{field.p} + F{field.p}X + X^2{field.name}[[X]]")


def gap_ring(field: CoeffField, conductor: int) -> SeriesRingSpec:
    """``F + X^N F[[X]]`` with the full field in the constant slot."""
    if conductor < 1:
        raise InvalidParameterError("gap rings need a positive conductor")
    masks = [field.full()] + [field.zero_space() for _ in range(1, conductor)]
    return SeriesRingSpec.make(field, masks, f"{field.name} + X^{conductor}{field.name}[[X]]")


# --- corpus -----------------------------------------------------------------


@dataclass(frozen=True)
class CorpusItem:
    name: str
    kind: str
    spec: dict[str, Any]
    source: str = "generated"

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "kind": self.kind, "source": self.source}


@dataclass(frozen=True)
class Corpus:
    profile: str
    seed: int
    items: tuple[CorpusItem, ...]

    def rings(self) -> Iterator[CorpusItem]:
        return (i for i in self.items if i.kind == "ring")

    def by_source(self, source: str) -> Iterator[CorpusItem]:
        return (i for i in self.items if i.source == source)

    def fixtures(self) -> list[str]:
        return [i.name for i in self.items if i.source == "fixture"]

    def manifest(self) -> dict[str, Any]:
        return {
            "profile": self.profile,
            "seed": self.seed,
            "rings": sum(1 for _ in self.rings()),
            "items": [i.to_dict() for i in self.items],
        }


def _ring_item(text: str, source: str = "generated") -> CorpusItem:
    spec = normalize_ring_spec(ring_spec_from_text(text))
    return CorpusItem(ring_spec_text(spec), "ring", spec, source)


def _products(limit: int) -> list[str]:
    return [
        f"zn:{a}*zn:{b}" for a in range(2, limit) for b in range(2, limit) if a <= b and a * b <= limit
    ]


def _natural_idealizations(max_n: int, limit: int) -> list[str]:
    return [
        f"zn:{n}(+){int(d)}"
        for n in range(2, max_n + 1)
        for d in sympy.divisors(n)
        if d > 1 and n * d <= limit
    ]


def _sample(rng: np.random.Generator, pool: list[str], k: int) -> list[str]:
    if len(pool) <= k:
        return pool
    picks = sorted(rng.choice(len(pool), size=k, replace=False).tolist())
    return [pool[i] for i in picks]


_POLY = {
    "small": ["poly:2:2", "poly:2:3", "poly:2:2,2", "poly:3:2"],
    "default": [
        "poly:2:2", "poly:2:3", "poly:2:4", "poly:2:2,2", "poly:2:2,3", "poly:2:3,3",
        "poly:3:2", "poly:3:3", "poly:3:2,2",
    ],
    "large": [
        "poly:2:2", "poly:2:3", "poly:2:4", "poly:2:2,2", "poly:2:2,3", "poly:2:3,3",
        "poly:2:3,4", "poly:2:4,4", "poly:2:2,2,3", "poly:3:2", "poly:3:3", "poly:3:2,2",
        "poly:3:2,3",
    ],
}


def corpus_generate(profile: str = "default", seed: int = AuditSettings.seed) -> Corpus:
    """Deterministic corpus; only the sampled products and idealizations depend on *seed*."""
    if profile not in PROFILES:
        raise InvalidParameterError(f"profile must be one of {', '.join(PROFILES)}")
    rng = np.random.default_rng(seed)
    texts: list[str] = []
    if profile == "small":
        texts += [f"zn:{n}" for n in range(2, 17)]
        texts += _products(16)
        texts += _POLY["small"]
        texts += _natural_idealizations(16, 32)
        texts += [f"zn:{n}(+)R" for n in (2, 3, 4)] + ["poly:2:2(+)R"]
    else:
        texts += [f"zn:{n}" for n in range(2, 65)]
        products = _products(256)
        natural = _natural_idealizations(64, 256)
        if profile == "default":
            products = _sample(rng, products, 24)
            natural = _sample(rng, natural, 16)
        texts += products
        texts += _POLY[profile]
        texts += natural
        texts += [f"zn:{n}(+)R" for n in range(2, 9)] + ["poly:2:2(+)R", "poly:2:2,2(+)R"]
    items: list[CorpusItem] = []
    seen: set[str] = set()
    for text in texts:
        item = _ring_item(text)
        if item.name not in seen:
            seen.add(item.name)
            items.append(item)
    for name in fixture_names():
        data = fixture_data(name)
        spec = data["ring"] if data["kind"] == "ring" else data
        items.append(CorpusItem(name, data["kind"], spec, "fixture"))
    return Corpus(profile, seed, tuple(items))


__all__ = [
    "Corpus",
    "CorpusItem",
    "corpus_generate",
    "exported_names",
    "fixture_data",
    "fixture_names",
    "gap_ring",
    "get_fixture",
    "monomial_fixture",
    "prime_slots_ring",
    "ring_fixture",
    "series_fixture",
    "valuation_fixture",
]
