"""Ideals of valuation domains with value group from a small catalog.

A proper nonzero ideal is the set of elements whose value lies in an upper set
of the positive cone. Upper sets are described by a cut point in the divisible
hull together with a strictness flag; in rank two the second coordinate may be
one of the sentinels ``-inf`` (no condition) or ``+inf`` (nothing on that
level). Every descriptor is brought into a canonical form, so equality and
containment are plain comparisons.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from .errors import InvalidParameterError, NSemiprimaryError, ParseError
from .logging import get_logger

POS_INF = math.inf
NEG_INF = -math.inf

Coord = Fraction | float

GROUP_TAGS = ("Z", "Q", "Z+Z", "Q+Q", "Z+Q", "Q+Z")

ZERO = "zero"
UNIT = "unit"
CUT = "cut"

_ORACLE_ENABLED = False
WINDOW = 10


class OracleMismatchError(NSemiprimaryError):
    category = "internal"


def enable_oracle(flag: bool = True) -> None:
    """Cross-check every descriptor operation against the windowed lattice oracle."""
    global _ORACLE_ENABLED  # noqa: PLW0603
    _ORACLE_ENABLED = flag


def oracle_enabled() -> bool:
    return _ORACLE_ENABLED


@dataclass(frozen=True)
class OrderedGroup:
    """Lexicographically ordered sum of copies of Z and Q."""

    tag: str

    def __post_init__(self) -> None:
        if self.tag not in GROUP_TAGS:
            raise InvalidParameterError(
                f"unsupported value group {self.tag!r}; choose one of {', '.join(GROUP_TAGS)}"
            )

    @classmethod
    def parse(cls, text: str) -> OrderedGroup:
        return cls(text.strip().replace("⊕", "+").replace(" ", "").upper())

    @property
    def components(self) -> tuple[str, ...]:
        return tuple(self.tag.split("+"))

    @property
    def rank(self) -> int:
        return len(self.components)

    def integral(self, i: int) -> bool:
        return self.components[i] == "Z"

    def contains(self, point: tuple[Fraction, ...]) -> bool:
        if len(point) != self.rank:
            return False
        return all(not self.integral(i) or x.denominator == 1 for i, x in enumerate(point))


def _frac(value: Any) -> Coord:
    if isinstance(value, float) and math.isinf(value):
        return value
    if isinstance(value, str):
        text = value.strip().lower()
        if text in {"inf", "+inf", "∞", "+∞"}:
            return POS_INF
        if text in {"-inf", "-∞"}:
            return NEG_INF
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {value!r}") from exc


def _fmt(x: Coord) -> str:
    if isinstance(x, float):
        return "+inf" if x > 0 else "-inf"
    return str(x)


@dataclass(frozen=True)
class ValIdealDesc:
    group: OrderedGroup
    kind: str
    cut: tuple[Coord, ...] = ()
    strict: bool = False

    @classmethod
    def zero(cls, group: OrderedGroup) -> ValIdealDesc:
        return cls(group, ZERO)

    @classmethod
    def unit(cls, group: OrderedGroup) -> ValIdealDesc:
        return cls(group, UNIT)

    @classmethod
    def make(cls, group: OrderedGroup, cut: tuple[Any, ...], strict: bool) -> ValIdealDesc:
        if len(cut) != group.rank:
            raise InvalidParameterError(f"{group.tag} needs a cut with {group.rank} coordinates")
        coords = tuple(_frac(c) for c in cut)
        if isinstance(coords[0], float):
            raise InvalidParameterError("the first cut coordinate must be rational")
        return canonical(cls(group, CUT, coords, strict))

    @property
    def proper(self) -> bool:
        return self.kind != UNIT

    def key(self) -> tuple[Any, ...]:
        """Sort key; a larger key denotes a smaller set."""
        if self.kind == ZERO:
            return (2,)
        if self.kind == UNIT:
            return (0,)
        if self.group.rank == 1:
            return (1, self.cut[0], int(self.strict))
        c2 = self.cut[1]
        level = (-1, 0) if c2 == NEG_INF else (1, 0) if c2 == POS_INF else (0, c2)
        return (1, self.cut[0], level, int(self.strict))

    def describe(self) -> str:
        if self.kind != CUT:
            return f"{self.group.tag} {self.kind}"
        cut = ",".join(_fmt(c) for c in self.cut)
        return f"{self.group.tag} cut={cut} {'strict' if self.strict else 'nonstrict'}"

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"group": self.group.tag, "kind": self.kind}
        if self.kind == CUT:
            data["cut"] = [_fmt(c) for c in self.cut]
            data["strict"] = self.strict
        return data


def parse_descriptor(text: str) -> ValIdealDesc:
    """Parse ``"Z+Q cut=1/2,0 strict"``, ``"Z cut=3"``, ``"Q+Q zero"`` or ``"Q unit"``."""
    parts = text.split()
    if not parts:
        raise ParseError("empty descriptor")
    group = OrderedGroup.parse(parts[0])
    rest = [p.lower() for p in parts[1:]]
    if rest == [ZERO]:
        return ValIdealDesc.zero(group)
    if rest == [UNIT]:
        return ValIdealDesc.unit(group)
    cut_text = next((p for p in rest if p.startswith("cut=")), None)
    if cut_text is None:
        raise ParseError(f"descriptor {text!r} needs cut=... or zero/unit")
    flags = [p for p in rest if p != cut_text]
    if any(f not in {"strict", "nonstrict", ">", ">="} for f in flags):
        raise ParseError(f"unknown descriptor flag in {text!r}")
    strict = any(f in {"strict", ">"} for f in flags)
    coords = tuple(c for c in re.split(r"[,;]", cut_text[4:]) if c)
    return ValIdealDesc.make(group, coords, strict)


# --- canonical forms ------------------------------------------------------


def _point_in(desc: ValIdealDesc, point: tuple[Fraction, ...]) -> bool:
    """Membership of a value in the upper set (ignores the positive cone)."""
    if desc.kind == ZERO:
        return False
    if desc.kind == UNIT:
        return True
    c = desc.cut
    if desc.group.rank == 1:
        return point[0] > c[0] or (not desc.strict and point[0] == c[0])
    if point[0] != c[0]:
        return point[0] > c[0]
    c2 = c[1]
    if c2 == NEG_INF:
        return True
    if c2 == POS_INF:
        return False
    return point[1] > c2 or (not desc.strict and point[1] == c2)


def canonical(desc: ValIdealDesc) -> ValIdealDesc:
    if desc.kind != CUT:
        return desc
    g = desc.group
    c1 = desc.cut[0]
    assert isinstance(c1, Fraction)
    strict = desc.strict
    if g.rank == 1:
        if g.integral(0):
            c1 = Fraction(math.floor(desc.cut[0]) + 1) if strict else Fraction(math.ceil(desc.cut[0]))
            strict = False
        result = ValIdealDesc(g, CUT, (c1,), strict)
    else:
        c2 = desc.cut[1]
        if c2 == POS_INF:
            strict = True
        elif c2 == NEG_INF:
            strict = False
        # {a > c1} for integral first components
        if g.integral(0):
            if c1.denominator != 1:
                c1, c2, strict = Fraction(math.ceil(c1)), NEG_INF, False
            elif c2 == POS_INF:
                c1, c2, strict = c1 + 1, NEG_INF, False
        if not isinstance(c2, float) and g.integral(1):
            assert isinstance(c2, Fraction)
            c2 = Fraction(math.floor(c2) + 1) if strict else Fraction(math.ceil(c2))
            strict = False
        result = ValIdealDesc(g, CUT, (c1, c2), strict)
    zero_point = tuple(Fraction(0) for _ in range(g.rank))
    if _point_in(result, zero_point):
        return ValIdealDesc.unit(g)
    return result


def maximal_ideal(group: OrderedGroup) -> ValIdealDesc:
    if group.rank == 1:
        return ValIdealDesc.make(group, (0,), True)
    return ValIdealDesc.make(group, (0, 0), True)


def height_one_prime(group: OrderedGroup) -> ValIdealDesc:
    """``P = {x : v(x) has positive first coordinate}`` in rank two."""
    if group.rank != 2:
        raise InvalidParameterError(f"{group.tag} has rank one; its only nonzero prime is M")
    return ValIdealDesc.make(group, (0, POS_INF), True)


# --- operations -----------------------------------------------------------


def vd_contains(inner: ValIdealDesc, outer: ValIdealDesc) -> bool:
    """``inner`` is a subset of ``outer``."""
    if inner.group != outer.group:
        raise InvalidParameterError("descriptors over different groups")
    result = inner.key() >= outer.key()
    if _ORACLE_ENABLED:
        _oracle_containment(inner, outer, result)
    return result


def vd_member(desc: ValIdealDesc, value: tuple[Any, ...]) -> bool:
    """Whether an element of value ``value`` (in the positive cone) lies in the ideal."""
    point = tuple(Fraction(v) for v in value)
    if not desc.group.contains(point):
        raise InvalidParameterError(f"{value} is not in {desc.group.tag}")
    if any(point) and point <= tuple(Fraction(0) for _ in point):
        raise InvalidParameterError("values of ring elements are non-negative")
    return _point_in(canonical(desc), point)


def vd_power(desc: ValIdealDesc, n: int) -> ValIdealDesc:
    if n < 1:
        raise InvalidParameterError("power needs n >= 1")
    d = canonical(desc)
    if d.kind != CUT:
        return d
    scaled = tuple(c * n for c in d.cut)
    result = canonical(ValIdealDesc(d.group, CUT, scaled, d.strict))
    if _ORACLE_ENABLED:
        _oracle_power(d, n, result)
    return result


def vd_sqrt(desc: ValIdealDesc) -> ValIdealDesc:
    d = canonical(desc)
    if d.kind == UNIT:
        raise InvalidParameterError("the unit ideal has no proper radical")
    if d.kind == ZERO:
        return d
    if d.group.rank == 1:
        result = maximal_ideal(d.group)
    elif d.cut[0] > 0 or d.cut[1] == POS_INF:
        result = height_one_prime(d.group)
    else:
        result = maximal_ideal(d.group)
    if _ORACLE_ENABLED:
        _oracle_sqrt(d, result)
    return result


def vd_is_n_semiprimary(desc: ValIdealDesc, n: int) -> bool:
    """Radical prime with ``sqrt(I)^n`` inside I; the zero ideal of a domain is prime."""
    d = canonical(desc)
    if d.kind == UNIT:
        raise InvalidParameterError("the unit ideal is not proper")
    if d.kind == ZERO:
        return True
    return vd_contains(vd_power(vd_sqrt(d), n), d)


def vd_delta(desc: ValIdealDesc, max_n: int = 16) -> int | None:
    for n in range(1, max_n + 1):
        if vd_is_n_semiprimary(desc, n):
            return n
    return None


# --- windowed oracle ------------------------------------------------------


@dataclass(frozen=True)
class _Grid:
    """Lattice points ``origin + index * step`` per coordinate."""

    steps: tuple[Fraction, ...]
    lows: tuple[Fraction, ...]
    shape: tuple[int, ...]

    def point(self, index: tuple[int, ...]) -> tuple[Fraction, ...]:
        return tuple(lo + i * s for lo, s, i in zip(self.lows, self.steps, index))

    def mask(self, desc: ValIdealDesc) -> np.ndarray:
        out = np.zeros(self.shape, dtype=bool)
        for index in np.ndindex(*self.shape):
            out[index] = _point_in(desc, self.point(index))
        return out


def _steps(group: OrderedGroup, fine: int) -> tuple[Fraction, ...]:
    return tuple(
        Fraction(1) if group.integral(i) else Fraction(1, 2 * fine) for i in range(group.rank)
    )


def _coarse(group: OrderedGroup) -> _Grid:
    steps = _steps(group, 1)
    lows = (Fraction(0),) + tuple(Fraction(-WINDOW) for _ in range(group.rank - 1))
    shape = tuple(int((Fraction(WINDOW) - lo) / s) + 1 for lo, s in zip(lows, steps))
    return _Grid(steps, lows, shape)


def _positive(grid: _Grid) -> np.ndarray:
    zero = tuple(Fraction(0) for _ in grid.shape)
    out = np.zeros(grid.shape, dtype=bool)
    for index in np.ndindex(*grid.shape):
        out[index] = grid.point(index) > zero
    return out


def _sumset(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    shape = tuple(x + y - 1 for x, y in zip(a.shape, b.shape))
    axes = tuple(range(len(shape)))
    fa = np.fft.rfftn(a.astype(float), shape, axes)
    fb = np.fft.rfftn(b.astype(float), shape, axes)
    return np.fft.irfftn(fa * fb, shape, axes) > 0.5


def _oracle_power(desc: ValIdealDesc, n: int, predicted: ValIdealDesc) -> None:
    group = desc.group
    coarse = _coarse(group)
    steps = _steps(group, n)
    lows = (Fraction(0),) + tuple(Fraction(-(n + 1) * WINDOW) for _ in range(group.rank - 1))
    highs = (Fraction(WINDOW),) + tuple(Fraction((n + 1) * WINDOW) for _ in range(group.rank - 1))
    shape = tuple(int((hi - lo) / s) + 1 for lo, hi, s in zip(lows, highs, steps))
    parts = _Grid(steps, lows, shape)
    part_mask = parts.mask(desc) & _positive(parts)
    total = part_mask
    for _ in range(n - 1):
        total = _sumset(total, part_mask)
    sum_lows = tuple(lo * n for lo in lows)
    for index in np.ndindex(*coarse.shape):
        point = coarse.point(index)
        if point <= tuple(Fraction(0) for _ in point):
            continue
        pos = tuple(int((x - lo) / s) for x, lo, s in zip(point, sum_lows, steps))
        found = bool(total[pos]) if all(0 <= p < m for p, m in zip(pos, total.shape)) else False
        if found != _point_in(predicted, point):
            raise OracleMismatchError(
                f"power {n} of {desc.describe()}: point {point} disagrees with {predicted.describe()}"
            )


def _oracle_sqrt(desc: ValIdealDesc, predicted: ValIdealDesc) -> None:
    coarse = _coarse(desc.group)
    bound = 8 * WINDOW
    for index in np.ndindex(*coarse.shape):
        point = coarse.point(index)
        if point <= tuple(Fraction(0) for _ in point):
            continue
        hit = any(_point_in(desc, tuple(k * x for x in point)) for k in range(1, bound + 1))
        if hit != _point_in(predicted, point):
            raise OracleMismatchError(
                f"radical of {desc.describe()}: point {point} disagrees with {predicted.describe()}"
            )


def _oracle_containment(inner: ValIdealDesc, outer: ValIdealDesc, result: bool) -> None:
    if not result:
        return
    coarse = _coarse(inner.group)
    for index in np.ndindex(*coarse.shape):
        point = coarse.point(index)
        if _point_in(inner, point) and not _point_in(outer, point):
            raise OracleMismatchError(
                f"{inner.describe()} claimed inside {outer.describe()} but {point} is not"
            )


# --- example table ---------------------------------------------------------

FAMILY_ZERO = "zero"
FAMILY_P = "P"
FAMILY_M = "M"
FAMILY_BELOW = "below P"
FAMILY_BETWEEN = "between P and M"
FAMILY_OTHER = "other proper"


def family_samples(group: OrderedGroup) -> dict[str, list[ValIdealDesc]]:
    """Representative descriptors for each family of ideals."""
    zero = [ValIdealDesc.zero(group)]
    m = [maximal_ideal(group)]
    if group.rank == 1:
        if group.integral(0):
            other = [ValIdealDesc.make(group, (k,), False) for k in (2, 3, 5)]
        else:
            other = [
                ValIdealDesc.make(group, (1,), False),
                ValIdealDesc.make(group, (Fraction(1, 2),), True),
                ValIdealDesc.make(group, (3,), True),
            ]
        return {FAMILY_ZERO: zero, FAMILY_M: m, FAMILY_OTHER: other}
    below = [
        ValIdealDesc.make(group, (1, NEG_INF), False),
        ValIdealDesc.make(group, (1, 0), True),
        ValIdealDesc.make(group, (2, 3), False),
        ValIdealDesc.make(group, (1, POS_INF), True),
    ]
    if not group.integral(0):
        below.append(ValIdealDesc.make(group, (Fraction(1, 2), NEG_INF), False))
    between = [
        ValIdealDesc.make(group, (0, 2), False),
        ValIdealDesc.make(group, (0, 5), True),
    ]
    if not group.integral(1):
        between.append(ValIdealDesc.make(group, (0, Fraction(1, 2)), True))
    p = height_one_prime(group)
    named = {p.key(), m[0].key()}
    return {
        FAMILY_ZERO: zero,
        FAMILY_P: [p],
        FAMILY_M: m,
        FAMILY_BELOW: [d for d in below if d.kind == CUT and d.key() not in named],
        FAMILY_BETWEEN: [d for d in between if d.kind == CUT and d.key() not in named],
    }


@dataclass(frozen=True)
class TableRow:
    family: str
    samples: tuple[tuple[str, int | None], ...]
    verdict: str

    @property
    def semiprimary_label(self) -> str:
        return self.verdict

    @property
    def powerful_label(self) -> str:
        # the two notions agree on valuation domains
        return self.verdict

    def to_dict(self) -> dict[str, Any]:
        return {
            "family": self.family,
            "n_semiprimary": self.semiprimary_label,
            "n_powerful_semiprimary": self.powerful_label,
            "samples": [
                {"ideal": name, "min_n": "inf" if n is None else n} for name, n in self.samples
            ],
        }


@dataclass(frozen=True)
class ExampleTable:
    group: str
    rows: tuple[TableRow, ...]
    summary: str

    def row(self, family: str) -> TableRow:
        for row in self.rows:
            if row.family == family:
                return row
        raise KeyError(family)

    def to_dict(self) -> dict[str, Any]:
        return {
            "group": self.group,
            "rows": [r.to_dict() for r in self.rows],
            "summary": self.summary,
        }


def _summary(group: OrderedGroup, rows: tuple[TableRow, ...]) -> str:
    yes = [r.family for r in rows if r.verdict == "yes"]
    if len(yes) == len(rows):
        return f"{group.tag}: every proper ideal is n-semiprimary for some n"
    return f"{group.tag}: only the ideals in families {', '.join(yes)} are n-semiprimary for some n"


def vd_example_table(tag: str, max_n: int = 16) -> ExampleTable:
    group = OrderedGroup.parse(tag)
    rows = []
    for family, samples in family_samples(group).items():
        results = tuple((d.describe(), vd_delta(d, max_n)) for d in samples)
        hits = sum(1 for _, n in results if n is not None)
        verdict = "yes" if hits == len(results) else "no" if hits == 0 else "some"
        rows.append(TableRow(family, results, verdict))
    table_rows = tuple(rows)
    get_logger().log_operation("vd_example_table", group=group.tag)
    return ExampleTable(group.tag, table_rows, _summary(group, table_rows))


__all__ = [
    "FAMILY_BELOW",
    "FAMILY_BETWEEN",
    "FAMILY_M",
    "FAMILY_OTHER",
    "FAMILY_P",
    "FAMILY_ZERO",
    "GROUP_TAGS",
    "NEG_INF",
    "POS_INF",
    "ExampleTable",
    "OracleMismatchError",
    "OrderedGroup",
    "TableRow",
    "ValIdealDesc",
    "canonical",
    "enable_oracle",
    "family_samples",
    "height_one_prime",
    "maximal_ideal",
    "oracle_enabled",
    "parse_descriptor",
    "vd_contains",
    "vd_delta",
    "vd_example_table",
    "vd_is_n_semiprimary",
    "vd_member",
    "vd_power",
    "vd_sqrt",
]
