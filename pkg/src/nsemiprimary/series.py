"""Graded subrings of F_q[[X]] and their ideals, plus truncated Laurent series.

A ring spec fixes, for each exponent below its conductor, the F_p-subspace of
F_q that the coefficient of that exponent must lie in; beyond the conductor
every coefficient is free. Ideal specs work the same way inside a ring spec.
All of these rings are local one-dimensional domains with quotient field
F_q((X)).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Any

import numpy as np

from .errors import InvalidParameterError, ParseError, PrecisionError, SpecViolationError
from .fields import CoeffField, coeff_field, parse_field

DEFAULT_PRECISION = 32


# --- batched coefficient arithmetic ----------------------------------------


def mul_trunc(field: CoeffField, a: np.ndarray, b: np.ndarray, length: int) -> np.ndarray:
    """Product of coefficient arrays (last axis = exponent) modulo ``X^length``.

    Leading axes broadcast, so ``a[:, None]`` against ``b[None, :]`` gives all pairs.
    """
    la, lb = a.shape[-1], b.shape[-1]
    shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1])
    out = np.zeros(shape + (length,), dtype=np.int64)
    for j in range(length):
        acc = np.zeros(shape, dtype=np.int64)
        for i in range(max(0, j - lb + 1), min(j, la - 1) + 1):
            acc = field.add[acc, field.mul[a[..., i], b[..., j - i]]]
        out[..., j] = acc
    return out


def pow_trunc(field: CoeffField, a: np.ndarray, n: int, length: int) -> np.ndarray:
    if n < 0:
        raise InvalidParameterError("use inv_trunc for negative powers")
    result = np.zeros(a.shape[:-1] + (length,), dtype=np.int64)
    result[..., 0] = 1
    base = fit_length(a, length)
    while n:
        if n & 1:
            result = mul_trunc(field, result, base, length)
        n >>= 1
        if n:
            base = mul_trunc(field, base, base, length)
    return result


def inv_trunc(field: CoeffField, a: np.ndarray, length: int) -> np.ndarray:
    """Inverse of unit power series (nonzero constant term) modulo ``X^length``."""
    if np.any(a[..., 0] == 0):
        raise ZeroDivisionError("power series with zero constant term is not a unit")
    la = a.shape[-1]
    out = np.zeros(a.shape[:-1] + (length,), dtype=np.int64)
    lead = field.inv[a[..., 0]]
    out[..., 0] = lead
    for j in range(1, length):
        acc = np.zeros(a.shape[:-1], dtype=np.int64)
        for i in range(1, min(j, la - 1) + 1):
            acc = field.add[acc, field.mul[a[..., i], out[..., j - i]]]
        out[..., j] = field.mul[field.neg[acc], lead]
    return out


def fit_length(a: np.ndarray, length: int) -> np.ndarray:
    if a.shape[-1] >= length:
        return a[..., :length]
    pad = np.zeros(a.shape[:-1] + (length - a.shape[-1],), dtype=np.int64)
    return np.concatenate([a, pad], axis=-1)


# --- Laurent elements ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TruncatedLaurent:
    """``X^order * (c_0 + c_1 X + ...)`` with coefficients known below ``top``.

    ``top`` is ``None`` for exact elements (Laurent polynomials). The leading
    coefficient is nonzero unless the element is zero.
    """

    field: CoeffField
    order: int
    coeffs: tuple[int, ...]
    top: int | None = None

    @classmethod
    def zero(cls, field: CoeffField) -> TruncatedLaurent:
        return cls(field, 0, ())

    @classmethod
    def from_terms(cls, field: CoeffField, terms: dict[int, int]) -> TruncatedLaurent:
        live = {e: int(c) % field.q for e, c in terms.items() if int(c) % field.q}
        if not live:
            return cls.zero(field)
        lo, hi = min(live), max(live)
        return cls(field, lo, tuple(live.get(e, 0) for e in range(lo, hi + 1)))

    @classmethod
    def monomial(cls, field: CoeffField, coeff: int, exponent: int) -> TruncatedLaurent:
        return cls.from_terms(field, {exponent: coeff})

    @classmethod
    def parse(cls, field: CoeffField, text: str) -> TruncatedLaurent:
        """Parse ``"1+X"``, ``"X^-2"``, ``"aX^3 + (a+1)X"``."""
        body = text.replace(" ", "").replace("*", "")
        if not body:
            raise ParseError("empty Laurent element")
        terms: dict[int, int] = {}
        for raw in _split_terms(body):
            if not raw:
                raise ParseError(f"bad Laurent element {text!r}")
            coeff_text, _, exp_text = raw.partition("X")
            if "X" in raw:
                match = re.fullmatch(r"(?:\^(-?\d+))?", exp_text)
                if match is None:
                    raise ParseError(f"bad exponent in Laurent term {raw!r}")
                exp = int(match.group(1) or 1)
            else:
                exp = 0
            coeff_text = coeff_text.removeprefix("(").removesuffix(")")
            coeff = field.parse(coeff_text) if coeff_text else 1
            terms[exp] = int(field.add[terms.get(exp, 0), coeff])
        return cls.from_terms(field, terms)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs and self.top is None

    @property
    def exact(self) -> bool:
        return self.top is None

    def known_until(self) -> float:
        return float("inf") if self.top is None else self.top

    def coefficient(self, e: int) -> int:
        if e < self.order:
            return 0
        if self.top is not None and e >= self.top:
            raise PrecisionError(f"coefficient of X^{e} is beyond the known precision {self.top}")
        idx = e - self.order
        return self.coeffs[idx] if idx < len(self.coeffs) else 0

    def unit_part(self, length: int) -> np.ndarray:
        return fit_length(np.asarray(self.coeffs, dtype=np.int64), length)

    def __str__(self) -> str:
        return format_laurent(self.field, self.order, self.coeffs, self.top)


def _split_terms(body: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "+" and depth == 0:
            parts.append(body[start:i])
            start = i + 1
    parts.append(body[start:])
    return parts


def format_laurent(
    field: CoeffField, order: int, coeffs: tuple[int, ...] | np.ndarray, top: int | None = None
) -> str:
    terms = []
    for i, c in enumerate(coeffs):
        c = int(c)
        if not c:
            continue
        e = order + i
        cs = field.format(c)
        if "+" in cs:
            cs = f"({cs})"
        mono = "" if e == 0 else "X" if e == 1 else f"X^{e}"
        if not mono:
            terms.append(cs)
        else:
            terms.append(mono if c == 1 else f"{cs}{mono}")
    text = " + ".join(terms) or "0"
    if top is not None:
        text += f" + O(X^{top})"
    return text


def _normalize(
    field: CoeffField, order: int, coeffs: np.ndarray, top: int | None
) -> TruncatedLaurent:
    nz = np.flatnonzero(coeffs)
    if nz.size == 0:
        if top is None:
            return TruncatedLaurent.zero(field)
        raise PrecisionError(f"element vanishes below X^{top}; its order is unknown")
    first = int(nz[0])
    if top is None:
        last = int(nz[-1])
        return TruncatedLaurent(field, order + first, tuple(int(c) for c in coeffs[first : last + 1]))
    return TruncatedLaurent(field, order + first, tuple(int(c) for c in coeffs[first:]), top)


def laurent_mul(x: TruncatedLaurent, y: TruncatedLaurent) -> TruncatedLaurent:
    field = x.field
    if x.is_zero or y.is_zero:
        return TruncatedLaurent.zero(field)
    order = x.order + y.order
    tops = [t for t in (
        None if x.top is None else x.top + y.order,
        None if y.top is None else y.top + x.order,
    ) if t is not None]
    top = min(tops) if tops else None
    length = len(x.coeffs) + len(y.coeffs) - 1 if top is None else top - order
    if length <= 0:
        raise PrecisionError("product has no known coefficients")
    a = np.asarray(x.coeffs, dtype=np.int64)
    b = np.asarray(y.coeffs, dtype=np.int64)
    return _normalize(field, order, mul_trunc(field, a, b, length), top)


def laurent_inv(x: TruncatedLaurent, precision: int = DEFAULT_PRECISION) -> TruncatedLaurent:
    if x.is_zero:
        raise ZeroDivisionError("zero has no inverse")
    terms = precision if x.top is None else min(precision, x.top - x.order)
    unit = np.asarray(x.coeffs, dtype=np.int64)
    if len(unit) == 1 and x.top is None:
        return TruncatedLaurent(x.field, -x.order, (int(x.field.inv[unit[0]]),))
    inv = inv_trunc(x.field, unit, terms)
    return _normalize(x.field, -x.order, inv, -x.order + terms)


def laurent_pow(x: TruncatedLaurent, n: int, precision: int = DEFAULT_PRECISION) -> TruncatedLaurent:
    if n < 0:
        return laurent_pow(laurent_inv(x, precision), -n, precision)
    result = TruncatedLaurent.monomial(x.field, 1, 0)
    base = x
    while n:
        if n & 1:
            result = laurent_mul(result, base)
        n >>= 1
        if n:
            base = laurent_mul(base, base)
    return result


def laurent_arith(
    kind: str, *args: TruncatedLaurent, n: int = 1, precision: int = DEFAULT_PRECISION
) -> TruncatedLaurent:
    """``mul`` of two elements, ``pow`` by ``n`` or ``inv`` of one element."""
    if kind == "mul":
        x, y = args
        return laurent_mul(x, y)
    if kind == "pow":
        (x,) = args
        return laurent_pow(x, n, precision)
    if kind == "inv":
        (x,) = args
        return laurent_inv(x, precision)
    raise InvalidParameterError(f"unknown Laurent operation {kind!r}")


# --- specs -------------------------------------------------------------------


def _trim(field: CoeffField, masks: list[np.ndarray]) -> list[np.ndarray]:
    while masks and bool(masks[-1].all()):
        masks = masks[:-1]
    return masks


class _Graded:
    field: CoeffField
    slots: tuple[tuple[int, ...], ...]

    @property
    def conductor(self) -> int:
        return len(self.slots)

    @cached_property
    def masks(self) -> np.ndarray:
        out = np.zeros((self.conductor, self.field.q), dtype=bool)
        for e, elems in enumerate(self.slots):
            out[e, list(elems)] = True
        return out

    def slot(self, e: int) -> np.ndarray:
        if e < 0:
            return self.field.zero_space()
        if e >= self.conductor:
            return self.field.full()
        return self.masks[e]

    def terms_text(self, tail_field: str) -> str:
        parts = []
        for e in range(self.conductor):
            mask = self.masks[e]
            if mask.sum() == 1:
                continue
            space = self.field.describe_space(mask)
            parts.append(space if e == 0 else f"{space}X" if e == 1 else f"{space}X^{e}")
        c = self.conductor
        tail = f"{tail_field}[[X]]" if c == 0 else f"X{tail_field}[[X]]" if c == 1 else f"X^{c}{tail_field}[[X]]"
        parts.append(tail)
        return " + ".join(parts)

    def slots_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {}
        for e in range(self.conductor):
            mask = self.masks[e]
            text = self.field.describe_space(mask)
            out[str(e)] = (
                text
                if not text.startswith("<")
                else [self.field.format(b) for b in self.field.basis(mask)]
            )
        return out

    def contains(self, x: TruncatedLaurent) -> bool:
        """Exact membership; refuses when the coefficients it needs are unknown."""
        if x.is_zero:
            return True
        if x.order < 0:
            return False
        c = self.conductor
        if x.order >= c:
            return True
        if x.top is not None and x.top < c:
            raise PrecisionError(
                f"membership needs coefficients below X^{c}, known only below X^{x.top}"
            )
        return all(self.masks[e, x.coefficient(e)] for e in range(x.order, c))

    def contains_batch(self, orders: np.ndarray, units: np.ndarray) -> np.ndarray:
        """Membership of ``X^orders[i] * units[i]``; ``units`` must cover up to the conductor."""
        orders = np.asarray(orders, dtype=np.int64)
        c = self.conductor
        ok = orders >= 0
        need = np.clip(c - orders, 0, None)
        if units.shape[-1] < int(need[ok].max(initial=0)):
            raise PrecisionError("batched membership needs longer unit expansions")
        for e in range(c):
            rows = ok & (orders <= e)
            if not rows.any():
                continue
            idx = e - orders[rows]
            ok[rows] &= self.masks[e, units[rows, idx]]
        return ok


def _masks_to_slots(masks: list[np.ndarray]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in np.flatnonzero(m)) for m in masks)


@dataclass(frozen=True, eq=False)
class SeriesRingSpec(_Graded):
    field: CoeffField
    slots: tuple[tuple[int, ...], ...]
    name: str = ""

    @classmethod
    def make(cls, field: CoeffField, masks: list[np.ndarray], name: str = "") -> SeriesRingSpec:
        spec = cls(field, _masks_to_slots(_trim(field, list(masks))), name)
        validate_spec(spec)
        return spec

    @classmethod
    def power_series(cls, field: CoeffField, name: str = "") -> SeriesRingSpec:
        return cls(field, (), name)

    def key(self) -> tuple[Any, ...]:
        return (self.field.q, self.slots)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SeriesRingSpec) and other.key() == self.key()

    def __hash__(self) -> int:
        return hash(self.key())

    @property
    def valuation_type(self) -> bool:
        return self.conductor == 0

    def describe(self) -> str:
        return self.terms_text(self.field.name)

    def label(self) -> str:
        return self.name or self.describe()

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": "series",
            "field": self.field.name,
            "conductor": self.conductor,
            "slots": self.slots_dict(),
        }


@dataclass(frozen=True, eq=False)
class SeriesIdealSpec(_Graded):
    ring: SeriesRingSpec
    slots: tuple[tuple[int, ...], ...]
    name: str = ""

    @property
    def field(self) -> CoeffField:  # type: ignore[override]
        return self.ring.field

    @classmethod
    def make(cls, ring: SeriesRingSpec, masks: list[np.ndarray], name: str = "") -> SeriesIdealSpec:
        spec = cls(ring, _masks_to_slots(_trim(ring.field, list(masks))), name)
        validate_spec(spec)
        return spec

    def key(self) -> tuple[Any, ...]:
        return (self.ring.key(), self.slots)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SeriesIdealSpec) and other.key() == self.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def is_maximal(self) -> bool:
        return self == maximal_ideal(self.ring)

    def describe(self) -> str:
        return self.terms_text(self.field.name)

    def label(self) -> str:
        return self.name or self.describe()

    def to_dict(self) -> dict[str, Any]:
        return {"conductor": self.conductor, "slots": self.slots_dict()}

    def generators(self, extra: int) -> list[TruncatedLaurent]:
        """Monomials ``b X^e`` for a basis of each slot, then free slots up to ``extra`` past the conductor."""
        gens = []
        for e in range(self.conductor + extra):
            for b in self.field.basis(self.slot(e)):
                gens.append(TruncatedLaurent.monomial(self.field, b, e))
        return gens


Spec = SeriesRingSpec | SeriesIdealSpec


def validate_spec(spec: Spec) -> None:
    """Check the closure rules on subspace bases; raise on the first offending pair."""
    field = spec.field
    if isinstance(spec, SeriesRingSpec):
        c0 = spec.slot(0)
        if not c0[1]:
            raise SpecViolationError("constant slot must contain 1", (0, 0))
        if not field.is_subfield(c0):
            raise SpecViolationError("constant slot must be a subfield", (0, 0))
        for e in range(spec.conductor):
            for f in range(e, spec.conductor - e):
                prod = field.product_span(spec.slot(e), spec.slot(f))
                if not np.all(spec.slot(e + f)[prod]):
                    raise SpecViolationError(
                        f"slot product C_{e} * C_{f} leaves C_{e + f}", (e, f)
                    )
        return
    ring = spec.ring
    if spec.slot(0).sum() > 1:
        raise SpecViolationError("an ideal with a nonzero constant slot is the whole ring", (0, 0))
    for e in range(max(spec.conductor, ring.conductor)):
        if not np.all(ring.slot(e)[spec.slot(e)]):
            raise SpecViolationError(f"ideal slot D_{e} is not inside ring slot C_{e}", (e, e))
    for e in range(spec.conductor):
        for f in range(spec.conductor - e):
            prod = field.product_span(ring.slot(e), spec.slot(f))
            if not np.all(spec.slot(e + f)[prod]):
                raise SpecViolationError(f"ring slot C_{e} times D_{f} leaves D_{e + f}", (e, f))


def maximal_ideal(ring: SeriesRingSpec, name: str = "M") -> SeriesIdealSpec:
    field = ring.field
    masks = [field.zero_space()] + [ring.slot(e) for e in range(1, max(ring.conductor, 1))]
    return SeriesIdealSpec.make(ring, masks, name)


def order_ideal(ring: SeriesRingSpec, m: int, name: str = "") -> SeriesIdealSpec:
    """``X^m F_q[[X]]`` intersected with the ring."""
    if m < 1:
        raise InvalidParameterError("order ideals need m >= 1")
    field = ring.field
    masks = [field.zero_space() if e < m else ring.slot(e) for e in range(max(m, ring.conductor))]
    return SeriesIdealSpec.make(ring, masks, name or f"X^{m}")


def colon_ring(ideal: SeriesIdealSpec) -> SeriesRingSpec:
    """``(I : I)`` computed slot by slot over the constrained range."""
    field = ideal.field
    c = ideal.conductor
    elements = np.arange(field.q)

    def qualifying(e: int) -> np.ndarray:
        ok = np.ones(field.q, dtype=bool)
        for f in range(max(0, -e), c - e):
            for b in field.basis(ideal.slot(f)):
                ok &= ideal.slot(e + f)[field.mul[elements, b]]
        return ok

    for e in range(-max(c, 1), 0):
        stray = qualifying(e)
        stray[0] = False
        if stray.any():
            raise SpecViolationError(
                f"(I:I) contains {field.format(int(np.flatnonzero(stray)[0]))}X^{e}; "
                "the colon ring leaves F_q[[X]]",
                (e, 0),
            )
    masks = [qualifying(e) for e in range(c)]
    return SeriesRingSpec.make(field, masks, f"({ideal.label()} : {ideal.label()})")


@dataclass(frozen=True)
class ClosureResult:
    closure: SeriesRingSpec
    maximal: SeriesIdealSpec
    residue_field: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "closure": self.closure.describe(),
            "maximal_ideal": self.maximal.describe(),
            "residue_field": self.residue_field,
        }


def integral_closure(ring: SeriesRingSpec) -> ClosureResult:
    """Integral closure in F_q((X)).

    ``X^c F_q[[X]]`` lies in R, so F_q[[X]] is a finite R-module and hence
    integral over R. It is a DVR with the same fraction field, so it is the
    closure. The residue field is the constant slot of the closure.
    """
    field = ring.field
    closure = SeriesRingSpec.power_series(field, f"{field.name}[[X]]")
    return ClosureResult(closure, maximal_ideal(closure), field.describe_space(closure.slot(0)))


def pullback(v: SeriesRingSpec, subfield: int | np.ndarray) -> SeriesRingSpec:
    """Replace the constant slot of ``v`` (which must be the full field) by a subfield."""
    field = v.field
    if not v.slot(0).all():
        raise InvalidParameterError("pullback needs a ring whose constant slot is the full field")
    mask = field.subfield(subfield) if isinstance(subfield, int) else np.asarray(subfield, bool)
    if not field.is_subfield(mask):
        raise InvalidParameterError(f"{field.describe_space(mask)} is not a subfield of {field.name}")
    masks = [mask] + [v.slot(e) for e in range(1, max(v.conductor, 1))]
    return SeriesRingSpec.make(field, masks)


MEMBER = "member"
POWER_AVOIDS = "E"
POWER_LIES_IN = "A"


def membership(
    x: TruncatedLaurent,
    target: Spec,
    mode: str = MEMBER,
    n: int = 1,
    precision: int = DEFAULT_PRECISION,
) -> bool:
    """Membership of x in a spec, in E_n(spec) (x^n avoids it) or with x^n in A_n(spec)."""
    if mode == MEMBER:
        return target.contains(x)
    if mode not in (POWER_AVOIDS, POWER_LIES_IN):
        raise InvalidParameterError(f"unknown membership mode {mode!r}")
    if n < 1:
        raise InvalidParameterError("n must be at least 1")
    inside = target.contains(laurent_pow(x, n, precision))
    return inside if mode == POWER_LIES_IN else not inside


# --- text / JSON -----------------------------------------------------------


def _slot_masks(field: CoeffField, conductor: int, slots: dict[str, Any]) -> list[np.ndarray]:
    unknown = [k for k in slots if not k.isdigit() or int(k) >= conductor]
    if unknown:
        raise ParseError(f"slot keys {unknown} are outside the conductor {conductor}")
    return [field.parse_space(slots.get(str(e), "0")) for e in range(conductor)]


def ring_from_dict(data: dict[str, Any], name: str = "") -> SeriesRingSpec:
    try:
        field = parse_field(data["field"])
        conductor = int(data.get("conductor", 0))
        masks = _slot_masks(field, conductor, dict(data.get("slots", {})))
    except KeyError as exc:
        raise ParseError(f"series spec missing key {exc}") from exc
    return SeriesRingSpec.make(field, masks, name or str(data.get("name", "")))


def ideal_from_dict(ring: SeriesRingSpec, data: dict[str, Any], name: str = "") -> SeriesIdealSpec:
    conductor = int(data.get("conductor", 0))
    masks = _slot_masks(ring.field, conductor, dict(data.get("slots", {})))
    return SeriesIdealSpec.make(ring, masks, name)


def series_ring(q: int, slots: dict[int, Any], conductor: int, name: str = "") -> SeriesRingSpec:
    """Programmatic constructor: ``slots`` maps exponent to a subspace spec (missing -> 0)."""
    field = coeff_field(q)
    masks = [field.parse_space(slots.get(e, "0")) for e in range(conductor)]
    return SeriesRingSpec.make(field, masks, name)


def series_ideal(
    ring: SeriesRingSpec, slots: dict[int, Any], conductor: int, name: str = ""
) -> SeriesIdealSpec:
    masks = [ring.field.parse_space(slots.get(e, "0")) for e in range(conductor)]
    return SeriesIdealSpec.make(ring, masks, name)


__all__ = [
    "DEFAULT_PRECISION",
    "MEMBER",
    "POWER_AVOIDS",
    "POWER_LIES_IN",
    "ClosureResult",
    "SeriesIdealSpec",
    "SeriesRingSpec",
    "Spec",
    "TruncatedLaurent",
    "colon_ring",
    "fit_length",
    "format_laurent",
    "ideal_from_dict",
    "integral_closure",
    "inv_trunc",
    "laurent_arith",
    "laurent_inv",
    "laurent_mul",
    "laurent_pow",
    "maximal_ideal",
    "membership",
    "mul_trunc",
    "order_ideal",
    "pow_trunc",
    "pullback",
    "ring_from_dict",
    "series_ideal",
    "series_ring",
    "validate_spec",
]
