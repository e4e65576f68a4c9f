"""Bounded decision procedures over the quotient field F_q((X)).

Quotient-field elements are enumerated as ``X^o * u`` with ``|o| <= order_bound``
and ``u`` a polynomial with nonzero constant term of width at most
``min(degree_bound, conductor)``. Candidates are ordered by order
(0, 1, -1, 2, -2, ...), then by the degree of ``u``, then lexicographically, so
the reported witness is the first one in that order. Every refutation is
replayed with exact Laurent arithmetic before it is returned.
"""

from __future__ import annotations

import itertools
import time
from collections.abc import Callable
from dataclasses import dataclass, replace
from typing import Any

import numpy as np

from .concurrency import ConcurrencyConfig, parallel_map
from .config import Budgets, SeriesBounds
from .errors import BudgetExceededError, InvalidParameterError, NSemiprimaryError
from .fields import CoeffField, coeff_field
from .logging import get_logger
from .rings import DEFAULT_BUDGETS, rref_mod_p
from .series import (
    SeriesIdealSpec,
    SeriesRingSpec,
    TruncatedLaurent,
    fit_length,
    integral_closure,
    inv_trunc,
    laurent_mul,
    laurent_pow,
    maximal_ideal,
    mul_trunc,
    order_ideal,
    pow_trunc,
)

VERIFIED = "VerifiedAtBound"
REFUTED = "Refuted"
CERTIFIED = "CertifiedTrue"
PARTIAL = "Partial"

N_SEMIPRIMARY = "n-semiprimary"
N_POWERFUL = "n-powerful"
N_POWERFUL_SEMIPRIMARY = "n-powerful-semiprimary"
STRONGLY_PRIME = "strongly-prime"
N_VD = "n-vd"
N_PVD = "n-pvd"
PN_VD = "pn-vd"
PSEUDO_N_STRONGLY_PRIME = "pseudo-n-strongly-prime"
N_ROOT_CLOSED = "n-root-closed"
N_ROOT_EXTENSION = "n-root-extension"
N_DIVIDED_PRIME = "n-divided-prime"
STAR_CONDITION = "star-condition"
POWER_IDEAL_EQUALS = "power-ideal-equals"

PROPERTY_NAMES = (
    N_SEMIPRIMARY,
    N_POWERFUL,
    N_POWERFUL_SEMIPRIMARY,
    STRONGLY_PRIME,
    N_VD,
    N_PVD,
    PN_VD,
    PSEUDO_N_STRONGLY_PRIME,
    N_ROOT_CLOSED,
    N_ROOT_EXTENSION,
    N_DIVIDED_PRIME,
    STAR_CONDITION,
    POWER_IDEAL_EQUALS,
)

_IDEAL_PROPERTIES = {
    N_SEMIPRIMARY,
    N_POWERFUL,
    N_POWERFUL_SEMIPRIMARY,
    STRONGLY_PRIME,
    PSEUDO_N_STRONGLY_PRIME,
    N_DIVIDED_PRIME,
    POWER_IDEAL_EQUALS,
}
_PRIME_PROPERTIES = {STRONGLY_PRIME, PSEUDO_N_STRONGLY_PRIME, N_DIVIDED_PRIME}
_DOMAIN_PROPERTIES = {N_PVD, PN_VD, STAR_CONDITION}


@dataclass(frozen=True)
class SeriesProperty:
    name: str
    ring: SeriesRingSpec
    n: int = 1
    ideal: SeriesIdealSpec | None = None
    other: SeriesRingSpec | None = None

    @property
    def field(self) -> CoeffField:
        return self.ring.field

    def target(self) -> SeriesIdealSpec:
        if self.ideal is None:
            raise InvalidParameterError(f"{self.name} needs an ideal")
        return self.ideal

    def conductor(self) -> int:
        cs = [self.ring.conductor]
        if self.ideal is not None:
            cs.append(self.ideal.conductor)
        if self.other is not None:
            cs.append(self.other.conductor)
        return max(cs)

    def describe(self) -> str:
        subject = self.ideal.label() if self.ideal is not None else self.ring.label()
        if self.other is not None:
            subject = f"{self.ring.label()} in {self.other.label()}"
        return f"{self.name}(n={self.n}) on {subject}"


def make_property(
    name: str,
    ring: SeriesRingSpec,
    n: int = 1,
    ideal: SeriesIdealSpec | None = None,
    other: SeriesRingSpec | None = None,
) -> SeriesProperty:
    if name not in PROPERTY_NAMES:
        raise InvalidParameterError(
            f"unknown property {name!r}; choose one of {', '.join(PROPERTY_NAMES)}"
        )
    if n < 1:
        raise InvalidParameterError("n must be at least 1")
    if name == STRONGLY_PRIME:
        n = 1
    if name in _DOMAIN_PROPERTIES or (name in _IDEAL_PROPERTIES and ideal is None):
        ideal = maximal_ideal(ring)
    if name in _PRIME_PROPERTIES and ideal is not None and not ideal.is_maximal():
        raise InvalidParameterError(
            f"{name} needs a nonzero prime; the only one in {ring.label()} is the maximal ideal"
        )
    if ideal is not None and ideal.ring != ring:
        raise InvalidParameterError("ideal belongs to a different ring")
    if name == N_ROOT_EXTENSION:
        if other is None:
            raise InvalidParameterError("n-root-extension needs the larger ring")
        if other.field != ring.field:
            raise InvalidParameterError("both rings must share the coefficient field")
    return SeriesProperty(name, ring, n, ideal, other)


@dataclass(frozen=True)
class Witness:
    elements: tuple[str, ...]
    powers: tuple[str, ...] = ()
    note: str = ""

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"elements": list(self.elements), "powers": list(self.powers)}
        if self.note:
            data["note"] = self.note
        return data


@dataclass(frozen=True)
class Verdict:
    kind: str
    property: str
    n: int
    subject: str
    bounds: dict[str, int]
    witness: Witness | None = None
    reason: str = ""
    level: int | None = None

    @property
    def refuted(self) -> bool:
        return self.kind == REFUTED

    @property
    def holds(self) -> bool:
        return self.kind in (VERIFIED, CERTIFIED)

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "kind": self.kind,
            "property": self.property,
            "n": self.n,
            "subject": self.subject,
            "bounds": dict(self.bounds),
        }
        if self.witness is not None:
            data["witness"] = self.witness.to_dict()
        if self.reason:
            data["reason"] = self.reason
        if self.level is not None:
            data["level"] = self.level
        return data

    def line(self) -> str:
        text = f"{self.property} n={self.n}: {self.kind}"
        if self.witness is not None:
            text += f" witness {', '.join(self.witness.elements)}"
            if self.witness.powers:
                text += f" (powers {', '.join(self.witness.powers)})"
        if self.level is not None:
            text += f" at level {self.level}"
        if self.reason and self.kind != REFUTED:
            text += f" [{self.reason}]"
        return text


# --- candidates --------------------------------------------------------------


def order_sequence(bound: int) -> list[int]:
    seq = [0]
    for k in range(1, bound + 1):
        seq += [k, -k]
    return seq


def candidate_units(field: CoeffField, width: int) -> np.ndarray:
    """Unit polynomials of width <= ``width`` ordered by degree, then lexicographically."""
    q = field.q
    heads = range(1, q)
    rows: list[tuple[int, ...]] = []
    for deg in range(width):
        if deg == 0:
            rows.extend((h,) for h in heads)
            continue
        for h in heads:
            for mid in itertools.product(range(q), repeat=deg - 1):
                for t in heads:
                    rows.append((h, *mid, t))
    out = np.zeros((len(rows), width), dtype=np.int64)
    for i, row in enumerate(rows):
        out[i, : len(row)] = row
    return out


@dataclass
class _Candidates:
    field: CoeffField
    units: np.ndarray
    orders: np.ndarray
    unit_idx: np.ndarray
    order_values: list[int]

    @classmethod
    def build(cls, fld: CoeffField, order_bound: int, width: int) -> _Candidates:
        units = candidate_units(fld, width)
        values = order_sequence(order_bound)
        orders = np.repeat(np.asarray(values, dtype=np.int64), len(units))
        unit_idx = np.tile(np.arange(len(units), dtype=np.int64), len(values))
        return cls(fld, units, orders, unit_idx, values)

    @property
    def size(self) -> int:
        return int(self.orders.size)

    def element(self, idx: int) -> TruncatedLaurent:
        o = int(self.orders[idx])
        u = self.units[self.unit_idx[idx]]
        return TruncatedLaurent.from_terms(self.field, {o + i: int(c) for i, c in enumerate(u)})

    def unit_rows(self, length: int) -> np.ndarray:
        return fit_length(self.units, length)[self.unit_idx]


@dataclass(frozen=True)
class _Outcome:
    kind: str
    elements: tuple[TruncatedLaurent, ...] = ()
    powers: tuple[TruncatedLaurent, ...] = ()
    reason: str = ""


# --- replay ----------------------------------------------------------------


def _precision(prop: SeriesProperty) -> int:
    return prop.conductor() + 2


def _power(x: TruncatedLaurent, n: int, prop: SeriesProperty) -> TruncatedLaurent:
    return laurent_pow(x, n, _precision(prop))


def replay(prop: SeriesProperty, elements: tuple[TruncatedLaurent, ...]) -> bool:
    """True when ``elements`` contradict the defining formula of ``prop``."""
    n, ring = prop.n, prop.ring
    name = prop.name
    if name in (N_SEMIPRIMARY, N_POWERFUL, N_POWERFUL_SEMIPRIMARY, N_PVD, STRONGLY_PRIME):
        ideal = prop.target()
        x, y = elements
        xn, yn = _power(x, n, prop), _power(y, n, prop)
        if not ideal.contains(laurent_mul(xn, yn)):
            return False
        if name == N_POWERFUL:
            return not ring.contains(xn) and not ring.contains(yn)
        if name == N_SEMIPRIMARY and not (ring.contains(x) and ring.contains(y)):
            return False
        return not ideal.contains(xn) and not ideal.contains(yn)
    if name == N_VD:
        (x,) = elements
        return not ring.contains(_power(x, n, prop)) and not ring.contains(_power(x, -n, prop))
    if name in (PN_VD, PSEUDO_N_STRONGLY_PRIME):
        x, g = elements
        prime = prop.target()
        moved = laurent_mul(_power(x, -n, prop), g)
        return not ring.contains(_power(x, n, prop)) and prime.contains(g) and not prime.contains(moved)
    if name == N_ROOT_CLOSED:
        (x,) = elements
        return ring.contains(_power(x, n, prop)) and not ring.contains(x)
    if name == N_ROOT_EXTENSION:
        (x,) = elements
        assert prop.other is not None
        return prop.other.contains(x) and not ring.contains(_power(x, n, prop))
    if name == STAR_CONDITION:
        (x,) = elements
        return x.order >= 1 and not prop.target().contains(_power(x, n, prop))
    if name == POWER_IDEAL_EQUALS:
        (g,) = elements
        return prop.target().contains(g)
    return False


# --- searches --------------------------------------------------------------


def _unique_rows(rows: np.ndarray, index: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Distinct rows and, for each, the smallest candidate index carrying it."""
    _, first = np.unique(rows, axis=0, return_index=True)
    first = np.sort(first)
    return rows[first], index[first]


def _pair_search(
    prop: SeriesProperty,
    cands: _Candidates,
    budgets: Budgets,
    config: ConcurrencyConfig | None,
) -> _Outcome:
    fld, n, ring = prop.field, prop.n, prop.ring
    ideal = prop.target()
    c = ideal.conductor
    length = max(prop.conductor(), 1)
    powers = pow_trunc(fld, cands.units, n, length)
    orders = cands.orders
    porders = n * orders
    prows = powers[cands.unit_idx]
    in_ideal = ideal.contains_batch(porders, prows)
    good = ring.contains_batch(porders, prows) if prop.name == N_POWERFUL else in_ideal
    domain = np.ones(cands.size, dtype=bool)
    if prop.name == N_SEMIPRIMARY:
        domain = ring.contains_batch(orders, cands.unit_rows(length))
    bad = np.flatnonzero(domain & ~good)
    if bad.size == 0:
        return _Outcome(VERIFIED, reason="every candidate power lies in the target")

    squares = mul_trunc(fld, powers, powers, length)
    diag = ideal.contains_batch(2 * porders[bad], squares[cands.unit_idx[bad]])
    if diag.any():
        i = int(bad[int(np.argmax(diag))])
        return _pair_outcome(prop, cands, i, i)

    groups = {o: bad[orders[bad] == o] for o in cands.order_values}
    present = [o for o in cands.order_values if groups[o].size]
    position = {o: i for i, o in enumerate(present)}
    needed = sum(
        groups[a].size * groups[b].size
        for a in present
        for b in present
        if position[b] >= position[a] and 0 <= n * (a + b) < c
    )
    if needed > budgets.pair_budget:
        raise BudgetExceededError("pair_budget", budgets.pair_budget, needed)

    def scan(oa: int) -> tuple[int, int] | None:
        best: tuple[int, int] | None = None
        ia = groups[oa]
        for ob in present[position[oa] :]:
            ib = groups[ob]
            s = n * (oa + ob)
            if s < 0:
                continue
            if s >= c:
                if oa == ob:
                    hit = (int(ia[0]), int(ia[1])) if ia.size >= 2 else None
                else:
                    hit = tuple(sorted((int(ia[0]), int(ib[0]))))  # type: ignore[assignment]
                if hit is not None and (best is None or hit < best):
                    best = hit
                continue
            span = c - s
            ua, fa = _unique_rows(powers[cands.unit_idx[ia], :span], ia)
            ub, fb = _unique_rows(powers[cands.unit_idx[ib], :span], ib)
            prod = mul_trunc(fld, ua[:, None, :], ub[None, :, :], span)
            ok = np.ones(prod.shape[:2], dtype=bool)
            for j in range(span):
                ok &= ideal.masks[s + j, prod[..., j]]
            for ra, rb in np.argwhere(ok):
                x, y = int(fa[ra]), int(fb[rb])
                if x == y:
                    continue
                pair = (min(x, y), max(x, y))
                if best is None or pair < best:
                    best = pair
        return best

    hits = [h for h in parallel_map(scan, present, config) if h is not None]
    if not hits:
        return _Outcome(VERIFIED, reason=f"{bad.size} candidates with powers outside the target")
    i, j = min(hits)
    return _pair_outcome(prop, cands, i, j)


def _pair_outcome(prop: SeriesProperty, cands: _Candidates, i: int, j: int) -> _Outcome:
    x, y = cands.element(i), cands.element(j)
    return _Outcome(
        REFUTED,
        (x, y),
        (_power(x, prop.n, prop), _power(y, prop.n, prop)),
        "x^n y^n lies in the target but neither x^n nor y^n does",
    )


def _first(bad: np.ndarray) -> int | None:
    hits = np.flatnonzero(bad)
    return int(hits[0]) if hits.size else None


def _single_search(prop: SeriesProperty, cands: _Candidates) -> _Outcome:
    fld, n, ring = prop.field, prop.n, prop.ring
    length = max(prop.conductor(), 1)
    orders = cands.orders
    powers = pow_trunc(fld, cands.units, n, length)[cands.unit_idx]
    if prop.name == N_VD:
        inverse = pow_trunc(fld, inv_trunc(fld, cands.units, length), n, length)[cands.unit_idx]
        bad = ~ring.contains_batch(n * orders, powers) & ~ring.contains_batch(-n * orders, inverse)
        idx = _first(bad)
        if idx is None:
            return _Outcome(VERIFIED, reason="x^n or x^-n lies in R for every candidate")
        x = cands.element(idx)
        return _Outcome(
            REFUTED, (x,), (_power(x, n, prop), _power(x, -n, prop)), "neither x^n nor x^-n lies in R"
        )
    if prop.name == N_ROOT_CLOSED:
        bad = ring.contains_batch(n * orders, powers) & ~ring.contains_batch(
            orders, cands.unit_rows(length)
        )
        reason = "x^n lies in R but x does not"
    elif prop.name == N_ROOT_EXTENSION:
        assert prop.other is not None
        bad = prop.other.contains_batch(orders, cands.unit_rows(length)) & ~ring.contains_batch(
            n * orders, powers
        )
        reason = "x lies in the larger ring but x^n is outside the smaller one"
    elif prop.name == STAR_CONDITION:
        bad = (orders >= 1) & ~prop.target().contains_batch(n * orders, powers)
        reason = "x is a nonunit of the integral closure with x^n outside M"
    else:
        raise InvalidParameterError(f"{prop.name} is not a single-element property")
    idx = _first(bad)
    if idx is None:
        return _Outcome(VERIFIED, reason="no candidate violates the property")
    x = cands.element(idx)
    return _Outcome(REFUTED, (x,), (_power(x, n, prop),), reason)


def _pseudo_search(prop: SeriesProperty, cands: _Candidates) -> _Outcome:
    """x^-n P inside P for every x with x^n outside R, tested on generators of P."""
    fld, n, ring = prop.field, prop.n, prop.ring
    prime = prop.target()
    length = max(prop.conductor(), 1)
    orders = cands.orders
    powers = pow_trunc(fld, cands.units, n, length)[cands.unit_idx]
    inverse = pow_trunc(fld, inv_trunc(fld, cands.units, length), n, length)[cands.unit_idx]
    outside = ~ring.contains_batch(n * orders, powers)
    gens = prime.generators(ring.conductor + 1)
    first_gen = np.full(cands.size, -1, dtype=np.int64)
    for gi, g in enumerate(gens):
        moved = fld.mul[g.coeffs[0], inverse]
        fails = outside & ~prime.contains_batch(g.order - n * orders, moved) & (first_gen < 0)
        first_gen[fails] = gi
    idx = _first(first_gen >= 0)
    if idx is None:
        return _Outcome(VERIFIED, reason=f"x^-n P inside P on {len(gens)} generators of P")
    x = cands.element(idx)
    g = gens[int(first_gen[idx])]
    return _Outcome(
        REFUTED,
        (x, g),
        (_power(x, n, prop), laurent_mul(_power(x, -n, prop), g)),
        "x^n lies outside R and x^-n g leaves P",
    )


def _digit_rows(fld: CoeffField, vectors: np.ndarray) -> np.ndarray:
    return fld.digits[vectors].reshape(vectors.shape[0], -1)


def _power_ideal_search(prop: SeriesProperty, cands: _Candidates) -> _Outcome:
    """Compare I with the ideal generated by A_n(I) modulo a fixed power of X."""
    fld, n, ring = prop.field, prop.n, prop.ring
    ideal = prop.target()
    top = ideal.conductor + ring.conductor + 1
    orders = cands.orders
    porders = n * orders
    powers = pow_trunc(fld, cands.units, n, top)[cands.unit_idx]
    keep = np.flatnonzero(ideal.contains_batch(porders, powers) & (porders < top) & (porders >= 0))
    vectors = np.zeros((keep.size, top), dtype=np.int64)
    for row, idx in enumerate(keep):
        shift = int(porders[idx])
        vectors[row, shift:] = powers[idx, : top - shift]
    if vectors.size:
        vectors = np.unique(vectors, axis=0)
    products = []
    for j in range(top):
        for b in fld.basis(ring.slot(j)):
            shifted = np.zeros_like(vectors)
            shifted[:, j:] = fld.mul[b, vectors[:, : top - j]]
            products.append(shifted)
    span_rows = _digit_rows(fld, np.concatenate(products)) if products and vectors.size else None
    basis = [
        TruncatedLaurent.monomial(fld, b, e) for e in range(top) for b in fld.basis(ideal.slot(e))
    ]
    target_rows = np.zeros((len(basis), top), dtype=np.int64)
    for i, g in enumerate(basis):
        target_rows[i, g.order] = g.coeffs[0]
    target = _digit_rows(fld, target_rows)

    def rank(rows: np.ndarray | None) -> int:
        return 0 if rows is None or rows.size == 0 else len(rref_mod_p(rows, fld.p)[1])

    span_rank = rank(span_rows)
    if span_rank == rank(target):
        return _Outcome(VERIFIED, reason=f"(A_n(I)) agrees with I modulo X^{top}")
    for i, g in enumerate(basis):
        rows = target[i : i + 1] if span_rows is None else np.vstack([span_rows, target[i : i + 1]])
        if rank(rows) > span_rank:
            return _Outcome(REFUTED, (g,), (), f"{g} lies in I but not in (A_n(I)) modulo X^{top}")
    raise NSemiprimaryError("power ideal comparison lost its witness")


def _certificate(prop: SeriesProperty) -> str | None:
    if prop.name == N_DIVIDED_PRIME:
        return "elements outside the maximal ideal are units of R"
    if prop.ring.valuation_type and prop.name in (
        N_VD,
        N_PVD,
        PN_VD,
        PSEUDO_N_STRONGLY_PRIME,
        STRONGLY_PRIME,
        N_ROOT_CLOSED,
    ):
        return f"{prop.ring.label()} is a discrete valuation ring"
    return None


_PAIR = {N_SEMIPRIMARY, N_POWERFUL, N_POWERFUL_SEMIPRIMARY, N_PVD, STRONGLY_PRIME}
_SINGLE = {N_VD, N_ROOT_CLOSED, N_ROOT_EXTENSION, STAR_CONDITION}
_PSEUDO = {PN_VD, PSEUDO_N_STRONGLY_PRIME}


def bounded_check(
    prop: SeriesProperty,
    bounds: SeriesBounds | None = None,
    budgets: Budgets = DEFAULT_BUDGETS,
    config: ConcurrencyConfig | None = None,
) -> Verdict:
    bounds = bounds or SeriesBounds()
    fld = prop.field
    record = bounds.as_record(fld.q)
    logger = get_logger()
    base = Verdict(VERIFIED, prop.name, prop.n, prop.describe(), record)
    if fld.q > bounds.max_field_order:
        logger.log_budget("max_field_order", bounds.max_field_order, fld.q, check=prop.name)
        return replace(base, kind=PARTIAL, reason=f"field order {fld.q} above the bound")
    if prop.n > bounds.max_n:
        raise InvalidParameterError(f"n={prop.n} exceeds max_n={bounds.max_n}")
    cert = _certificate(prop)
    if cert is not None:
        return replace(base, kind=CERTIFIED, reason=cert)

    started = time.perf_counter()
    width = max(1, min(bounds.degree_bound, prop.conductor()))
    cands = _Candidates.build(fld, bounds.order_bound, width)
    if cands.size > budgets.pair_budget:
        logger.log_budget("pair_budget", budgets.pair_budget, cands.size, check=prop.name)
        return replace(base, kind=PARTIAL, reason=f"{cands.size} candidates exceed the budget")
    try:
        if prop.name in _PAIR:
            outcome = _pair_search(prop, cands, budgets, config)
        elif prop.name in _SINGLE:
            outcome = _single_search(prop, cands)
        elif prop.name in _PSEUDO:
            outcome = _pseudo_search(prop, cands)
        else:
            outcome = _power_ideal_search(prop, cands)
    except BudgetExceededError as exc:
        logger.log_budget(exc.budget, exc.limit, exc.required, check=prop.name, n=prop.n)
        return replace(base, kind=PARTIAL, reason=str(exc))

    logger.log_performance(
        "bounded_check",
        (time.perf_counter() - started) * 1000,
        check=prop.name,
        n=prop.n,
        candidates=cands.size,
    )
    logger.log_verdict(outcome.kind, prop.name, prop.n, candidates=cands.size)
    if outcome.kind != REFUTED:
        return replace(base, kind=outcome.kind, reason=outcome.reason)
    if not replay(prop, outcome.elements):
        raise NSemiprimaryError(f"witness for {prop.describe()} failed to replay")
    witness = Witness(
        tuple(str(e) for e in outcome.elements), tuple(str(p) for p in outcome.powers)
    )
    return replace(base, kind=REFUTED, witness=witness, reason=outcome.reason)


# --- derived checks ----------------------------------------------------------


@dataclass(frozen=True)
class DeltaBarProfile:
    ideal: str
    per_n: dict[int, Verdict]

    def refuted_at(self) -> list[int]:
        return [n for n, v in self.per_n.items() if v.refuted]

    def verified_at(self) -> list[int]:
        return [n for n, v in self.per_n.items() if v.holds]

    @property
    def delta_bar(self) -> int | None:
        verified = self.verified_at()
        return min(verified) if verified else None

    def to_dict(self) -> dict[str, Any]:
        return {
            "ideal": self.ideal,
            "refuted_at": self.refuted_at(),
            "verified_at": self.verified_at(),
            "delta_bar": "inf" if self.delta_bar is None else self.delta_bar,
            "per_n": {str(n): v.to_dict() for n, v in self.per_n.items()},
        }


def delta_bar_profile(
    ideal: SeriesIdealSpec,
    nmax: int,
    bounds: SeriesBounds | None = None,
    budgets: Budgets = DEFAULT_BUDGETS,
    config: ConcurrencyConfig | None = None,
) -> DeltaBarProfile:
    bounds = bounds or SeriesBounds()
    if not 1 <= nmax <= bounds.max_n:
        raise InvalidParameterError(f"nmax must lie in [1, {bounds.max_n}]")
    per_n = {
        n: bounded_check(
            make_property(N_POWERFUL_SEMIPRIMARY, ideal.ring, n, ideal), bounds, budgets, config
        )
        for n in range(1, nmax + 1)
    }
    return DeltaBarProfile(ideal.label(), per_n)


def tower_search(
    build: Callable[[CoeffField], SeriesProperty],
    p: int,
    levels: range = range(1, 5),
    bounds: SeriesBounds | None = None,
    budgets: Budgets = DEFAULT_BUDGETS,
    config: ConcurrencyConfig | None = None,
) -> Verdict:
    """Check ``build(F_{p^k})`` for growing k; stop at the first refutation."""
    bounds = bounds or SeriesBounds()
    last: Verdict | None = None
    for k in levels:
        q = p**k
        if q > bounds.max_field_order:
            break
        verdict = replace(bounded_check(build(coeff_field(q)), bounds, budgets, config), level=k)
        if verdict.refuted:
            return verdict
        last = verdict
    if last is None:
        raise InvalidParameterError(f"no tower level of F_{p} fits max_field_order")
    return last


@dataclass(frozen=True)
class RootIdeal:
    """``{x in K : x^n in M}`` when it is an order ideal of the integral closure."""

    n: int
    min_order: int | None
    ideal: SeriesIdealSpec | None
    equals_radical: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "root_ideal": None if self.ideal is None else self.ideal.describe(),
            "equals_radical": self.equals_radical,
        }


def root_ideal(
    ring: SeriesRingSpec, n: int, bounds: SeriesBounds | None = None
) -> RootIdeal:
    bounds = bounds or SeriesBounds()
    m = maximal_ideal(ring)
    fld = ring.field
    width = max(1, min(bounds.degree_bound, m.conductor))
    cands = _Candidates.build(fld, bounds.order_bound, width)
    length = max(m.conductor, 1)
    powers = pow_trunc(fld, cands.units, n, length)[cands.unit_idx]
    inside = m.contains_batch(n * cands.orders, powers)
    threshold: int | None = None
    for o in sorted(set(cands.order_values)):
        sel = cands.orders == o
        if inside[sel].all():
            threshold = o if threshold is None else threshold
        elif inside[sel].any() or threshold is not None:
            return RootIdeal(n, None, None, False)
    if threshold is None or threshold < 1:
        return RootIdeal(n, None, None, False)
    closure = integral_closure(ring).closure
    ideal = order_ideal(closure, threshold, f"X^{threshold}{fld.name}[[X]]")
    return RootIdeal(n, threshold, ideal, threshold == 1)


__all__ = [
    "CERTIFIED",
    "N_DIVIDED_PRIME",
    "N_POWERFUL",
    "N_POWERFUL_SEMIPRIMARY",
    "N_PVD",
    "N_ROOT_CLOSED",
    "N_ROOT_EXTENSION",
    "N_SEMIPRIMARY",
    "N_VD",
    "PARTIAL",
    "PN_VD",
    "POWER_IDEAL_EQUALS",
    "PROPERTY_NAMES",
    "PSEUDO_N_STRONGLY_PRIME",
    "REFUTED",
    "STAR_CONDITION",
    "STRONGLY_PRIME",
    "VERIFIED",
    "DeltaBarProfile",
    "RootIdeal",
    "SeriesProperty",
    "Verdict",
    "Witness",
    "bounded_check",
    "candidate_units",
    "delta_bar_profile",
    "make_property",
    "order_sequence",
    "replay",
    "root_ideal",
    "tower_search",
]
