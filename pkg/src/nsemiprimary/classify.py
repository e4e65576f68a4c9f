"""Ideal predicates on finite rings.

Every predicate about an ideal I of R is decided in the quotient Q = R/I, where I
becomes the zero ideal. Q is materialised as a table ring, so large algebra rings
with small quotients stay cheap. Witnesses are lifted back to R (lowest-index
preimage) and reported by label.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .concurrency import ConcurrencyConfig, parallel_first
from .config import Budgets
from .errors import InvalidParameterError
from .logging import get_logger
from .rings import (
    DEFAULT_BUDGETS,
    FiniteRing,
    IdealHandle,
    QuotientMap,
    TableRing,
    enumerate_ideals,
    ideal_power,
    ideal_product,
    quotient_ring,
    radical,
    zero_ideal,
)

INFINITY = "∞"

_ROW_BLOCK = 64


def format_n(value: int | None) -> str:
    return INFINITY if value is None else str(value)


def json_n(value: int | None) -> int | str:
    return "inf" if value is None else value


@dataclass(frozen=True)
class PredicateResult:
    """Outcome of one predicate; ``holds`` is None when the search was cut off."""

    holds: bool | None
    witness: tuple[str, ...] = ()
    reason: str = ""

    @property
    def decided(self) -> bool:
        return self.holds is not None

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"holds": self.holds}
        if self.witness:
            data["witness"] = list(self.witness)
        if self.reason:
            data["reason"] = self.reason
        return data


@dataclass(frozen=True)
class Reduction:
    """``R -> R/I`` with the quotient as a table ring."""

    ring: FiniteRing
    ideal: IdealHandle
    qmap: QuotientMap
    table: TableRing

    def lift(self, x: int) -> str:
        return self.qmap.lift_label(int(x))

    @property
    def nilradical(self) -> IdealHandle:
        return radical(zero_ideal(self.table))


def reduce_modulo(r: FiniteRing, i: IdealHandle, budgets: Budgets = DEFAULT_BUDGETS) -> Reduction:
    if i.ring is not r:
        raise InvalidParameterError("ideal does not belong to ring")
    if not i.proper:
        raise InvalidParameterError(f"ideal {i.describe()} is not proper")
    qmap = quotient_ring(r, i)
    return Reduction(r, i, qmap, qmap.ring.as_table(budgets))


def _check_n(n: int) -> None:
    if n < 1:
        raise InvalidParameterError(f"n must be at least 1, got {n}")


# --- n-semiprimary --------------------------------------------------------


def _power_pair_search(
    q: TableRing, pw_x: np.ndarray, pw_y: np.ndarray, config: ConcurrencyConfig | None
) -> tuple[int, int] | None:
    """Lowest pair of nonzero values ``(a, b)`` from the two images with ``a * b = 0``."""
    rows = np.unique(pw_x)
    rows = rows[rows != q.zero]
    cols = np.unique(pw_y)
    cols = cols[cols != q.zero]
    if rows.size == 0 or cols.size == 0:
        return None
    blocks = [rows[s : s + _ROW_BLOCK] for s in range(0, rows.size, _ROW_BLOCK)]

    def scan(block: np.ndarray) -> tuple[int, int] | None:
        hits = np.argwhere(q.mul_table[np.ix_(block, cols)] == q.zero)
        if hits.size == 0:
            return None
        a, b = hits[0]
        return int(block[a]), int(cols[b])

    return parallel_first(scan, blocks, config)


def semiprimary_in(
    red: Reduction, n: int, config: ConcurrencyConfig | None = None
) -> PredicateResult:
    q = red.table
    pw = q.pow_all(n)
    hit = _power_pair_search(q, pw, pw, config)
    if hit is None:
        return PredicateResult(True)
    a, b = hit
    x = int(np.argmax(pw == a))
    y = int(np.argmax(pw == b))
    return PredicateResult(
        False,
        (red.lift(x), red.lift(y)),
        f"x^{n}*y^{n} lies in I while x^{n} and y^{n} do not",
    )


def is_n_semiprimary(
    r: FiniteRing,
    i: IdealHandle,
    n: int,
    budgets: Budgets = DEFAULT_BUDGETS,
    config: ConcurrencyConfig | None = None,
) -> PredicateResult:
    """Decide ``x^n y^n in I => x^n in I or y^n in I`` over the n-th power image."""
    _check_n(n)
    return semiprimary_in(reduce_modulo(r, i, budgets), n, config)


def mixed_exponent_in(red: Reduction, n: int, m: int, k: int) -> PredicateResult:
    """``x^m y^k in I => x^n in I or y^n in I``."""
    q = red.table
    pm, pk, pn = q.pow_all(m), q.pow_all(k), q.pow_all(n)
    xs = np.flatnonzero(pn != q.zero)
    if xs.size == 0:
        return PredicateResult(True)
    # group candidates by their m-th (resp. k-th) power
    ux, first_x = np.unique(pm[xs], return_index=True)
    uy, first_y = np.unique(pk[xs], return_index=True)
    hits = np.argwhere(q.mul_table[np.ix_(ux, uy)] == q.zero)
    if hits.size == 0:
        return PredicateResult(True)
    a, b = hits[0]
    x, y = int(xs[first_x[a]]), int(xs[first_y[b]])
    return PredicateResult(
        False, (red.lift(x), red.lift(y)), f"x^{m}*y^{k} lies in I while x^{n} and y^{n} do not"
    )


# --- n-primary ------------------------------------------------------------


def primary_in(red: Reduction, n: int) -> PredicateResult:
    q = red.table
    pw = q.pow_all(n)
    mask = (q.mul_table == q.zero) & (q.elements != q.zero)[:, None] & (pw != q.zero)[None, :]
    hits = np.argwhere(mask)
    if hits.size == 0:
        return PredicateResult(True)
    x, y = (int(v) for v in hits[0])
    return PredicateResult(
        False, (red.lift(x), red.lift(y)), f"x*y lies in I while x and y^{n} do not"
    )


def is_n_primary(
    r: FiniteRing, i: IdealHandle, n: int, budgets: Budgets = DEFAULT_BUDGETS
) -> PredicateResult:
    _check_n(n)
    return primary_in(reduce_modulo(r, i, budgets), n)


def minimal_n_primary(red: Reduction) -> int | None:
    for n in range(1, red.table.nil_bound + 1):
        if primary_in(red, n).holds:
            return n
    return None


# --- n-absorbing ----------------------------------------------------------


def absorbing_in(red: Reduction, n: int, budgets: Budgets = DEFAULT_BUDGETS) -> PredicateResult:
    """Search (n+1)-multisets of nonzero nonunits of R/I for a non-absorbed product.

    Units and zero can never appear in a witness. The last two factors are scanned
    as a vectorised block; the first n-1 run in lexicographic order.
    """
    q = red.table
    cands = np.flatnonzero(~q.unit_mask & (q.elements != q.zero))
    k = int(cands.size)
    if k == 0:
        return PredicateResult(True)
    work = math.comb(k + n, n + 1) * (n + 1)
    if work > budgets.absorbing_operations:
        get_logger().log_budget(
            "absorbing_operations", budgets.absorbing_operations, work, n=n, ring=red.ring.name
        )
        return PredicateResult(
            None, reason=f"unknown at budget: {work} operations exceed {budgets.absorbing_operations}"
        )
    mt = q.mul_table
    pair = mt[np.ix_(cands, cands)]
    upper = np.triu(np.ones((k, k), dtype=bool))
    for prefix in itertools.combinations_with_replacement(range(k), n - 1):
        start = prefix[-1] if prefix else 0
        total = q.one
        for j in prefix:
            total = int(mt[total, cands[j]])
        omit: list[int] = []
        for pos in range(len(prefix)):
            prod = q.one
            for j in prefix[:pos] + prefix[pos + 1 :]:
                prod = int(mt[prod, cands[j]])
            omit.append(prod)
        mask = upper & (mt[total][pair] == q.zero)
        mask[:start, :] = False
        if not mask.any():
            continue
        with_a = mt[total][cands]
        mask &= (with_a != q.zero)[:, None] & (with_a != q.zero)[None, :]
        for prod in omit:
            mask &= mt[prod][pair] != q.zero
        hits = np.argwhere(mask)
        if hits.size:
            a, b = (int(v) for v in hits[0])
            chosen = [int(cands[j]) for j in prefix] + [int(cands[a]), int(cands[b])]
            return PredicateResult(
                False,
                tuple(red.lift(x) for x in chosen),
                f"the product of all {n + 1} factors lies in I, no product of {n} does",
            )
    return PredicateResult(True)


def is_n_absorbing(
    r: FiniteRing, i: IdealHandle, n: int, budgets: Budgets = DEFAULT_BUDGETS
) -> PredicateResult:
    _check_n(n)
    return absorbing_in(reduce_modulo(r, i, budgets), n, budgets)


# --- strongly n-semiprimary ----------------------------------------------


@dataclass(frozen=True)
class StrongResult:
    holds: bool
    j: IdealHandle | None = None
    k: IdealHandle | None = None
    j_power: str = ""
    k_power: str = ""

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"holds": self.holds}
        if self.j is not None and self.k is not None:
            data["witness"] = {
                "J": self.j.describe(),
                "K": self.k.describe(),
                "J^n": self.j_power,
                "K^n": self.k_power,
            }
        return data


def strongly_semiprimary_in(
    red: Reduction, n: int, budgets: Budgets = DEFAULT_BUDGETS
) -> StrongResult:
    q = red.table
    powers: dict[bytes, tuple[IdealHandle, IdealHandle]] = {}
    for ideal in enumerate_ideals(q, budgets):
        pw = ideal_power(ideal, n)
        if not pw.is_zero:
            powers.setdefault(pw.key, (ideal, pw))
    entries = list(powers.values())
    for (a_id, a_pw), (b_id, b_pw) in itertools.combinations_with_replacement(entries, 2):
        if ideal_product(a_pw, b_pw).is_zero:
            j = red.qmap.preimage(a_id)
            k = red.qmap.preimage(b_id)
            return StrongResult(
                False,
                j,
                k,
                red.qmap.preimage(a_pw).describe(),
                red.qmap.preimage(b_pw).describe(),
            )
    return StrongResult(True)


def is_strongly_n_semiprimary(
    r: FiniteRing, i: IdealHandle, n: int, budgets: Budgets = DEFAULT_BUDGETS
) -> StrongResult:
    """Decide ``J^n K^n in I => J^n in I or K^n in I`` over all ideal pairs."""
    _check_n(n)
    return strongly_semiprimary_in(reduce_modulo(r, i, budgets), n, budgets)


# --- primes and delta ----------------------------------------------------


def radical_is_prime_in(red: Reduction) -> bool:
    """In a finite ring sqrt(I) is prime iff every element outside it is a unit mod I."""
    nil = red.nilradical
    return bool(np.all(red.table.unit_mask | nil.mask))


def nilpotency_index(red: Reduction) -> int:
    """Smallest N with ``sqrt(I)^N`` inside I."""
    nil = red.nilradical
    if nil.is_zero:
        return 1
    power, k = nil, 1
    while not power.is_zero:
        power = ideal_product(power, nil)
        k += 1
    return k


@dataclass(frozen=True)
class DeltaResult:
    delta: int | None
    radical_prime: bool
    bound: int | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "delta": json_n(self.delta),
            "radical_prime": self.radical_prime,
            "bound": self.bound,
        }


def delta_in(red: Reduction, config: ConcurrencyConfig | None = None) -> DeltaResult:
    if not radical_is_prime_in(red):
        return DeltaResult(None, False)
    bound = nilpotency_index(red)
    for n in range(1, bound + 1):
        if semiprimary_in(red, n, config).holds:
            return DeltaResult(n, True, bound)
    raise AssertionError("radical power bound did not yield an n-semiprimary exponent")


def delta(
    r: FiniteRing,
    i: IdealHandle,
    budgets: Budgets = DEFAULT_BUDGETS,
    config: ConcurrencyConfig | None = None,
) -> DeltaResult:
    """Least n making I n-semiprimary; None when the radical is not prime."""
    return delta_in(reduce_modulo(r, i, budgets), config)


def is_prime(r: FiniteRing, i: IdealHandle, budgets: Budgets = DEFAULT_BUDGETS) -> bool:
    """Prime iff R/I is a field (prime and maximal coincide in finite rings)."""
    q = reduce_modulo(r, i, budgets).table
    return bool(np.all(q.unit_mask[q.elements != q.zero]))


def is_maximal(r: FiniteRing, i: IdealHandle, budgets: Budgets = DEFAULT_BUDGETS) -> bool:
    return is_prime(r, i, budgets)


def is_radical_ideal(r: FiniteRing, i: IdealHandle) -> bool:
    return radical(i) == i


def is_n_divided_prime(
    r: FiniteRing, p: IdealHandle, n: int, budgets: Budgets = DEFAULT_BUDGETS
) -> PredicateResult:
    """``x^n`` divides ``q^n`` for every ``x`` outside P and every ``q`` in P."""
    _check_n(n)
    if not p.proper or not is_prime(r, p, budgets):
        raise InvalidParameterError(f"{p.describe()} is not a prime ideal")
    pw = r.pow_all(n)
    targets = np.unique(pw[p.mask])
    outside = ~p.mask
    for value in np.unique(pw[outside]):
        multiples = np.zeros(r.order, dtype=bool)
        multiples[r.mul_row(int(value))] = True
        missing = targets[~multiples[targets]]
        if missing.size:
            x = int(np.flatnonzero(outside & (pw == value))[0])
            q = int(np.flatnonzero(p.mask & (pw == missing[0]))[0])
            return PredicateResult(
                False, (r.label(x), r.label(q)), f"x^{n} does not divide q^{n}"
            )
    return PredicateResult(True)


def chain_product(primes: Sequence[IdealHandle], exponents: Sequence[int]) -> IdealHandle:
    """``P_1^{n_1} ... P_k^{n_k}`` for a chain of primes."""
    if not primes or len(primes) != len(exponents):
        raise InvalidParameterError("need one exponent per prime")
    result = ideal_power(primes[0], exponents[0])
    for prime, e in zip(primes[1:], exponents[1:]):
        result = ideal_product(result, ideal_power(prime, e))
    return result


# --- reports ---------------------------------------------------------------


@dataclass
class ClassificationReport:
    ring: str
    ideal: str
    proper: bool
    prime: bool
    maximal: bool
    radical: bool
    primary: bool
    semiprimary: bool
    vnr_ambient: bool
    n_primary: int | None
    delta: int | None
    radical_ideal: str = ""
    n: int | None = None
    n_semiprimary: PredicateResult | None = None
    notes: dict[str, list[str]] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "ring": self.ring,
            "ideal": self.ideal,
            "radical_ideal": self.radical_ideal,
            "flags": {
                "proper": self.proper,
                "prime": self.prime,
                "maximal": self.maximal,
                "radical": self.radical,
                "primary": self.primary,
                "semiprimary": self.semiprimary,
                "vnr_ambient": self.vnr_ambient,
            },
            "n_primary": json_n(self.n_primary),
            "delta": json_n(self.delta),
            "notes": self.notes,
        }
        if self.n is not None and self.n_semiprimary is not None:
            data["n"] = self.n
            data["n_semiprimary"] = self.n_semiprimary.to_dict()
        return data

    def lines(self) -> list[str]:
        def yn(flag: bool) -> str:
            return "yes" if flag else "no"

        out = [
            f"ring: {self.ring}",
            f"ideal: {self.ideal}",
            f"radical: {self.radical_ideal}",
            f"prime: {yn(self.prime)}; maximal: {yn(self.maximal)}; radical ideal: {yn(self.radical)}",
            f"primary: {yn(self.primary)}; n-primary from: {format_n(self.n_primary)}",
            f"semiprimary: {yn(self.semiprimary)}; delta: {format_n(self.delta)}",
            f"ambient von Neumann regular: {yn(self.vnr_ambient)}",
        ]
        if self.n is not None and self.n_semiprimary is not None:
            res = self.n_semiprimary
            line = f"{self.n}-semiprimary: {yn(bool(res.holds))}"
            if res.witness:
                line += f" (witness {', '.join(res.witness)})"
            out.append(line)
        for key, witness in self.notes.items():
            out.append(f"  {key}: {', '.join(witness)}")
        return out


def classify_ideal(
    r: FiniteRing,
    i: IdealHandle,
    budgets: Budgets = DEFAULT_BUDGETS,
    n: int | None = None,
    config: ConcurrencyConfig | None = None,
) -> ClassificationReport:
    red = reduce_modulo(r, i, budgets)
    q = red.table
    nil = red.nilradical
    notes: dict[str, list[str]] = {}

    prime = semiprimary_in(red, 1, config)
    if not prime.holds:
        notes["not prime"] = list(prime.witness)
    radical_flag = nil.is_zero
    if not radical_flag:
        x = int(nil.elements[1])
        notes["not radical"] = [red.lift(x)]
    primary = bool(np.all(q.unit_mask | nil.mask))
    if not primary:
        y = int(np.flatnonzero(~q.unit_mask & ~nil.mask)[0])
        notes["not primary"] = [red.lift(y)]
    semiprimary = radical_is_prime_in(red)
    if not semiprimary:
        split = semiprimary_in(red, q.nil_bound, config)
        notes["radical not prime"] = list(split.witness)
    report = ClassificationReport(
        ring=r.name,
        ideal=i.describe(),
        proper=True,
        prime=bool(prime.holds),
        maximal=bool(prime.holds),
        radical=radical_flag,
        primary=primary,
        semiprimary=semiprimary,
        vnr_ambient=r.is_vnr(),
        n_primary=minimal_n_primary(red) if primary else None,
        delta=delta_in(red, config).delta,
        radical_ideal=radical(i).describe(),
        notes=notes,
    )
    if n is not None:
        _check_n(n)
        report.n = n
        report.n_semiprimary = semiprimary_in(red, n, config)
    get_logger().log_operation("classify_ideal", ring=r.name, ideal=report.ideal)
    return report


@dataclass(frozen=True)
class RingReport:
    name: str
    order: int
    characteristic: int
    dim0: bool
    vnr: bool
    reduced: bool
    local: bool
    units: int
    nilradical_size: int
    n_semiprimary_implies_prime: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "order": self.order,
            "characteristic": self.characteristic,
            "dim0": self.dim0,
            "vnr": self.vnr,
            "reduced": self.reduced,
            "local": self.local,
            "units": self.units,
            "nilradical_size": self.nilradical_size,
            "n_semiprimary_implies_prime": self.n_semiprimary_implies_prime,
        }


def classify_ring(r: FiniteRing) -> RingReport:
    """Finite rings are zero dimensional; every n-semiprimary ideal is prime iff R is VNR."""
    vnr = r.is_vnr()
    nil = r.nilradical()
    return RingReport(
        name=r.name,
        order=r.order,
        characteristic=r.characteristic(),
        dim0=True,
        vnr=vnr,
        reduced=nil.is_zero,
        local=r.is_local(),
        units=int(np.count_nonzero(r.unit_mask)),
        nilradical_size=nil.size,
        n_semiprimary_implies_prime=vnr,
    )


__all__ = [
    "INFINITY",
    "ClassificationReport",
    "DeltaResult",
    "PredicateResult",
    "Reduction",
    "RingReport",
    "StrongResult",
    "absorbing_in",
    "chain_product",
    "classify_ideal",
    "classify_ring",
    "delta",
    "delta_in",
    "format_n",
    "is_maximal",
    "is_n_absorbing",
    "is_n_divided_prime",
    "is_n_primary",
    "is_n_semiprimary",
    "is_prime",
    "is_radical_ideal",
    "is_strongly_n_semiprimary",
    "json_n",
    "minimal_n_primary",
    "mixed_exponent_in",
    "nilpotency_index",
    "primary_in",
    "radical_is_prime_in",
    "reduce_modulo",
    "semiprimary_in",
    "strongly_semiprimary_in",
]
