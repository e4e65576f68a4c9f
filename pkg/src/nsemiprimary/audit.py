"""Audit harness: quantified checks over the seeded corpus.

Each check quantifies one structural fact about n-semiprimary ideals over the
corpus items it applies to and records passes, refutations (with witnesses)
and budget skips in a :class:`Tally`. A refutation means the library is wrong,
so any refutation fails the run.
"""

from __future__ import annotations

import itertools
import threading
import zlib
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np
import sympy

from . import __version__
from .benchmarking import BenchmarkConfig, PerformanceBenchmark
from .catalog import (
    Corpus,
    CorpusItem,
    fixture_data,
    gap_ring,
    monomial_fixture,
    prime_slots_ring,
    ring_fixture,
    series_fixture,
    valuation_fixture,
)
from .classify import (
    Reduction,
    absorbing_in,
    chain_product,
    classify_ring,
    delta,
    delta_in,
    is_n_semiprimary,
    mixed_exponent_in,
    nilpotency_index,
    primary_in,
    radical_is_prime_in,
    reduce_modulo,
    semiprimary_in,
    strongly_semiprimary_in,
)
from .concurrency import SERIAL, ConcurrencyConfig, parallel_map
from .config import Budgets, SeriesBounds, SuiteConfig
from .errors import (
    EXIT_BUDGET,
    EXIT_OK,
    EXIT_REFUTED,
    BudgetExceededError,
    NSemiprimaryError,
    PrecisionError,
    UnknownCheckError,
)
from .fields import CoeffField, coeff_field
from .locations import check_aliases, check_location, normalize_ref
from .logging import get_logger
from .monomial import (
    CERTIFIED_FALSE,
    CERTIFIED_TRUE,
    UNKNOWN,
    MonomialIdeal,
    certify_n_semiprimary,
    mono_counterexample_search,
    mono_primary_witness,
    stand_in,
)
from .pid import PidIdeal, finite_delta, pid_delta
from .polytext import format_polynomial
from .rings import (
    FiniteRing,
    IdealHandle,
    ModuleSpec,
    enumerate_ideals,
    ideal_power,
    ideal_sum,
    idealization_ideal,
    localize,
    module_product,
    principal_ideal,
    quotient_ring,
    radical,
    zero_ideal,
)
from .series import (
    POWER_AVOIDS,
    POWER_LIES_IN,
    SeriesRingSpec,
    TruncatedLaurent,
    colon_ring,
    integral_closure,
    laurent_inv,
    laurent_mul,
    laurent_pow,
    maximal_ideal,
    membership,
    pullback,
    series_ring,
)
from .series_checks import (
    N_DIVIDED_PRIME,
    N_POWERFUL_SEMIPRIMARY,
    N_PVD,
    N_ROOT_CLOSED,
    N_ROOT_EXTENSION,
    N_SEMIPRIMARY,
    N_VD,
    PARTIAL,
    PN_VD,
    POWER_IDEAL_EQUALS,
    STAR_CONDITION,
    SeriesProperty,
    Verdict,
    bounded_check,
    delta_bar_profile,
    make_property,
    root_ideal,
    tower_search,
)
from .specs import SeriesFixture, build_ring, module_from_spec, parse_ideal
from .valuation import (
    GROUP_TAGS,
    OracleMismatchError,
    OrderedGroup,
    enable_oracle,
    family_samples,
    height_one_prime,
    maximal_ideal as vd_maximal_ideal,
    oracle_enabled,
    vd_delta,
    vd_example_table,
    vd_is_n_semiprimary,
    vd_contains,
    vd_power,
    vd_sqrt,
)

FORALL = "forall"
EXPECTED_WITNESS = "expected-witness"

FINITE = "finite"
MONOMIAL = "monomial"
PID = "pid"
VALUATION = "valuation"
SERIES = "series"

PASSED = "passed"
REFUTED = "refuted"
SKIPPED = "skipped"

FULL_ENUMERATION_ORDER = 256
MAX_IDEALS_PER_RING = 48
QUOTIENT_LIMIT = 1024
SAMPLED_PRINCIPALS = 8

_DEDEKIND_LIMITS = {"small": 64, "default": 200, "large": 200}

# family -> verdict per value group; rank one groups have no P rows
EXPECTED_TABLE: dict[str, dict[str, str]] = {
    "Z": {"zero": "yes", "M": "yes", "other proper": "yes"},
    "Q": {"zero": "yes", "M": "yes", "other proper": "no"},
    "Z+Z": {"zero": "yes", "P": "yes", "M": "yes", "below P": "yes", "between P and M": "yes"},
    "Q+Q": {"zero": "yes", "P": "yes", "M": "yes", "below P": "no", "between P and M": "no"},
    "Z+Q": {"zero": "yes", "P": "yes", "M": "yes", "below P": "yes", "between P and M": "no"},
    "Q+Z": {"zero": "yes", "P": "yes", "M": "yes", "below P": "no", "between P and M": "yes"},
}


# --- registry ---------------------------------------------------------------


@dataclass
class Tally:
    check_id: str
    tried: int = 0
    passes: int = 0
    refutations: list[dict[str, Any]] = field(default_factory=list)
    skips: list[dict[str, Any]] = field(default_factory=list)
    partial: int = 0

    def record(self, ok: bool, instance: str, **details: Any) -> None:
        self.tried += 1
        if ok:
            self.passes += 1
            return
        entry = {"instance": instance, **details}
        self.refutations.append(entry)
        get_logger().log_refutation(self.check_id, instance)

    def skip(self, instance: str, reason: str) -> None:
        self.skips.append({"instance": instance, "reason": reason})

    def verdict(self, v: Verdict, instance: str) -> bool | None:
        """Return whether the verdict holds; Partial verdicts become skips."""
        if v.kind == PARTIAL:
            self.partial += 1
            self.skip(instance, v.reason or "partial search")
            return None
        return v.holds


CheckFn = Callable[["AuditContext", Tally], None]


@dataclass(frozen=True)
class TheoremCheck:
    """One audited statement; ``ref`` and ``anchor`` locate it in the literature."""

    id: str
    statement: str
    scope: str
    shape: str
    run: CheckFn = field(repr=False, compare=False)
    ref: str = ""
    anchor: str = ""

    def describe(self) -> dict[str, str]:
        return {
            "id": self.id,
            "ref": self.ref,
            "anchor": self.anchor,
            "scope": self.scope,
            "shape": self.shape,
            "statement": self.statement,
        }


_REGISTRY: dict[str, TheoremCheck] = {}


def _check(check_id: str, statement: str, scope: str, shape: str = FORALL) -> Callable[[CheckFn], CheckFn]:
    location = check_location(check_id)

    def register(fn: CheckFn) -> CheckFn:
        if check_id in _REGISTRY:
            raise ValueError(f"duplicate check id {check_id}")
        _REGISTRY[check_id] = TheoremCheck(
            check_id, statement, scope, shape, fn, location.ref, location.anchor
        )
        return fn

    return register


def check_registry() -> dict[str, TheoremCheck]:
    return dict(_REGISTRY)


def _lookup(token: str) -> list[TheoremCheck]:
    if token in _REGISTRY:
        return [_REGISTRY[token]]
    target = check_aliases().get(token)
    if target is not None:
        return [_REGISTRY[target]]
    ref = normalize_ref(token)
    return [c for c in _REGISTRY.values() if normalize_ref(c.ref) == ref]


def resolve_checks(ids: list[str] | None = None) -> list[TheoremCheck]:
    """Select checks by id, alias or location ref; a ref selects all of its checks."""
    if not ids:
        return list(_REGISTRY.values())
    selected: list[TheoremCheck] = []
    unknown = []
    for token in ids:
        found = _lookup(token)
        if not found:
            unknown.append(token)
        selected += found
    if unknown:
        raise UnknownCheckError(
            f"unknown check id(s): {', '.join(unknown)}; run 'nsemiprimary audit --list'"
        )
    return list({c.id: c for c in selected}.values())

# --- context ----------------------------------------------------------------


@dataclass
class _RingEntry:
    ring: FiniteRing
    reductions: list[Reduction]
    complete: bool


class AuditContext:
    """Lazily built corpus objects shared by all checks of one run."""

    def __init__(
        self,
        corpus: Corpus,
        config: SuiteConfig,
    ) -> None:
        self.corpus = corpus
        self.config = config
        self.budgets: Budgets = config.budgets
        self.bounds: SeriesBounds = config.series
        self.max_n = config.audit.max_n
        self._lock = threading.Lock()
        self._rings: dict[str, _RingEntry | BudgetExceededError] = {}
        self._verdicts: dict[tuple[SeriesProperty, SeriesBounds], Verdict] = {}

    def rng(self, name: str) -> np.random.Generator:
        return np.random.default_rng([self.corpus.seed, zlib.crc32(name.encode())])

    def sweep_bounds(self, q: int) -> SeriesBounds:
        """Smaller windows for the corpus-wide series sweeps."""
        return replace(
            self.bounds,
            order_bound=min(self.bounds.order_bound, 6),
            degree_bound=min(self.bounds.degree_bound, 3 if q <= 4 else 2),
        )

    # finite rings

    def _build(self, item: CorpusItem) -> _RingEntry:
        ring = build_ring(item.spec, self.budgets)
        if ring.order <= FULL_ENUMERATION_ORDER:
            ideals = [i for i in enumerate_ideals(ring, self.budgets) if i.proper]
            complete = True
        else:
            ideals = self._sampled_ideals(item.name, ring)
            complete = False
        if item.source == "fixture":
            extra = fixture_data(item.name).get("ideals", {})
            ideals += [parse_ideal(ring, text) for text in extra.values()]
        unique = list({i.key: i for i in ideals if i.proper}.values())
        if len(unique) > MAX_IDEALS_PER_RING:
            picks = sorted(self.rng(item.name).choice(len(unique), MAX_IDEALS_PER_RING, replace=False))
            unique = [unique[int(k)] for k in picks]
            complete = False
        reductions = [
            reduce_modulo(ring, i, self.budgets)
            for i in unique
            if ring.order // i.size <= QUOTIENT_LIMIT
        ]
        return _RingEntry(ring, reductions, complete)

    def _sampled_ideals(self, name: str, ring: FiniteRing) -> list[IdealHandle]:
        ideals = [zero_ideal(ring)]
        nil = ring.nilradical()
        power, k = nil, 1
        while not power.is_zero and k <= 4:
            ideals.append(power)
            power = ideal_power(nil, k + 1)
            k += 1
        for x in self.rng(name).choice(ring.order, SAMPLED_PRINCIPALS, replace=False):
            ideals.append(principal_ideal(ring, int(x)))
        return ideals

    def entry(self, item: CorpusItem) -> _RingEntry:
        with self._lock:
            cached = self._rings.get(item.name)
        if cached is None:
            try:
                cached = self._build(item)
            except BudgetExceededError as exc:
                cached = exc
            with self._lock:
                cached = self._rings.setdefault(item.name, cached)
        if isinstance(cached, BudgetExceededError):
            raise cached
        return cached

    def finite(
        self, tally: Tally, max_order: int | None = None, kind: str | None = None
    ) -> Iterator[tuple[CorpusItem, _RingEntry]]:
        for item in self.corpus.rings():
            if kind is not None and item.spec["kind"] != kind:
                continue
            try:
                entry = self.entry(item)
            except BudgetExceededError as exc:
                tally.skip(item.name, str(exc))
                continue
            if max_order is not None and entry.ring.order > max_order:
                continue
            yield item, entry

    # series

    def series(self) -> list[SeriesFixture]:
        out = []
        for item in self.corpus.by_source("fixture"):
            if item.kind == "series":
                out.append(series_fixture(item.name))
        return out

    def verdict(self, prop: SeriesProperty, bounds: SeriesBounds) -> Verdict:
        key = (prop, bounds)
        with self._lock:
            cached = self._verdicts.get(key)
        if cached is None:
            cached = bounded_check(prop, bounds, self.budgets, SERIAL)
            with self._lock:
                cached = self._verdicts.setdefault(key, cached)
        return cached


def _instance(item: CorpusItem, red: Reduction) -> str:
    return f"{item.name} {red.ideal.describe()}"


def _is_prime_red(red: Reduction) -> bool:
    q = red.table
    return bool(np.all(q.unit_mask[q.elements != q.zero]))


# --- finite ring checks -----------------------------------------------------


@_check(
    "radical-and-powers",
    "a prime radical whose N-th power lies in I makes I N-semiprimary",
    FINITE,
)
def _radical_and_powers(ctx: AuditContext, tally: Tally) -> None:
    for item, entry in ctx.finite(tally):
        for red in entry.reductions:
            if not radical_is_prime_in(red):
                continue
            bound = nilpotency_index(red)
            res = semiprimary_in(red, bound, SERIAL)
            tally.record(bool(res.holds), _instance(item, red), n=bound, witness=list(res.witness))


@_check(
    "power-containment",
    "an n-semiprimary ideal has a prime radical and contains x^n for every x in it",
    FINITE,
)
def _power_containment(ctx: AuditContext, tally: Tally) -> None:
    for item, entry in ctx.finite(tally):
        for red in entry.reductions:
            nil = red.nilradical
            for n in range(1, ctx.max_n + 1):
                if not semiprimary_in(red, n, SERIAL).holds:
                    continue
                powers = red.table.pow_all(n)[nil.mask]
                ok = radical_is_prime_in(red) and bool(np.all(powers == red.table.zero))
                tally.record(ok, _instance(item, red), n=n)


@_check("upward-closure", "an n-semiprimary ideal is m-semiprimary for every m >= n", FINITE)
def _upward_closure(ctx: AuditContext, tally: Tally) -> None:
    for item, entry in ctx.finite(tally):
        for red in entry.reductions:
            d = delta_in(red, SERIAL).delta
            if d is None:
                continue
            for m in range(d + 1, d + 5):
                tally.record(bool(semiprimary_in(red, m, SERIAL).holds), _instance(item, red), n=m)


@_check("multiples", "an n-semiprimary ideal is mn-semiprimary for every m", FINITE)
def _multiples(ctx: AuditContext, tally: Tally) -> None:
    for item, entry in ctx.finite(tally):
        for red in entry.reductions:
            for n in range(1, 4):
                if not semiprimary_in(red, n, SERIAL).holds:
                    continue
                for m in (2, 3):
                    res = semiprimary_in(red, m * n, SERIAL)
                    tally.record(bool(res.holds), _instance(item, red), n=m * n)


@_check("primary-implies-semiprimary", "an n-primary ideal is n-semiprimary", FINITE)
def _primary_implies_semiprimary(ctx: AuditContext, tally: Tally) -> None:
    for item, entry in ctx.finite(tally):
        for red in entry.reductions:
            for n in range(1, ctx.max_n + 1):
                if primary_in(red, n).holds:
                    res = semiprimary_in(red, n, SERIAL)
                    tally.record(bool(res.holds), _instance(item, red), n=n)


@_check(
    "absorbing-implies-semiprimary",
    "an n-absorbing ideal with prime radical is n-semiprimary",
    FINITE,
)
def _absorbing_implies_semiprimary(ctx: AuditContext, tally: Tally) -> None:
    for item, entry in ctx.finite(tally, max_order=32):
        for red in entry.reductions:
            if not radical_is_prime_in(red):
                continue
            for n in (1, 2):
                res = absorbing_in(red, n, ctx.budgets)
                if res.holds is None:
                    tally.skip(_instance(item, red), res.reason or "absorbing search cut off")
                    continue
                if res.holds:
                    ok = bool(semiprimary_in(red, n, SERIAL).holds)
                    tally.record(ok, _instance(item, red), n=n)


@_check(
    "mixed-exponents",
    "I n-semiprimary and x^m y^k in I give x^n or y^n in I",
    FINITE,
)
def _mixed_exponents(ctx: AuditContext, tally: Tally) -> None:
    for item, entry in ctx.finite(tally):
        for red in entry.reductions:
            d = delta_in(red, SERIAL).delta
            if d is None:
                continue
            for m, k in ((1, 1), (1, 2), (2, 3), (d + 1, 1)):
                res = mixed_exponent_in(red, d, m, k)
                tally.record(bool(res.holds), _instance(item, red), n=d, m=m, k=k,
                             witness=list(res.witness))


@_check(
    "products-of-primes",
    "P^e is m-semiprimary for every m >= e when P is prime",
    FINITE,
)
def _products_of_primes(ctx: AuditContext, tally: Tally) -> None:
    for item, entry in ctx.finite(tally):
        primes = [red.ideal for red in entry.reductions if _is_prime_red(red)]
        for prime in primes:
            for e in (1, 2, 3):
                ideal = chain_product([prime], [e])
                if not ideal.proper:
                    continue
                red = reduce_modulo(entry.ring, ideal, ctx.budgets)
                for m in range(e, e + 3):
                    tally.record(bool(semiprimary_in(red, m, SERIAL).holds),
                                 f"{item.name} {prime.describe()}^{e}", n=m)


@_check(
    "zero-dimensional-collapse",
    "in a zero-dimensional ring every n-semiprimary ideal is prime iff the ring is von Neumann regular",
    FINITE,
)
def _zero_dimensional_collapse(ctx: AuditContext, tally: Tally) -> None:
    for item, entry in ctx.finite(tally):
        if not entry.complete:
            continue
        gap = any(
            delta_in(red, SERIAL).delta is not None and not _is_prime_red(red)
            for red in entry.reductions
        )
        vnr = entry.ring.is_vnr()
        report = classify_ring(entry.ring)
        tally.record(vnr == (not gap) and report.n_semiprimary_implies_prime == vnr, item.name,
                     vnr=vnr)


@_check("vnr-collapse", "in a von Neumann regular ring n-semiprimary ideals are prime", FINITE)
def _vnr_collapse(ctx: AuditContext, tally: Tally) -> None:
    for item, entry in ctx.finite(tally):
        if not entry.ring.is_vnr():
            continue
        for red in entry.reductions:
            for n in range(1, ctx.max_n + 1):
                if semiprimary_in(red, n, SERIAL).holds:
                    tally.record(_is_prime_red(red), _instance(item, red), n=n)


@_check(
    "quotient-transport",
    "for J inside I, I is n-semiprimary in R iff I/J is n-semiprimary in R/J",
    FINITE,
)
def _quotient_transport(ctx: AuditContext, tally: Tally) -> None:
    for item, entry in ctx.finite(tally, max_order=64):
        ideals = [red.ideal for red in entry.reductions]
        for red in entry.reductions:
            below = [j for j in ideals if j != red.ideal and j.issubset(red.ideal)][:3]
            for j in below:
                qmap = quotient_ring(entry.ring, j)
                image = qmap.image(red.ideal)
                for n in range(1, 4):
                    here = bool(semiprimary_in(red, n, SERIAL).holds)
                    there = bool(is_n_semiprimary(qmap.ring, image, n, ctx.budgets, SERIAL).holds)
                    tally.record(here == there, f"{_instance(item, red)} mod {j.describe()}", n=n)


@_check(
    "localization",
    "an n-semiprimary I missing S stays n-semiprimary in the localization at S",
    FINITE,
)
def _localization(ctx: AuditContext, tally: Tally) -> None:
    for item, entry in ctx.finite(tally, max_order=64):
        ring = entry.ring
        for red in entry.reductions:
            d = delta_in(red, SERIAL).delta
            if d is None:
                continue
            rad = radical(red.ideal)
            outside = np.flatnonzero(~rad.mask & ~ring.unit_mask)[:4]
            for s in outside:
                loc = localize(ring, [int(s)], ctx.budgets)
                if loc.ring is None or np.any(loc.closure & red.ideal.mask):
                    continue
                image = loc.image(red.ideal)
                if not image.proper:
                    continue
                res = is_n_semiprimary(loc.ring, image, d, ctx.budgets, SERIAL)
                tally.record(bool(res.holds), f"{_instance(item, red)} at {ring.label(int(s))}", n=d)


@_check("strong-implies-plain", "a strongly n-semiprimary ideal is n-semiprimary", FINITE)
def _strong_implies_plain(ctx: AuditContext, tally: Tally) -> None:
    for item, entry in ctx.finite(tally, max_order=32):
        for red in entry.reductions:
            for n in (1, 2):
                if strongly_semiprimary_in(red, n, ctx.budgets).holds:
                    tally.record(bool(semiprimary_in(red, n, SERIAL).holds),
                                 _instance(item, red), n=n)


def _idealizations(
    ctx: AuditContext, tally: Tally
) -> Iterator[tuple[CorpusItem, FiniteRing, ModuleSpec, FiniteRing, list[IdealHandle]]]:
    for item, entry in ctx.finite(tally, kind="idealization"):
        base = build_ring(item.spec["ring"], ctx.budgets)
        module = module_from_spec(base, item.spec["module"])
        ideals = [i for i in enumerate_ideals(base, ctx.budgets) if i.proper][:20]
        yield item, base, module, entry.ring, ideals


@_check(
    "idealization-shift",
    "I n-semiprimary in R makes I(+)IM (n+1)-semiprimary in R(+)M, and conversely at level n",
    FINITE,
)
def _idealization_shift(ctx: AuditContext, tally: Tally) -> None:
    for item, base, module, ring, ideals in _idealizations(ctx, tally):
        for ideal in ideals:
            sub = module_product(ideal, module)
            lifted = idealization_ideal(ring, ideal, sub, module.size)
            instance = f"{item.name} {ideal.describe()}(+)IM"
            d = delta(base, ideal, ctx.budgets, SERIAL).delta
            if d is not None:
                res = is_n_semiprimary(ring, lifted, d + 1, ctx.budgets, SERIAL)
                tally.record(bool(res.holds), instance, n=d + 1)
            for n in range(1, 4):
                if is_n_semiprimary(ring, lifted, n, ctx.budgets, SERIAL).holds:
                    back = is_n_semiprimary(base, ideal, n, ctx.budgets, SERIAL)
                    tally.record(bool(back.holds), instance, n=n, direction="converse")


@_check(
    "idealization-characteristic",
    "when char R = n >= 2, I(+)S is n-semiprimary iff I is",
    FINITE,
)
def _idealization_characteristic(ctx: AuditContext, tally: Tally) -> None:
    for item, base, module, ring, ideals in _idealizations(ctx, tally):
        n = base.characteristic()
        if n < 2:
            continue
        for ideal in ideals:
            here = bool(is_n_semiprimary(base, ideal, n, ctx.budgets, SERIAL).holds)
            for label, sub in (("IM", module_product(ideal, module)),
                               ("M", np.ones(module.size, dtype=bool))):
                lifted = idealization_ideal(ring, ideal, sub, module.size)
                there = bool(is_n_semiprimary(ring, lifted, n, ctx.budgets, SERIAL).holds)
                tally.record(here == there, f"{item.name} {ideal.describe()}(+){label}", n=n)


@_check(
    "delta-consistency",
    "delta(I) is the least n with I n-semiprimary, and infinite exactly when none exists",
    FINITE,
)
def _delta_consistency(ctx: AuditContext, tally: Tally) -> None:
    for item, entry in ctx.finite(tally):
        for red in entry.reductions:
            d = delta_in(red, SERIAL).delta
            if d is None:
                ok = not any(semiprimary_in(red, n, SERIAL).holds for n in range(1, ctx.max_n + 1))
            else:
                ok = bool(semiprimary_in(red, d, SERIAL).holds) and (
                    d == 1 or not semiprimary_in(red, d - 1, SERIAL).holds
                )
            tally.record(ok, _instance(item, red), delta=d)


# --- principal ideal domains ------------------------------------------------


@_check(
    "dedekind-delta",
    "delta((m)) in Z equals the exponent of a prime power m and is infinite otherwise",
    PID,
)
def _dedekind_delta(ctx: AuditContext, tally: Tally) -> None:
    for m in range(2, _DEDEKIND_LIMITS[ctx.corpus.profile] + 1):
        try:
            finite = finite_delta(m, ctx.budgets)
        except BudgetExceededError as exc:
            tally.skip(f"({m})", str(exc))
            continue
        closed = pid_delta(PidIdeal.integer(m), ctx.budgets).delta
        tally.record(closed == finite, f"({m})", closed=closed, finite=finite)


def _monic_polynomials(p: int, degree: int) -> Iterator[sympy.Poly]:
    t = sympy.Symbol("t")
    for tail in itertools.product(range(p), repeat=degree):
        yield sympy.Poly([1, *tail], t, modulus=p)


@_check(
    "delta-two-consistency",
    "delta((f)) = 2 exactly when f is the square of a prime element",
    PID,
)
def _delta_two_consistency(ctx: AuditContext, tally: Tally) -> None:
    for m in range(2, _DEDEKIND_LIMITS[ctx.corpus.profile] + 1):
        factors = sympy.factorint(m)
        square = len(factors) == 1 and next(iter(factors.values())) == 2
        got = pid_delta(PidIdeal.integer(m), ctx.budgets).delta
        tally.record((got == 2) == square, f"({m})")
    for p in (2, 3):
        squares = {
            tuple(int(c) % p for c in (g * g).all_coeffs())
            for d in (1, 2)
            for g in _monic_polynomials(p, d)
            if g.is_irreducible
        }
        for degree in range(1, 5):
            for f in _monic_polynomials(p, degree):
                coeffs = [int(c) % p for c in f.all_coeffs()]
                text = format_polynomial(
                    {(degree - i,): c for i, c in enumerate(coeffs) if c}, ("t",)
                )
                got = pid_delta(PidIdeal.polynomial(text, p), ctx.budgets).delta
                tally.record((got == 2) == (tuple(coeffs) in squares), f"({text}) in F{p}[t]")


# --- monomial ideals --------------------------------------------------------


def _monomial_ideals(ctx: AuditContext) -> list[tuple[str, MonomialIdeal]]:
    out = []
    for item in ctx.corpus.by_source("fixture"):
        if item.kind == "monomial":
            out.append((item.name, monomial_fixture(item.name).ideal))
    generated = [f"X^{a}, Y^{b}" for a in (1, 2, 3) for b in (1, 2, 3)]
    generated += ["X*Y, Y^2", "X*Y, Y^3", "X^2, X*Y, Y^2", "X^2*Y, Y^2", "X^2, X*Y^2, Y^3"]
    for text in generated:
        out.append((f"({text}) over F2", MonomialIdeal.parse(2, text)))
    out.append(("(X^2, Y^2) over F3", MonomialIdeal.parse(3, "X^2, Y^2")))
    return out


@_check(
    "monomial-certificate-soundness",
    "certified verdicts on monomial ideals agree with witness search and exact finite transport",
    MONOMIAL,
)
def _monomial_certificate_soundness(ctx: AuditContext, tally: Tally) -> None:
    for name, ideal in _monomial_ideals(ctx):
        for n in range(1, 4):
            cert = certify_n_semiprimary(ideal, n)
            if cert.kind == CERTIFIED_TRUE:
                try:
                    search = mono_counterexample_search(ideal, n, 2, 2, ctx.budgets, SERIAL)
                except BudgetExceededError as exc:
                    tally.skip(name, str(exc))
                    continue
                tally.record(not search.found, name, n=n, witness=list(search.witness or ()))
            elif cert.kind == CERTIFIED_FALSE:
                si = stand_in(ideal, budgets=ctx.budgets)
                if si.exact:
                    res = is_n_semiprimary(si.ring, si.ideal, n, ctx.budgets, SERIAL)
                    tally.record(res.holds is False, name, n=n)


@_check(
    "monomial-stand-in-agreement",
    "the certificate and the exact finite stand-in give the same n-semiprimary verdict",
    MONOMIAL,
)
def _monomial_stand_in_agreement(ctx: AuditContext, tally: Tally) -> None:
    for name, ideal in _monomial_ideals(ctx):
        si = stand_in(ideal, budgets=ctx.budgets)
        if not si.exact:
            continue
        for n in range(1, 4):
            cert = certify_n_semiprimary(ideal, n)
            if cert.kind == UNKNOWN:
                continue
            res = is_n_semiprimary(si.ring, si.ideal, n, ctx.budgets, SERIAL)
            tally.record((cert.kind == CERTIFIED_TRUE) == bool(res.holds), name, n=n)


# --- valuation domains ------------------------------------------------------


@_check(
    "valuation-semiprimary-criterion",
    "in a valuation domain n-semiprimary is decided by sqrt(I)^n inside I and is upward closed",
    VALUATION,
)
def _valuation_semiprimary_criterion(ctx: AuditContext, tally: Tally) -> None:
    previous = oracle_enabled()
    enable_oracle(True)
    try:
        for tag in GROUP_TAGS:
            group = OrderedGroup.parse(tag)
            for family, samples in family_samples(group).items():
                if family == "zero":
                    continue
                for desc in samples:
                    instance = f"{tag} {desc.describe()}"
                    levels = range(1, ctx.max_n + 2)
                    try:
                        flags = [vd_is_n_semiprimary(desc, n) for n in levels]
                        criterion = [vd_contains(vd_power(vd_sqrt(desc), n), desc) for n in levels]
                    except OracleMismatchError as exc:
                        tally.record(False, instance, reason=str(exc))
                        continue
                    upward = all(b for a, b in zip(flags, flags[1:]) if a)
                    tally.record(upward and flags == criterion, instance, family=family)
    finally:
        enable_oracle(previous)


@_check(
    "valuation-idempotent-primes",
    "an idempotent prime P is the only n-semiprimary ideal with radical P",
    VALUATION,
)
def _valuation_idempotent_primes(ctx: AuditContext, tally: Tally) -> None:
    for tag in GROUP_TAGS:
        group = OrderedGroup.parse(tag)
        primes = [vd_maximal_ideal(group)]
        if group.rank == 2:
            primes.append(height_one_prime(group))
        samples = [d for ds in family_samples(group).values() for d in ds]
        for prime in primes:
            if vd_power(prime, 2).key() != prime.key():
                continue
            tally.record(vd_delta(prime, ctx.bounds.max_n) == 1, f"{tag} {prime.describe()}")
            for desc in samples:
                if desc.key() == prime.key() or vd_sqrt(desc).key() != prime.key():
                    continue
                tally.record(vd_delta(desc, ctx.bounds.max_n) is None, f"{tag} {desc.describe()}")


@_check(
    "valuation-table",
    "the family table of every value group matches the known classification",
    VALUATION,
    EXPECTED_WITNESS,
)
def _valuation_table(ctx: AuditContext, tally: Tally) -> None:
    for tag in valuation_fixture("valuation_groups").tags:
        table = vd_example_table(tag, ctx.bounds.max_n)
        got = {row.family: row.semiprimary_label for row in table.rows}
        agree = all(row.semiprimary_label == row.powerful_label for row in table.rows)
        tally.record(got == EXPECTED_TABLE[tag] and agree, tag, table=got)


# --- series rings -----------------------------------------------------------


def _sample_elements(ring: SeriesRingSpec, max_order: int = 8) -> list[TruncatedLaurent]:
    fld = ring.field
    coeffs = [1] if fld.q == fld.p else [1, fld.p]
    out = []
    for e in range(-3, max_order - 1):
        for c in coeffs:
            out.append(TruncatedLaurent.monomial(fld, c, e))
        out.append(TruncatedLaurent.from_terms(fld, {e: 1, e + 1: 1}))
        out.append(TruncatedLaurent.from_terms(fld, {e: coeffs[-1], e + 2: 1}))
    return out


def _series_sweep(
    ctx: AuditContext, tally: Tally
) -> Iterator[tuple[SeriesFixture, SeriesBounds, int]]:
    for fixture in ctx.series():
        bounds = ctx.sweep_bounds(fixture.ring.field.q)
        for n in range(1, ctx.max_n + 1):
            yield fixture, bounds, n


@_check(
    "powerful-implies-semiprimary",
    "an n-powerful semiprimary ideal is n-semiprimary",
    SERIES,
)
def _powerful_implies_semiprimary(ctx: AuditContext, tally: Tally) -> None:
    for fixture, bounds, n in _series_sweep(ctx, tally):
        ideal = fixture.ideal()
        instance = f"{fixture.name} n={n}"
        strong = tally.verdict(ctx.verdict(make_property(N_POWERFUL_SEMIPRIMARY, fixture.ring, n, ideal), bounds), instance)
        if not strong:
            continue
        plain = ctx.verdict(make_property(N_SEMIPRIMARY, fixture.ring, n, ideal), bounds)
        tally.record(not plain.refuted, instance, verdict=plain.to_dict())


@_check(
    "power-closure-in-powerful-primes",
    "for an n-powerful semiprimary prime P, x^m in P for some m gives x^n in P",
    SERIES,
)
def _power_closure(ctx: AuditContext, tally: Tally) -> None:
    for fixture, bounds, n in _series_sweep(ctx, tally):
        prime = fixture.ideal()
        verdict = ctx.verdict(make_property(N_POWERFUL_SEMIPRIMARY, fixture.ring, n, prime), bounds)
        if not tally.verdict(verdict, f"{fixture.name} n={n}"):
            continue
        for x in _sample_elements(fixture.ring, bounds.order_bound):
            if any(membership(x, prime, POWER_LIES_IN, m) for m in range(1, 7)):
                tally.record(membership(x, prime, POWER_LIES_IN, n), f"{fixture.name} x={x}", n=n)


@_check(
    "root-closed-collapse",
    "an n-root closed domain is an n-PVD exactly when it is a PVD",
    SERIES,
)
def _root_closed_collapse(ctx: AuditContext, tally: Tally) -> None:
    for fixture, bounds, n in _series_sweep(ctx, tally):
        if n < 2:
            continue
        instance = f"{fixture.name} n={n}"
        rc = tally.verdict(ctx.verdict(make_property(N_ROOT_CLOSED, fixture.ring, n), bounds), instance)
        if not rc:
            continue
        at_n = tally.verdict(ctx.verdict(make_property(N_PVD, fixture.ring, n), bounds), instance)
        at_1 = tally.verdict(ctx.verdict(make_property(N_PVD, fixture.ring, 1), bounds), instance)
        if at_n is None or at_1 is None:
            continue
        tally.record(at_n == at_1, instance)


@_check(
    "nvd-integral-powers",
    "over an n-VD every integral element x has x^n in R",
    SERIES,
)
def _nvd_integral_powers(ctx: AuditContext, tally: Tally) -> None:
    for fixture, bounds, n in _series_sweep(ctx, tally):
        if not tally.verdict(ctx.verdict(make_property(N_VD, fixture.ring, n), bounds), f"{fixture.name} n={n}"):
            continue
        for x in _sample_elements(fixture.ring, bounds.order_bound):
            if x.order >= 0:
                ok = membership(x, fixture.ring, POWER_LIES_IN, n)
                tally.record(ok, f"{fixture.name} x={x}", n=n)


@_check(
    "closure-root-extension",
    "for an n-VD the integral closure is a valuation ring and an n-root extension",
    SERIES,
)
def _closure_root_extension(ctx: AuditContext, tally: Tally) -> None:
    for fixture, bounds, n in _series_sweep(ctx, tally):
        instance = f"{fixture.name} n={n}"
        if not tally.verdict(ctx.verdict(make_property(N_VD, fixture.ring, n), bounds), instance):
            continue
        closure = integral_closure(fixture.ring).closure
        ext = tally.verdict(
            ctx.verdict(make_property(N_ROOT_EXTENSION, fixture.ring, n, other=closure), bounds),
            instance,
        )
        if ext is None:
            continue
        tally.record(closure.valuation_type and ext, instance)


@_check("vd-chain", "n-VD implies PnVD implies n-PVD", SERIES)
def _vd_chain(ctx: AuditContext, tally: Tally) -> None:
    for fixture, bounds, n in _series_sweep(ctx, tally):
        instance = f"{fixture.name} n={n}"
        chain = [
            ctx.verdict(make_property(name, fixture.ring, n), bounds) for name in (N_VD, PN_VD, N_PVD)
        ]
        if any(v.kind == PARTIAL for v in chain):
            tally.verdict(next(v for v in chain if v.kind == PARTIAL), instance)
            continue
        ok = all(not a.holds or b.holds for a, b in zip(chain, chain[1:]))
        tally.record(ok, instance, kinds=[v.kind for v in chain])


@_check(
    "pullback-pnvd",
    "the pullback of an n-VD along a subfield of its residue field is a PnVD",
    SERIES,
)
def _pullback_pnvd(ctx: AuditContext, tally: Tally) -> None:
    for q in (4, 9):
        fld = coeff_field(q)
        ring = pullback(SeriesRingSpec.power_series(fld), 1)
        bounds = ctx.sweep_bounds(q)
        for n in range(1, 5):
            instance = f"{ring.describe()} n={n}"
            held = tally.verdict(ctx.verdict(make_property(PN_VD, ring, n), bounds), instance)
            if held is not None:
                tally.record(held, instance)


@_check(
    "quasilocality",
    "every spec ring is quasilocal: its units are exactly the elements outside M",
    SERIES,
)
def _quasilocality(ctx: AuditContext, tally: Tally) -> None:
    for fixture in ctx.series():
        ring = fixture.ring
        m = maximal_ideal(ring)
        precision = max(ring.conductor, 1) + 8
        for x in _sample_elements(ring):
            if x.is_zero or not ring.contains(x):
                continue
            inverse_in_ring = ring.contains(laurent_inv(x, precision))
            tally.record(inverse_in_ring != m.contains(x), f"{fixture.name} x={x}")


@_check(
    "npvd-closure-criterion",
    "R is an n-PVD iff {x : x^n in M} is the maximal ideal of the integral closure",
    SERIES,
)
def _npvd_closure_criterion(ctx: AuditContext, tally: Tally) -> None:
    for fixture, bounds, n in _series_sweep(ctx, tally):
        instance = f"{fixture.name} n={n}"
        held = tally.verdict(ctx.verdict(make_property(N_PVD, fixture.ring, n), bounds), instance)
        if held is None:
            continue
        roots = root_ideal(fixture.ring, n, bounds)
        tally.record(held == roots.equals_radical, instance, root_ideal=roots.to_dict())


@_check(
    "powerful-implies-divided",
    "an n-powerful semiprimary prime is n-divided",
    SERIES,
)
def _powerful_implies_divided(ctx: AuditContext, tally: Tally) -> None:
    for fixture, bounds, n in _series_sweep(ctx, tally):
        instance = f"{fixture.name} n={n}"
        prime = maximal_ideal(fixture.ring)
        if not tally.verdict(ctx.verdict(make_property(N_POWERFUL_SEMIPRIMARY, fixture.ring, n, prime), bounds), instance):
            continue
        divided = ctx.verdict(make_property(N_DIVIDED_PRIME, fixture.ring, n, prime), bounds)
        tally.record(not divided.refuted, instance, verdict=divided.to_dict())


def _ring_samples(ring: SeriesRingSpec, max_order: int) -> list[TruncatedLaurent]:
    return [x for x in _sample_elements(ring, max_order) if not x.is_zero and ring.contains(x)]


@_check(
    "nvd-divisibility",
    "over an n-VD, for nonzero x, y in R either x^n divides y^n or y^n divides x^n",
    SERIES,
)
def _nvd_divisibility(ctx: AuditContext, tally: Tally) -> None:
    for fixture, bounds, n in _series_sweep(ctx, tally):
        ring = fixture.ring
        if not tally.verdict(ctx.verdict(make_property(N_VD, ring, n), bounds), f"{fixture.name} n={n}"):
            continue
        precision = ring.conductor + 8
        elements = _ring_samples(ring, bounds.order_bound)
        for x, y in itertools.combinations(elements, 2):
            instance = f"{fixture.name} x={x} y={y}"
            try:
                up = membership(laurent_mul(y, laurent_inv(x, precision)), ring, POWER_LIES_IN, n)
                down = up or membership(laurent_mul(x, laurent_inv(y, precision)), ring, POWER_LIES_IN, n)
            except PrecisionError as exc:
                tally.skip(instance, str(exc))
                continue
            tally.record(down, instance, n=n)


@_check(
    "npvd-criterion",
    "over an n-PVD, x^-n d lies in M whenever x^n is outside M and d = y^n lies in M",
    SERIES,
)
def _npvd_criterion(ctx: AuditContext, tally: Tally) -> None:
    for fixture, bounds, n in _series_sweep(ctx, tally):
        ring = fixture.ring
        m = maximal_ideal(ring)
        if not tally.verdict(ctx.verdict(make_property(N_PVD, ring, n), bounds), f"{fixture.name} n={n}"):
            continue
        precision = ring.conductor + 8
        samples = [x for x in _sample_elements(ring, bounds.order_bound) if not x.is_zero]
        outside = [x for x in samples if membership(x, m, POWER_AVOIDS, n)]
        powers = [y for y in samples if membership(y, m, POWER_LIES_IN, n)]
        for x in outside:
            inverse = laurent_inv(x, precision)
            for y in powers:
                instance = f"{fixture.name} x={x} y={y}"
                try:
                    ok = membership(laurent_mul(y, inverse), m, POWER_LIES_IN, n)
                except PrecisionError as exc:
                    tally.skip(instance, str(exc))
                    continue
                tally.record(ok, instance, n=n)


@_check(
    "star-condition",
    "an n-PVD has x^n in M for every nonunit x of its integral closure",
    SERIES,
)
def _star_condition(ctx: AuditContext, tally: Tally) -> None:
    for fixture, bounds, n in _series_sweep(ctx, tally):
        instance = f"{fixture.name} n={n}"
        if not tally.verdict(ctx.verdict(make_property(N_PVD, fixture.ring, n), bounds), instance):
            continue
        star = ctx.verdict(make_property(STAR_CONDITION, fixture.ring, n), bounds)
        tally.record(not star.refuted, instance, verdict=star.to_dict())


@_check(
    "pnvd-criterion",
    "over a PnVD, x^-n M lies in M for every x with x^n outside R",
    SERIES,
)
def _pnvd_criterion(ctx: AuditContext, tally: Tally) -> None:
    for fixture, bounds, n in _series_sweep(ctx, tally):
        ring = fixture.ring
        if not tally.verdict(ctx.verdict(make_property(PN_VD, ring, n), bounds), f"{fixture.name} n={n}"):
            continue
        colon = colon_ring(maximal_ideal(ring))
        precision = colon.conductor + 8
        for x in _sample_elements(ring, bounds.order_bound):
            if x.is_zero or membership(x, ring, POWER_LIES_IN, n):
                continue
            instance = f"{fixture.name} x={x}"
            try:
                ok = colon.contains(laurent_pow(x, -n, precision))
            except PrecisionError as exc:
                tally.skip(instance, str(exc))
                continue
            tally.record(ok, instance, n=n)


# --- expected witnesses -----------------------------------------------------


def _fixture_reduction(ctx: AuditContext, name: str) -> tuple[FiniteRing, IdealHandle, Reduction]:
    fixture = ring_fixture(name)
    ring = fixture.ring(ctx.budgets)
    ideal = fixture.ideal(ring)
    return ring, ideal, reduce_modulo(ring, ideal, ctx.budgets)


@_check(
    "z4-x-z2",
    "{0} x Z2 in Z4 x Z2 is 2-semiprimary, not prime, and misses the nilradical",
    FINITE,
    EXPECTED_WITNESS,
)
def _z4_x_z2(ctx: AuditContext, tally: Tally) -> None:
    ring, ideal, red = _fixture_reduction(ctx, "z4_x_z2")
    two = bool(semiprimary_in(red, 2, SERIAL).holds)
    prime = bool(semiprimary_in(red, 1, SERIAL).holds)
    nil_inside = ring.nilradical().issubset(ideal)
    d = delta_in(red, SERIAL).delta
    tally.record(two and not prime and not nil_inside and d == 2, "z4_x_z2", delta=d)


@_check(
    "absorbing-gap",
    "(X^2, Y^2) with X^2Y^2 = 0 is 2-semiprimary with delta 2 but not 2-absorbing",
    FINITE,
    EXPECTED_WITNESS,
)
def _absorbing_gap(ctx: AuditContext, tally: Tally) -> None:
    ring, ideal, red = _fixture_reduction(ctx, "poly_x2_y2_caps44")
    d = delta_in(red, SERIAL).delta
    res = absorbing_in(red, 2, ctx.budgets)
    if res.holds is None:
        tally.skip("poly_x2_y2_caps44", res.reason)
        return
    ok = d == 2 and res.holds is False and len(res.witness) == 3
    if ok:
        xs = [ring.parse_element(w) for w in res.witness]
        product = ring.mul(ring.mul(xs[0], xs[1]), xs[2])
        pairs = [ring.mul(a, b) for a, b in itertools.combinations(xs, 2)]
        ok = product in ideal and all(p not in ideal for p in pairs)
    xy = ring.parse_element("X*Y")
    tally.record(ok and xy not in ideal, "poly_x2_y2_caps44", witness=list(res.witness))


@_check(
    "strong-gap",
    "(X^2, Y^2) with X^2Y^2 = 0 is not strongly 2-semiprimary; J^2 = K^2 = (X,Y)^2 modulo I",
    FINITE,
    EXPECTED_WITNESS,
)
def _strong_gap(ctx: AuditContext, tally: Tally) -> None:
    ring, ideal, red = _fixture_reduction(ctx, "poly_x2_y2_caps44")
    res = strongly_semiprimary_in(red, 2, ctx.budgets)
    if res.holds or res.j is None or res.k is None:
        tally.record(False, "poly_x2_y2_caps44", reason="no strong witness found")
        return
    target = ideal_power(radical(ideal), 2)
    ok = all(ideal_sum(ideal_power(w, 2), ideal) == target for w in (res.j, res.k))
    tally.record(ok, "poly_x2_y2_caps44", witness=res.to_dict().get("witness"))


@_check(
    "non-primary",
    "(XY, Y^n) is n-semiprimary by certificate but not primary: YX in I, Y and all X^m outside",
    MONOMIAL,
    EXPECTED_WITNESS,
)
def _non_primary(ctx: AuditContext, tally: Tally) -> None:
    for name in ("mono_xy_y2", "mono_xy_y3", "mono_xy_y4"):
        fixture = monomial_fixture(name)
        for n in fixture.n_values:
            cert = certify_n_semiprimary(fixture.ideal, n)
            witness = mono_primary_witness(fixture.ideal, n + 1, 8)
            tally.record(cert.kind == CERTIFIED_TRUE and witness == ("Y", "X"), name, n=n,
                         witness=list(witness or ()))


@_check(
    "delta-bar-gap",
    "in F2[[X^2,X^5]] the maximal ideal fails n-powerful semiprimary exactly at n = 1, 3",
    SERIES,
    EXPECTED_WITNESS,
)
def _delta_bar_gap(ctx: AuditContext, tally: Tally) -> None:
    fixture = series_fixture("z2_x2_x5")
    profile = delta_bar_profile(fixture.ideal(), 8, ctx.bounds, ctx.budgets, SERIAL)
    if any(v.kind == PARTIAL for v in profile.per_n.values()):
        tally.skip(fixture.name, "partial delta-bar profile")
        return
    at3 = profile.per_n[3].witness
    ok = profile.refuted_at() == [1, 3] and at3 is not None and at3.powers == ("X^3", "X^3")
    tally.record(ok, f"{fixture.name} M", refuted_at=profile.refuted_at())
    order4 = fixture.ideal("I")
    verdict = ctx.verdict(make_property(N_POWERFUL_SEMIPRIMARY, fixture.ring, 2, order4), ctx.bounds)
    w = verdict.witness
    tally.record(verdict.refuted and w is not None and w.powers == ("X^2", "X^2"),
                 f"{fixture.name} X^4", verdict=verdict.to_dict())


@_check(
    "nvd-parity",
    "F2[[X^2,X^3]] is an n-VD iff n is even and an n-PVD iff n >= 2",
    SERIES,
    EXPECTED_WITNESS,
)
def _nvd_parity(ctx: AuditContext, tally: Tally) -> None:
    ring = series_fixture("z2_x2_x3").ring
    for n in range(1, ctx.max_n + 1):
        vd = tally.verdict(ctx.verdict(make_property(N_VD, ring, n), ctx.bounds), f"n-vd n={n}")
        if vd is not None:
            tally.record(vd == (n % 2 == 0), f"z2_x2_x3 n-vd n={n}")
        pvd = tally.verdict(ctx.verdict(make_property(N_PVD, ring, n), ctx.bounds), f"n-pvd n={n}")
        if pvd is not None:
            tally.record(pvd == (n >= 2), f"z2_x2_x3 n-pvd n={n}")


@_check(
    "a2-ideal",
    "M of F[[X^2,X^3]] is generated by A_2(M) in characteristic 3 and not in characteristic 2",
    SERIES,
    EXPECTED_WITNESS,
)
def _a2_ideal(ctx: AuditContext, tally: Tally) -> None:
    odd = series_fixture("z3_x2_x3").ring
    held = tally.verdict(ctx.verdict(make_property(POWER_IDEAL_EQUALS, odd, 2), ctx.bounds), "z3_x2_x3")
    if held is not None:
        tally.record(held, "z3_x2_x3")
    even = series_fixture("z2_x2_x3").ring
    verdict = ctx.verdict(make_property(POWER_IDEAL_EQUALS, even, 2), ctx.bounds)
    if tally.verdict(verdict, "z2_x2_x3") is None:
        return
    w = verdict.witness
    tally.record(verdict.refuted and w is not None and "X^3" in w.elements, "z2_x2_x3",
                 verdict=verdict.to_dict())


@_check(
    "colon-ring",
    "(M:M) of F3 + F3X^9 + X^12F3[[X]] is F3 + X^3F3[[X]], a 3-VD, while R is not a 3-PVD",
    SERIES,
    EXPECTED_WITNESS,
)
def _colon_ring(ctx: AuditContext, tally: Tally) -> None:
    fixture = series_fixture("z3_z3x9_x12")
    v = colon_ring(fixture.ideal())
    expected = series_ring(3, {0: "F3"}, 3)
    tally.record(v == expected, "z3_z3x9_x12 (M:M)", colon=v.describe())
    nvd = tally.verdict(ctx.verdict(make_property(N_VD, expected, 3), ctx.bounds), "V n-vd n=3")
    if nvd is not None:
        tally.record(nvd, "V n-vd n=3")
    verdict = ctx.verdict(make_property(N_PVD, fixture.ring, 3), ctx.bounds)
    if tally.verdict(verdict, "R n-pvd n=3") is None:
        return
    w = verdict.witness
    tally.record(verdict.refuted and w is not None and w.elements == ("X^2", "X^2"),
                 "R n-pvd n=3", verdict=verdict.to_dict())


@_check(
    "rn-threshold",
    "F2 + X^N F2[[X]] is an n-PVD exactly when n >= N",
    SERIES,
    EXPECTED_WITNESS,
)
def _rn_threshold(ctx: AuditContext, tally: Tally) -> None:
    fld = coeff_field(2)
    for big_n in range(2, 5):
        ring = gap_ring(fld, big_n)
        for n in range(1, ctx.max_n + 1):
            instance = f"N={big_n} n={n}"
            held = tally.verdict(ctx.verdict(make_property(N_PVD, ring, n), ctx.bounds), instance)
            if held is not None:
                tally.record(held == (n >= big_n), instance)


@_check(
    "pnvd-gap",
    "F_p + F_pX + X^2F_q[[X]] fails PnVD for every n once q = p^2",
    SERIES,
    EXPECTED_WITNESS,
)
def _pnvd_gap(ctx: AuditContext, tally: Tally) -> None:
    for p in (2, 3):
        bounds = ctx.bounds if p == 2 else ctx.sweep_bounds(p * p)
        for n in range(1, 5):
            instance = f"p={p} n={n}"
            try:
                verdict = tower_search(
                    lambda fld, n=n: make_property(PN_VD, prime_slots_ring(fld), n),
                    p,
                    range(1, 5),
                    bounds,
                    ctx.budgets,
                    SERIAL,
                )
            except BudgetExceededError as exc:
                tally.skip(instance, str(exc))
                continue
            if tally.verdict(verdict, instance) is None:
                continue
            tally.record(verdict.refuted and verdict.witness is not None, instance,
                         level=verdict.level)


@_check(
    "almost-valuation-colon",
    "F_p + F_pX + X^2F_q[[X]] is an n-PVD for n >= 2 whose (M:M) = F_p + XF_q[[X]] is never an n-VD",
    SERIES,
    EXPECTED_WITNESS,
)
def _almost_valuation_colon(ctx: AuditContext, tally: Tally) -> None:
    for p in (2, 3):
        fld = coeff_field(p * p)
        ring = prime_slots_ring(fld)
        bounds = ctx.bounds if p == 2 else ctx.sweep_bounds(p * p)
        colon = colon_ring(maximal_ideal(ring))
        tally.record(colon == pullback(SeriesRingSpec.power_series(fld), 1), f"p={p} colon",
                     colon=colon.describe())
        for n in range(1, ctx.max_n + 1):
            instance = f"p={p} n={n}"
            held = tally.verdict(ctx.verdict(make_property(N_PVD, ring, n), bounds), instance)
            if held is not None:
                tally.record(held == (n >= 2), f"{instance} n-PVD")
            try:
                verdict = tower_search(
                    lambda f, n=n: make_property(N_VD, pullback(SeriesRingSpec.power_series(f), 1), n),
                    p,
                    range(1, 5),
                    bounds,
                    ctx.budgets,
                    SERIAL,
                )
            except BudgetExceededError as exc:
                tally.skip(instance, str(exc))
                continue
            if tally.verdict(verdict, instance) is None:
                continue
            tally.record(verdict.refuted and verdict.witness is not None, f"{instance} colon n-VD",
                         level=verdict.level)


def _square_slot_ring(fld: CoeffField) -> SeriesRingSpec:
    prime = fld.subfield(1)
    return SeriesRingSpec.make(
        fld, [prime, fld.zero_space(), prime], f"F{fld.p} + F{fld.p}X^2 + X^3{fld.name}[[X]]"
    )


@_check(
    "npvd-not-pnvd",
    "F_2 + F_2X^2 + X^3F_4[[X]] is an n-PVD exactly for n >= 3 and no tower level makes it a PnVD",
    SERIES,
    EXPECTED_WITNESS,
)
def _npvd_not_pnvd(ctx: AuditContext, tally: Tally) -> None:
    fixture = series_fixture("z2_z2x2_x3f4")
    bounds = ctx.sweep_bounds(fixture.ring.field.q)
    for n in range(1, ctx.max_n + 1):
        instance = f"{fixture.name} n={n}"
        held = tally.verdict(ctx.verdict(make_property(N_PVD, fixture.ring, n), bounds), instance)
        if held is not None:
            tally.record(held == (n >= 3), f"{instance} n-PVD")
        try:
            verdict = tower_search(
                lambda f, n=n: make_property(PN_VD, _square_slot_ring(f), n),
                2,
                range(1, 5),
                bounds,
                ctx.budgets,
                SERIAL,
            )
        except BudgetExceededError as exc:
            tally.skip(instance, str(exc))
            continue
        if tally.verdict(verdict, instance) is None:
            continue
        tally.record(verdict.refuted and verdict.witness is not None, f"{instance} PnVD",
                     level=verdict.level)


# --- running ----------------------------------------------------------------


@dataclass
class CheckResult:
    check: TheoremCheck
    tally: Tally
    duration_ms: float = 0.0
    memory_delta_mb: float | None = None

    @property
    def status(self) -> str:
        if self.tally.refutations:
            return REFUTED
        if self.tally.skips or self.tally.tried == 0:
            return SKIPPED
        return PASSED

    def to_dict(self, timing: bool = False) -> dict[str, Any]:
        data: dict[str, Any] = {
            "id": self.check.id,
            "ref": self.check.ref,
            "anchor": self.check.anchor,
            "statement": self.check.statement,
            "scope": self.check.scope,
            "shape": self.check.shape,
            "status": self.status,
            "tried": self.tally.tried,
            "passes": self.tally.passes,
            "refutations": self.tally.refutations,
            "skips": self.tally.skips,
            "partial": self.tally.partial,
        }
        if timing:
            data["duration_ms"] = round(self.duration_ms, 3)
            if self.memory_delta_mb is not None:
                data["memory_delta_mb"] = round(self.memory_delta_mb, 3)
        return data


@dataclass
class AuditReport:
    profile: str
    seed: int
    manifest: dict[str, Any]
    results: list[CheckResult]
    strict: bool = False
    timing: dict[str, Any] = field(default_factory=dict)

    @property
    def refutations(self) -> int:
        return sum(len(r.tally.refutations) for r in self.results)

    @property
    def skips(self) -> int:
        return sum(len(r.tally.skips) for r in self.results)

    @property
    def partial(self) -> int:
        return sum(r.tally.partial for r in self.results)

    def exit_code(self) -> int:
        if self.refutations:
            return EXIT_REFUTED
        if self.strict and (self.skips or self.partial):
            return EXIT_BUDGET
        return EXIT_OK

    def to_dict(self, timing: bool = False) -> dict[str, Any]:
        data: dict[str, Any] = {
            "version": __version__,
            "profile": self.profile,
            "seed": self.seed,
            "strict": self.strict,
            "summary": {
                "checks": len(self.results),
                "tried": sum(r.tally.tried for r in self.results),
                "refutations": self.refutations,
                "skips": self.skips,
                "partial": self.partial,
            },
            "checks": [r.to_dict(timing) for r in self.results],
            "corpus": self.manifest,
        }
        if timing and self.timing:
            data["timing"] = self.timing
        return data

    def lines(self, timing: bool = False) -> list[str]:
        out = []
        for result in self.results:
            t = result.tally
            line = f"[{result.status.upper()}] {result.check.id}: {t.passes}/{t.tried}"
            if t.skips:
                line += f", {len(t.skips)} skipped"
            if timing:
                line += f" ({result.duration_ms:.0f} ms)"
            out.append(line)
            for ref in t.refutations[:3]:
                out.append(f"    refuted on {ref['instance']}")
        out.append(
            f"{len(self.results)} checks over {self.manifest['rings']} rings "
            f"(profile {self.profile}, seed {self.seed}): "
            f"{self.refutations} refutations, {self.skips} skips"
        )
        return out


def run_audit(
    corpus: Corpus,
    ids: list[str] | None = None,
    config: SuiteConfig | None = None,
    *,
    concurrency: ConcurrencyConfig | None = None,
    track_memory: bool = False,
) -> AuditReport:
    """Run the selected checks; checks run in parallel, the report keeps registry order."""
    cfg = config or SuiteConfig()
    checks = resolve_checks(ids)
    ctx = AuditContext(corpus, cfg)
    bench = PerformanceBenchmark(BenchmarkConfig(enabled=True, track_memory=track_memory))
    logger = get_logger()

    def run_one(check: TheoremCheck) -> CheckResult:
        tally = Tally(check.id)
        with bench.measure(f"audit.{check.id}", check=check.id) as metric:
            try:
                check.run(ctx, tally)
            except BudgetExceededError as exc:
                logger.log_budget(exc.budget, exc.limit, exc.required, check=check.id)
                tally.skip("*", str(exc))
            except NSemiprimaryError as exc:
                logger.log_error(f"check {check.id} failed", error=str(exc), check=check.id)
                tally.record(False, "*", error=str(exc))
        return CheckResult(check, tally, metric.duration_ms, metric.memory_delta_mb)

    results = parallel_map(run_one, checks, concurrency or SERIAL)
    report = AuditReport(
        corpus.profile,
        corpus.seed,
        corpus.manifest(),
        results,
        cfg.audit.strict,
        bench.get_summary(),
    )
    logger.log_operation(
        "audit",
        profile=corpus.profile,
        checks=len(results),
        refutations=report.refutations,
        skips=report.skips,
    )
    return report


__all__ = [
    "EXPECTED_TABLE",
    "EXPECTED_WITNESS",
    "FORALL",
    "PASSED",
    "REFUTED",
    "SKIPPED",
    "AuditContext",
    "AuditReport",
    "CheckResult",
    "Tally",
    "TheoremCheck",
    "check_registry",
    "resolve_checks",
    "run_audit",
]
