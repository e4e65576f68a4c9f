"""Monomial ideals of F_p[X_1..X_k].

Generators are rows of an integer exponent matrix kept minimal under
componentwise order. The ambient ring is infinite, so the n-semiprimary question
gets a three-valued answer: a certificate from the radical power, a refutation
from a variable power, or a bounded exhaustive witness search.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np
import sympy

from .concurrency import ConcurrencyConfig, parallel_first
from .config import Budgets
from .errors import BudgetExceededError, InvalidParameterError, ParseError
from .logging import get_logger
from .polytext import default_var_names, format_monomial, format_polynomial, parse_polynomial
from .rings import DEFAULT_BUDGETS, AlgebraRing, IdealHandle, ideal_generated, mk_poly_quotient

CERTIFIED_TRUE = "CertifiedTrue"
CERTIFIED_FALSE = "CertifiedFalse"
UNKNOWN = "Unknown"

Terms = dict[tuple[int, ...], int]


def minimalize(gens: np.ndarray) -> np.ndarray:
    """Drop every row divisible by another row; result sorted by degree then reverse lex."""
    arr = np.asarray(gens, dtype=np.int64)
    if arr.size == 0:
        return arr.reshape(0, arr.shape[-1] if arr.ndim == 2 else 0)
    rows = np.unique(arr, axis=0)
    divides = np.all(rows[:, None, :] <= rows[None, :, :], axis=2)
    np.fill_diagonal(divides, False)
    keep = rows[~divides.any(axis=0)]
    order = sorted(range(len(keep)), key=lambda i: (int(keep[i].sum()), tuple(-keep[i])))
    return keep[order]


@dataclass(frozen=True, eq=False)
class MonomialIdeal:
    p: int
    gens: np.ndarray
    var_names: tuple[str, ...]

    def __post_init__(self) -> None:
        if not sympy.isprime(self.p):
            raise InvalidParameterError(f"{self.p} is not prime")
        if self.gens.ndim != 2 or self.gens.shape[1] != len(self.var_names):
            raise InvalidParameterError("generator matrix does not match the variables")
        if np.any(self.gens < 0):
            raise InvalidParameterError("exponents must be non-negative")

    @classmethod
    def from_exponents(
        cls, p: int, exps: Iterable[Sequence[int]], var_names: Sequence[str] | None = None
    ) -> MonomialIdeal:
        rows = [tuple(int(e) for e in row) for row in exps]
        if not rows:
            raise InvalidParameterError("a monomial ideal needs at least one generator")
        k = len(rows[0])
        if any(len(r) != k for r in rows):
            raise InvalidParameterError("exponent vectors of different lengths")
        names = tuple(var_names) if var_names else default_var_names(k)
        return cls(p, minimalize(np.array(rows, dtype=np.int64)), names)

    @classmethod
    def parse(cls, p: int, text: str, var_names: Sequence[str] | None = None) -> MonomialIdeal:
        """Parse ``"X^2, Y^2"``; every generator must be a single monomial."""
        parts = [t for t in text.replace(";", ",").split(",") if t.strip()]
        if not parts:
            raise ParseError("empty generator list")
        names = tuple(var_names) if var_names else _guess_vars(text)
        rows = []
        for part in parts:
            terms = parse_polynomial(part, names)
            if len(terms) != 1:
                raise ParseError(f"{part.strip()!r} is not a monomial")
            rows.append(next(iter(terms)))
        return cls.from_exponents(p, rows, names)

    @property
    def k(self) -> int:
        return len(self.var_names)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return (
            self.p == other.p
            and self.var_names == other.var_names
            and np.array_equal(self.gens, other.gens)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.var_names, self.gens.tobytes()))

    @property
    def is_unit(self) -> bool:
        return bool(np.any(self.gens.sum(axis=1) == 0))

    def contains_monomial(self, exps: Sequence[int]) -> bool:
        return bool(np.any(np.all(np.asarray(exps) >= self.gens, axis=1)))

    def monomial_mask(self, exps: np.ndarray) -> np.ndarray:
        """Row-wise membership for a matrix of exponent vectors."""
        e = np.asarray(exps, dtype=np.int64).reshape(-1, self.k)
        return np.any(np.all(e[:, None, :] >= self.gens[None, :, :], axis=2), axis=1)

    def describe(self) -> str:
        return "(" + ", ".join(format_monomial(tuple(g), self.var_names) for g in self.gens) + ")"

    def to_dict(self) -> dict[str, Any]:
        return {
            "p": self.p,
            "vars": list(self.var_names),
            "gens": [[int(e) for e in g] for g in self.gens],
        }

    def __repr__(self) -> str:
        return f"<MonomialIdeal {self.describe()} over F{self.p}>"


def _guess_vars(text: str) -> tuple[str, ...]:
    present = [i for i, v in enumerate(("X", "Y", "Z", "W")) if v in text]
    return default_var_names(max(present) + 1) if present else ("X",)


def _same_ambient(*ideals: MonomialIdeal) -> None:
    first = ideals[0]
    for other in ideals[1:]:
        if other.p != first.p or other.var_names != first.var_names:
            raise InvalidParameterError("monomial ideals live in different rings")


# --- ideal operations ----------------------------------------------------


def mono_product(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    _same_ambient(a, b)
    sums = (a.gens[:, None, :] + b.gens[None, :, :]).reshape(-1, a.k)
    return MonomialIdeal(a.p, minimalize(sums), a.var_names)


def mono_power(a: MonomialIdeal, n: int) -> MonomialIdeal:
    if n < 1:
        raise InvalidParameterError("power needs n >= 1")
    result = a
    for _ in range(n - 1):
        result = mono_product(result, a)
    return result


def mono_contains(inner: MonomialIdeal, outer: MonomialIdeal) -> bool:
    """``inner`` is a subset of ``outer``."""
    _same_ambient(inner, outer)
    return bool(np.all(outer.monomial_mask(inner.gens)))


def mono_radical(a: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal(a.p, minimalize(np.minimum(a.gens, 1)), a.var_names)


def radical_is_prime(a: MonomialIdeal) -> bool:
    """A monomial radical is prime iff it is generated by variables."""
    rad = mono_radical(a)
    return bool(np.all(rad.gens.sum(axis=1) == 1))


def mono_ideal_ops(kind: str, *args: Any) -> MonomialIdeal | bool:
    if kind == "power":
        ideal, n = args
        return mono_power(ideal, int(n))
    if kind == "product":
        return mono_product(*args)
    if kind == "containment":
        return mono_contains(*args)
    if kind == "radical":
        return mono_radical(*args)
    raise InvalidParameterError(f"unknown monomial operation {kind!r}")


# --- polynomials ---------------------------------------------------------


def _symbols(ideal: MonomialIdeal) -> list[sympy.Symbol]:
    return [sympy.Symbol(v) for v in ideal.var_names]


def to_poly(terms: Terms, ideal: MonomialIdeal) -> sympy.Poly:
    reduced = {e: c % ideal.p for e, c in terms.items() if c % ideal.p}
    gens = _symbols(ideal)
    if not reduced:
        return sympy.Poly(0, *gens, modulus=ideal.p)
    return sympy.Poly.from_dict(reduced, *gens, modulus=ideal.p)


def normal_form(poly: sympy.Poly, ideal: MonomialIdeal) -> sympy.Poly:
    """Drop the terms lying in the ideal; ``f in I`` iff the result is zero."""
    kept = {m: c for m, c in poly.as_dict().items() if not ideal.contains_monomial(m)}
    if not kept:
        return sympy.Poly(0, *poly.gens, modulus=ideal.p)
    return sympy.Poly.from_dict(kept, *poly.gens, modulus=ideal.p)


def mono_member(f: str | Terms | sympy.Poly, ideal: MonomialIdeal) -> bool:
    """Every monomial of f with nonzero coefficient mod p is divisible by a generator."""
    if isinstance(f, str):
        f = parse_polynomial(f, ideal.var_names)
    poly = f if isinstance(f, sympy.Poly) else to_poly(f, ideal)
    return normal_form(poly, ideal).is_zero


def format_poly(poly: sympy.Poly, ideal: MonomialIdeal) -> str:
    terms = {tuple(m): int(c) % ideal.p for m, c in poly.as_dict().items()}
    return format_polynomial({m: c for m, c in terms.items() if c}, ideal.var_names)


# --- certificates ---------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    kind: str
    reason: str

    def to_dict(self) -> dict[str, str]:
        return {"kind": self.kind, "reason": self.reason}


def certify_n_semiprimary(ideal: MonomialIdeal, n: int) -> Certificate:
    if n < 1:
        raise InvalidParameterError("n must be at least 1")
    if ideal.is_unit:
        raise InvalidParameterError("the unit ideal is not proper")
    rad = mono_radical(ideal)
    if not radical_is_prime(ideal):
        return Certificate(CERTIFIED_FALSE, f"radical {rad.describe()} is not prime")
    for g in rad.gens:
        if not ideal.contains_monomial(g * n):
            var = format_monomial(tuple(g), ideal.var_names)
            return Certificate(
                CERTIFIED_FALSE, f"{var} lies in the radical but {var}^{n} is not in the ideal"
            )
    if mono_contains(mono_power(rad, n), ideal):
        return Certificate(CERTIFIED_TRUE, f"radical {rad.describe()} is prime and its {n}-th power lies in the ideal")
    return Certificate(UNKNOWN, f"{rad.describe()}^{n} is not contained in the ideal")


# --- bounded witness search ----------------------------------------------


@dataclass(frozen=True)
class SearchResult:
    found: bool
    witness: tuple[str, str] | None
    degree_bound: int
    terms_bound: int
    candidates: int
    live: int

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "result": "Witness" if self.found else "NoneFound",
            "bounds": {"degree": self.degree_bound, "terms": self.terms_bound},
            "candidates": self.candidates,
            "live": self.live,
        }
        if self.witness:
            data["witness"] = list(self.witness)
        return data


def _monomials_up_to(k: int, degree: int) -> list[tuple[int, ...]]:
    monos = [m for m in itertools.product(range(degree + 1), repeat=k) if sum(m) <= degree]
    # by total degree, then with X before Y
    return sorted(monos, key=lambda m: (sum(m), tuple(-e for e in m)))


def candidate_polynomials(
    ideal: MonomialIdeal, degree_bound: int, terms_bound: int
) -> list[Terms]:
    """Polynomials with at most ``terms_bound`` terms of degree at most ``degree_bound``."""
    monos = _monomials_up_to(ideal.k, degree_bound)
    coeffs = range(1, ideal.p)
    keyed: list[tuple[tuple[Any, ...], Terms]] = []
    for t in range(1, terms_bound + 1):
        for combo in itertools.combinations(range(len(monos)), t):
            degree = max(sum(monos[i]) for i in combo)
            for cs in itertools.product(coeffs, repeat=t):
                terms = {monos[i]: c for i, c in zip(combo, cs)}
                keyed.append(((degree, t, combo, cs), terms))
    keyed.sort(key=lambda kv: kv[0])
    return [terms for _, terms in keyed]


def _search_space(ideal: MonomialIdeal, degree_bound: int, terms_bound: int) -> int:
    m = len(_monomials_up_to(ideal.k, degree_bound))
    return sum(
        math.comb(m, t) * (ideal.p - 1) ** t for t in range(1, terms_bound + 1)
    )


def mono_counterexample_search(
    ideal: MonomialIdeal,
    n: int,
    degree_bound: int,
    terms_bound: int,
    budgets: Budgets = DEFAULT_BUDGETS,
    config: ConcurrencyConfig | None = None,
) -> SearchResult:
    """Look for f, g with ``f^n g^n in I`` and ``f^n, g^n`` outside I.

    Sound as a refuter; a NoneFound answer only covers the stated bounds.
    """
    if n < 1 or degree_bound < 0 or terms_bound < 1:
        raise InvalidParameterError("search bounds must be positive")
    size = _search_space(ideal, degree_bound, terms_bound)
    pairs = size * (size + 1) // 2
    if pairs > budgets.monomial_search:
        get_logger().log_budget("monomial_search", budgets.monomial_search, pairs, n=n)
        raise BudgetExceededError("monomial_search", budgets.monomial_search, pairs)
    cands = candidate_polynomials(ideal, degree_bound, terms_bound)
    live: list[tuple[int, sympy.Poly]] = []
    for idx, terms in enumerate(cands):
        power = normal_form(to_poly(terms, ideal) ** n, ideal)
        if not power.is_zero:
            live.append((idx, power))
    def scan(pos: int) -> tuple[int, int] | None:
        fi, fp = live[pos]
        for gi, gp in live[pos:]:
            if normal_form(fp * gp, ideal).is_zero:
                return fi, gi
        return None

    hit = parallel_first(scan, list(range(len(live))), config)
    if hit is None:
        return SearchResult(False, None, degree_bound, terms_bound, len(cands), len(live))
    f, g = (format_poly(to_poly(cands[i], ideal), ideal) for i in hit)
    return SearchResult(True, (f, g), degree_bound, terms_bound, len(cands), len(live))


def mono_primary_witness(
    ideal: MonomialIdeal, degree_bound: int, power_bound: int
) -> tuple[str, str] | None:
    """Monomials x, y with ``xy in I``, ``x`` outside I and ``y^m`` outside I for m <= power_bound."""
    monos = [m for m in _monomials_up_to(ideal.k, degree_bound) if not ideal.contains_monomial(m)]
    for x in monos:
        for y in monos:
            xy = tuple(a + b for a, b in zip(x, y))
            if not ideal.contains_monomial(xy):
                continue
            if any(ideal.contains_monomial(tuple(e * m for e in y)) for m in range(1, power_bound + 1)):
                continue
            return format_monomial(x, ideal.var_names), format_monomial(y, ideal.var_names)
    return None


# --- finite stand-in -----------------------------------------------------


@dataclass(frozen=True)
class StandIn:
    ring: AlgebraRing
    ideal: IdealHandle
    caps: tuple[int, ...]
    exact: bool


def default_caps(ideal: MonomialIdeal) -> tuple[tuple[int, ...], bool]:
    """Pure powers in the ideal when every variable has one (exact), else max exponent + 1."""
    caps: list[int] = []
    exact = True
    for v in range(ideal.k):
        pure = [int(g[v]) for g in ideal.gens if int(g.sum()) == int(g[v]) and g[v] > 0]
        if pure:
            caps.append(min(pure))
        else:
            exact = False
            caps.append(int(ideal.gens[:, v].max()) + 1)
    return tuple(caps), exact


def stand_in(
    ideal: MonomialIdeal,
    caps: Sequence[int] | None = None,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> StandIn:
    """Image of I in ``F_p[X]/(X_i^{d_i})``.

    The transport is exact when every cap monomial lies in I; otherwise the finite
    ring only approximates the infinite one.
    """
    if caps is None:
        caps_t, _ = default_caps(ideal)
    else:
        caps_t = tuple(int(c) for c in caps)
    if len(caps_t) != ideal.k:
        raise InvalidParameterError("one cap per variable required")
    exact = all(
        ideal.contains_monomial(tuple(c if i == v else 0 for i in range(ideal.k)))
        for v, c in enumerate(caps_t)
    )
    ring = mk_poly_quotient(ideal.p, caps_t, budgets=budgets, var_names=ideal.var_names)
    gens = [
        ring.parse_element(format_monomial(tuple(g), ideal.var_names))
        for g in ideal.gens
        if np.all(g < np.array(caps_t))
    ]
    return StandIn(ring, ideal_generated(ring, gens), caps_t, exact)


__all__ = [
    "CERTIFIED_FALSE",
    "CERTIFIED_TRUE",
    "UNKNOWN",
    "Certificate",
    "MonomialIdeal",
    "SearchResult",
    "StandIn",
    "candidate_polynomials",
    "certify_n_semiprimary",
    "default_caps",
    "minimalize",
    "mono_contains",
    "mono_counterexample_search",
    "mono_ideal_ops",
    "mono_member",
    "mono_power",
    "mono_primary_witness",
    "mono_product",
    "mono_radical",
    "normal_form",
    "radical_is_prime",
    "stand_in",
]
