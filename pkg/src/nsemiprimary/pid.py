"""Delta for nonzero ideals of Z and F_p[t].

In a Dedekind domain I is n-semiprimary exactly when I = P^k with k <= n, so
delta is the exponent of the only prime factor, or infinite when the generator
has two distinct prime factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import sympy

from .classify import delta, json_n
from .config import Budgets
from .errors import BudgetExceededError, InvalidParameterError
from .polytext import format_polynomial, parse_polynomial
from .rings import DEFAULT_BUDGETS, ideal_generated, mk_zn

INTEGERS = "Z"
POLYNOMIALS = "Fp[t]"

_T = sympy.Symbol("t")


@dataclass(frozen=True)
class PidIdeal:
    ambient: str
    generator: int | str
    p: int | None = None

    def __post_init__(self) -> None:
        if self.ambient == INTEGERS:
            if not isinstance(self.generator, int) or abs(self.generator) < 2:
                raise InvalidParameterError("an integer generator must be a nonunit, nonzero")
        elif self.ambient == POLYNOMIALS:
            if self.p is None or not sympy.isprime(self.p):
                raise InvalidParameterError(
                    f"F_p[t] needs a prime p, got {self.p}; prime powers are not supported"
                )
            if self.poly().degree() < 1:
                raise InvalidParameterError("a polynomial generator must have degree >= 1")
        else:
            raise InvalidParameterError(f"unknown ambient ring {self.ambient!r}")

    @classmethod
    def integer(cls, m: int) -> PidIdeal:
        return cls(INTEGERS, int(m))

    @classmethod
    def polynomial(cls, text: str, p: int) -> PidIdeal:
        """The ideal of F_p[t] generated by *text*.

        Only prime p is accepted: coefficients are reduced modulo p, which is
        not F_q arithmetic for a prime power q.
        """
        return cls(POLYNOMIALS, text, p)

    def poly(self) -> sympy.Poly:
        terms = parse_polynomial(str(self.generator), ("t",))
        return sympy.Poly.from_dict(terms or {(0,): 0}, _T, modulus=self.p)

    def describe(self) -> str:
        if self.ambient == INTEGERS:
            return f"({abs(int(self.generator))}) in Z"
        return f"({_format(self.poly().monic())}) in F{self.p}[t]"


def _format(poly: sympy.Poly) -> str:
    p = poly.get_modulus()
    terms = {tuple(m): int(c) % p for m, c in poly.as_dict().items()}
    return format_polynomial({m: c for m, c in terms.items() if c}, ("t",))


@dataclass(frozen=True)
class PidDelta:
    ideal: str
    delta: int | None
    prime_base: str | None
    factorization: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "ideal": self.ideal,
            "delta": json_n(self.delta),
            "prime_base": self.prime_base,
            "factorization": self.factorization,
        }


def pid_delta(ideal: PidIdeal, budgets: Budgets = DEFAULT_BUDGETS) -> PidDelta:
    if ideal.ambient == INTEGERS:
        m = abs(int(ideal.generator))
        if m > budgets.factor_limit:
            raise BudgetExceededError("factor_limit", budgets.factor_limit, m)
        factors = sympy.factorint(m)
        text = " * ".join(f"{q}^{e}" if e > 1 else str(q) for q, e in sorted(factors.items()))
        if len(factors) == 1:
            (q, e), = factors.items()
            return PidDelta(ideal.describe(), e, f"({q})", text)
        return PidDelta(ideal.describe(), None, None, text)
    _, factors = ideal.poly().monic().factor_list()
    parts = []
    for f, e in factors:
        body = _format(f)
        parts.append(f"({body})^{e}" if e > 1 else f"({body})")
    text = " * ".join(parts)
    if len(factors) == 1:
        f, e = factors[0]
        return PidDelta(ideal.describe(), int(e), f"({_format(f)})", text)
    return PidDelta(ideal.describe(), None, None, text)


def finite_delta(m: int, budgets: Budgets = DEFAULT_BUDGETS) -> int | None:
    """Delta of (m) computed inside Z_{m^2}, where (m^2) lies below (m)."""
    ring = mk_zn(m * m, budgets)
    return delta(ring, ideal_generated(ring, [m]), budgets).delta


__all__ = [
    "INTEGERS",
    "POLYNOMIALS",
    "PidDelta",
    "PidIdeal",
    "finite_delta",
    "pid_delta",
]
