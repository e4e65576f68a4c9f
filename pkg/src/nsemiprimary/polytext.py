"""ASCII polynomial parsing shared by the finite, monomial and PID models.

Polynomials arrive as strings such as ``"X^2*Y + Y^3"``. They are parsed with
sympy into ``{exponent tuple: integer coefficient}`` dictionaries; callers
reduce coefficients modulo their characteristic.
"""

from __future__ import annotations

import re
from collections.abc import Sequence

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)

from .errors import ParseError

_TRANSFORMS = (*standard_transformations, convert_xor)
_ALLOWED = re.compile(r"^[A-Za-z0-9_+\-*^()\s]*$")


def default_var_names(k: int) -> tuple[str, ...]:
    if k <= 4:
        return ("X", "Y", "Z", "W")[:k]
    return tuple(f"X{i + 1}" for i in range(k))


def parse_polynomial(text: str, var_names: Sequence[str]) -> dict[tuple[int, ...], int]:
    """Parse *text* into an exponent-vector dictionary over ``var_names``."""
    src = text.strip()
    if not src:
        raise ParseError("empty polynomial")
    if not _ALLOWED.match(src):
        raise ParseError(f"unexpected characters in polynomial {text!r}")
    symbols = {name: sympy.Symbol(name) for name in var_names}
    try:
        expr = parse_expr(src, local_dict=symbols, transformations=_TRANSFORMS)
    except Exception as exc:  # sympy raises a zoo of types here
        raise ParseError(f"cannot parse polynomial {text!r}: {exc}") from exc
    gens = [symbols[name] for name in var_names]
    unknown = expr.free_symbols - set(gens)
    if unknown:
        names = ", ".join(sorted(str(s) for s in unknown))
        raise ParseError(f"unknown variable(s) {names} in {text!r}")
    if not gens:
        if not expr.is_Integer:
            raise ParseError(f"expected an integer constant, got {text!r}")
        value = int(expr)
        return {(): value} if value else {}
    try:
        poly = sympy.Poly(expr, *gens)
    except sympy.PolynomialError as exc:
        raise ParseError(f"not a polynomial: {text!r}") from exc
    terms: dict[tuple[int, ...], int] = {}
    for monom, coeff in poly.terms():
        if not coeff.is_Integer:
            raise ParseError(f"non-integer coefficient {coeff} in {text!r}")
        if int(coeff):
            terms[tuple(int(e) for e in monom)] = int(coeff)
    return terms


def format_monomial(exps: Sequence[int], var_names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(var_names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def format_polynomial(terms: dict[tuple[int, ...], int], var_names: Sequence[str]) -> str:
    """Render terms highest total degree first, ties in reverse lexicographic order."""
    if not terms:
        return "0"
    out = []
    for exps in sorted(terms, key=lambda e: (sum(e), e), reverse=True):
        coeff = terms[exps]
        mono = format_monomial(exps, var_names)
        if mono == "1":
            out.append(str(coeff))
        elif coeff == 1:
            out.append(mono)
        else:
            out.append(f"{coeff}*{mono}")
    return " + ".join(out)


__all__ = ["default_var_names", "format_monomial", "format_polynomial", "parse_polynomial"]
