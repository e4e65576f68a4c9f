"""Small finite fields GF(p^k) with full arithmetic tables.

Elements are the integers ``0 .. q-1``; the base-p digits of an element are
its coordinates in the basis ``1, a, a^2, ...`` where ``a`` is a root of the
lexicographically first monic irreducible polynomial of degree k over F_p.
The prime field is therefore embedded as ``0 .. p-1``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import sympy

from .errors import InvalidParameterError, ParseError

MAX_FIELD_ORDER = 1024
GENERATOR = "a"


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` into ``(p, k)`` with ``q = p**k``."""
    if q < 2:
        raise InvalidParameterError(f"field order must be at least 2, got {q}")
    factors = sympy.factorint(q)
    if len(factors) != 1:
        raise InvalidParameterError(f"{q} is not a prime power")
    ((p, k),) = factors.items()
    return int(p), int(k)


def _irreducible(p: int, k: int) -> tuple[int, ...]:
    """Low-to-high coefficients of the first monic irreducible of degree k."""
    if k == 1:
        return (0, 1)
    t = sympy.Symbol("t")
    for tail in itertools.product(range(p), repeat=k):
        coeffs = (1,) + tuple(reversed(tail))
        if coeffs[-1] == 0:
            continue
        if sympy.Poly(list(coeffs), t, modulus=p).is_irreducible:
            return tuple(reversed(coeffs))
    raise InvalidParameterError(f"no irreducible polynomial of degree {k} over F_{p}")


@dataclass(frozen=True, eq=False)
class CoeffField:
    p: int
    k: int
    modulus: tuple[int, ...]
    add: np.ndarray = field(repr=False)
    mul: np.ndarray = field(repr=False)
    neg: np.ndarray = field(repr=False)
    inv: np.ndarray = field(repr=False)
    digits: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:
        return int(self.p**self.k)

    @property
    def name(self) -> str:
        return f"F{self.q}"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CoeffField) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("CoeffField", self.q))

    def __repr__(self) -> str:
        return f"CoeffField({self.name})"

    # --- elements -----------------------------------------------------------

    def from_digits(self, digits: list[int] | tuple[int, ...]) -> int:
        return int(sum((int(d) % self.p) * self.p**i for i, d in enumerate(digits)))

    def power(self, x: int, n: int) -> int:
        result = 1
        base = int(x)
        if n < 0:
            if base == 0:
                raise ZeroDivisionError("zero has no inverse")
            base, n = int(self.inv[base]), -n
        while n:
            if n & 1:
                result = int(self.mul[result, base])
            base = int(self.mul[base, base])
            n >>= 1
        return result

    def format(self, x: int) -> str:
        if self.k == 1:
            return str(int(x))
        terms = []
        for i in reversed(range(self.k)):
            d = int(self.digits[x, i])
            if not d:
                continue
            mono = "" if i == 0 else GENERATOR if i == 1 else f"{GENERATOR}^{i}"
            if not mono:
                terms.append(str(d))
            else:
                terms.append(mono if d == 1 else f"{d}{mono}")
        return "+".join(terms) or "0"

    def parse(self, text: str) -> int:
        """Parse ``"2"``, ``"a"``, ``"a^2+2a+1"`` into an element."""
        body = text.replace(" ", "").replace("*", "")
        if not body:
            raise ParseError("empty field element")
        digits = [0] * max(self.k, 1)
        for term in body.split("+"):
            match = re.fullmatch(r"(\d*)(a(?:\^(\d+))?)?", term)
            if match is None or not term:
                raise ParseError(f"bad field element {text!r} for {self.name}")
            coeff = int(match.group(1)) if match.group(1) else 1
            exp = 0 if match.group(2) is None else int(match.group(3) or 1)
            if exp >= self.k:
                raise ParseError(f"{text!r} uses a^{exp} but {self.name} has degree {self.k}")
            digits[exp] = (digits[exp] + coeff) % self.p
        return self.from_digits(digits)

    # --- subspaces ----------------------------------------------------------

    def span(self, elements: list[int] | tuple[int, ...] | np.ndarray) -> np.ndarray:
        """Boolean mask of the F_p-span of ``elements``."""
        mask = np.zeros(self.q, dtype=bool)
        mask[0] = True
        for g in np.asarray(elements, dtype=np.int64).ravel():
            if g == 0 or mask[g]:
                continue
            current = np.flatnonzero(mask)
            multiples = self.mul[g, : self.p]
            mask[self.add[current[:, None], multiples[None, :]].ravel()] = True
        return mask

    def basis(self, mask: np.ndarray) -> tuple[int, ...]:
        chosen: list[int] = []
        covered = self.span(())
        for x in np.flatnonzero(mask):
            if not covered[x]:
                chosen.append(int(x))
                covered = self.span(chosen)
        return tuple(chosen)

    def dimension(self, mask: np.ndarray) -> int:
        return len(self.basis(mask))

    def product_span(self, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        lb, rb = self.basis(left), self.basis(right)
        if not lb or not rb:
            return self.span(())
        products = self.mul[np.asarray(lb)[:, None], np.asarray(rb)[None, :]]
        return self.span(products)

    def full(self) -> np.ndarray:
        return np.ones(self.q, dtype=bool)

    def zero_space(self) -> np.ndarray:
        return self.span(())

    def subfield(self, d: int) -> np.ndarray:
        """Mask of ``F_{p^d}``, the fixed points of the d-th Frobenius power."""
        if d < 1 or self.k % d:
            raise InvalidParameterError(f"F{self.p ** d} is not a subfield of {self.name}")
        e = self.p**d
        return np.array([self.power(x, e) == x for x in range(self.q)], dtype=bool)

    def subfields(self) -> dict[int, np.ndarray]:
        return {d: self.subfield(d) for d in range(1, self.k + 1) if self.k % d == 0}

    def is_subfield(self, mask: np.ndarray) -> bool:
        if not mask[1]:
            return False
        return bool(np.array_equal(self.product_span(mask, mask), mask))

    def subfield_degree(self, mask: np.ndarray) -> int | None:
        for d, sub in self.subfields().items():
            if np.array_equal(sub, mask):
                return d
        return None

    def describe_space(self, mask: np.ndarray) -> str:
        if mask.sum() == 1:
            return "0"
        d = self.subfield_degree(mask)
        if d is not None:
            return f"F{self.p ** d}"
        return "<" + ",".join(self.format(b) for b in self.basis(mask)) + ">"

    def parse_space(self, spec: str | list[str]) -> np.ndarray:
        """``"0"``, ``"F4"``, ``"full"`` or a list of basis elements."""
        if isinstance(spec, list):
            return self.span([self.parse(str(s)) for s in spec])
        text = str(spec).strip()
        if text == "0":
            return self.zero_space()
        if text.lower() in {"full", "fq", self.name.lower()}:
            return self.full()
        match = re.fullmatch(r"F(\d+)", text, flags=re.IGNORECASE)
        if match is not None:
            sub_p, d = prime_power(int(match.group(1)))
            if sub_p != self.p:
                raise ParseError(f"{text} is not a subfield of {self.name}")
            return self.subfield(d)
        if text.startswith("<") and text.endswith(">"):
            return self.span([self.parse(s) for s in text[1:-1].split(",") if s])
        raise ParseError(f"unknown subspace {text!r} for {self.name}")


@lru_cache(maxsize=32)
def coeff_field(q: int) -> CoeffField:
    if q > MAX_FIELD_ORDER:
        raise InvalidParameterError(f"field order {q} exceeds {MAX_FIELD_ORDER}")
    p, k = prime_power(q)
    modulus = _irreducible(p, k)
    elements = np.arange(q, dtype=np.int64)
    digits = np.stack([(elements // p**i) % p for i in range(k)], axis=1)
    weights = p ** np.arange(k, dtype=np.int64)

    add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
    neg = ((-digits) % p) @ weights

    prod = np.zeros((q, q, 2 * k - 1), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            prod[:, :, i + j] += digits[:, None, i] * digits[None, :, j]
    # reduce a^m for m >= k using a^k = -(m_0 + m_1 a + ... + m_{k-1} a^{k-1})
    for m in range(2 * k - 2, k - 1, -1):
        top = prod[:, :, m] % p
        for i in range(k):
            prod[:, :, m - k + i] -= top * modulus[i]
        prod[:, :, m] = 0
    mul = (prod[:, :, :k] % p) @ weights

    inv = np.zeros(q, dtype=np.int64)
    rows, cols = np.nonzero(mul == 1)
    inv[rows] = cols
    return CoeffField(
        p=p,
        k=k,
        modulus=modulus,
        add=add.astype(np.int64),
        mul=mul.astype(np.int64),
        neg=neg.astype(np.int64),
        inv=inv,
        digits=digits,
    )


def parse_field(text: str) -> CoeffField:
    match = re.fullmatch(r"\s*F(\d+)\s*", str(text), flags=re.IGNORECASE)
    if match is None:
        raise ParseError(f"field must look like F4 or F9, got {text!r}")
    return coeff_field(int(match.group(1)))


__all__ = [
    "GENERATOR",
    "MAX_FIELD_ORDER",
    "CoeffField",
    "coeff_field",
    "parse_field",
    "prime_power",
]
