"""Finite commutative rings and their ideals.

Two representations share one element-index API:

* :class:`TableRing` keeps full addition and multiplication tables (order up to
  the ``table_order_limit`` budget).
* :class:`AlgebraRing` is an F_p-algebra with a monomial basis and structure
  constants. Element ``i`` is the coefficient vector whose base-p digits
  (least significant first) are the coordinates of ``i``.

Everything is immutable after construction. Ideals are boolean masks over the
element indices together with a generating set.
"""

from __future__ import annotations

import itertools
import math
from abc import ABC, abstractmethod
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

import numpy as np
import sympy

from .config import Budgets
from .errors import AxiomViolationError, BudgetExceededError, InvalidParameterError, ParseError
from .logging import get_logger
from .polytext import default_var_names, format_polynomial, parse_polynomial

DEFAULT_BUDGETS = Budgets()


def _index_dtype(order: int) -> Any:
    return np.uint16 if order <= 1 << 16 else np.int64


# --- F_p linear algebra ---------------------------------------------------


def rref_mod_p(rows: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p; returns the nonzero rows and pivot columns."""
    mat = np.array(rows, dtype=np.int64) % p
    if mat.ndim == 1:
        mat = mat.reshape(1, -1)
    n_rows, n_cols = mat.shape
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r >= n_rows:
            break
        nz = np.flatnonzero(mat[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            mat[[r, k]] = mat[[k, r]]
        inv = pow(int(mat[r, c]), p - 2, p)
        mat[r] = (mat[r] * inv) % p
        col = mat[:, c].copy()
        col[r] = 0
        mat = (mat - np.outer(col, mat[r])) % p
        pivots.append(c)
        r += 1
    return mat[:r], pivots


def full_rank_mod_p(mats: np.ndarray, p: int) -> np.ndarray:
    """Batched invertibility test for square matrices over F_p, shape ``(B, d, d)``."""
    m = np.array(mats, dtype=np.int64) % p
    batch, d, _ = m.shape
    inverses = np.array([0] + [pow(a, p - 2, p) for a in range(1, p)], dtype=np.int64)
    ok = np.ones(batch, dtype=bool)
    idx = np.arange(batch)
    for c in range(d):
        nonzero = m[:, c:, c] != 0
        ok &= nonzero.any(axis=1)
        piv = c + np.argmax(nonzero, axis=1)
        row_c = m[idx, c].copy()
        m[idx, c] = m[idx, piv]
        m[idx, piv] = row_c
        m[:, c] = (m[:, c] * inverses[m[:, c, c]][:, None]) % p
        factor = m[:, :, c].copy()
        factor[:, c] = 0
        m = (m - factor[:, :, None] * m[:, c][:, None, :]) % p
    return ok


def span_vectors(basis: np.ndarray, p: int) -> np.ndarray:
    """All F_p-combinations of the rows of *basis*."""
    k = basis.shape[0]
    if k == 0:
        return np.zeros((1, basis.shape[1]), dtype=np.int64)
    coeffs = np.array(list(itertools.product(range(p), repeat=k)), dtype=np.int64)
    return (coeffs @ basis) % p


# --- rings ----------------------------------------------------------------


class FiniteRing(ABC):
    """Common element-index API over both representations."""

    order: int
    zero: int
    one: int
    provenance: dict[str, Any]

    @property
    def name(self) -> str:
        return str(self.provenance.get("name", self.provenance.get("kind", "ring")))

    @property
    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    @abstractmethod
    def add_many(self, a: np.ndarray, b: np.ndarray) -> np.ndarray: ...

    @abstractmethod
    def mul_many(self, a: np.ndarray, b: np.ndarray) -> np.ndarray: ...

    @abstractmethod
    def neg_many(self, a: np.ndarray) -> np.ndarray: ...

    @abstractmethod
    def label(self, index: int) -> str: ...

    @abstractmethod
    def parse_element(self, text: str) -> int: ...

    @abstractmethod
    def as_table(self, budgets: Budgets = DEFAULT_BUDGETS) -> TableRing: ...

    def add(self, a: int, b: int) -> int:
        return int(self.add_many(np.array([a]), np.array([b]))[0])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_many(np.array([a]), np.array([b]))[0])

    def mul_row(self, a: int) -> np.ndarray:
        """``a * x`` for every element ``x`` in index order."""
        return self.mul_many(np.full(self.order, a, dtype=np.int64), self.elements)

    def pow_many(self, a: np.ndarray, n: int) -> np.ndarray:
        if n < 0:
            raise InvalidParameterError("negative exponent")
        result = np.full(len(a), self.one, dtype=np.int64)
        base = np.asarray(a, dtype=np.int64)
        e = n
        while e:
            if e & 1:
                result = self.mul_many(result, base)
            e >>= 1
            if e:
                base = self.mul_many(base, base)
        return result

    def pow_all(self, n: int) -> np.ndarray:
        cache = self._pow_cache
        if n not in cache:
            cache[n] = self.pow_many(self.elements, n)
        return cache[n]

    def power(self, a: int, n: int) -> int:
        return int(self.pow_many(np.array([a]), n)[0])

    @cached_property
    def _pow_cache(self) -> dict[int, np.ndarray]:
        return {}

    @property
    def nil_bound(self) -> int:
        """Exponent that kills every nilpotent element (index <= log2 order + 1)."""
        return max(1, self.order.bit_length())

    @cached_property
    def unit_mask(self) -> np.ndarray:
        mask = np.zeros(self.order, dtype=bool)
        for x in range(self.order):
            mask[x] = bool(np.any(self.mul_row(x) == self.one))
        return mask

    def units(self) -> list[int]:
        return [int(x) for x in np.flatnonzero(self.unit_mask)]

    def characteristic(self) -> int:
        total, k = self.one, 1
        while total != self.zero:
            total = self.add(total, self.one)
            k += 1
        return k

    def nilradical(self) -> IdealHandle:
        return radical(zero_ideal(self))

    def is_reduced(self) -> bool:
        return self.nilradical().size == 1

    def is_local(self) -> bool:
        """Local iff the nonunits are closed under addition."""
        nonunits = np.flatnonzero(~self.unit_mask)
        if nonunits.size == 0:
            return False
        sums = self.add_many(np.repeat(nonunits, nonunits.size), np.tile(nonunits, nonunits.size))
        return bool(np.all(~self.unit_mask[sums]))

    def is_vnr(self) -> bool:
        """Von Neumann regular: every x lies in x^2 R."""
        squares = self.pow_all(2)
        for x in range(self.order):
            if not np.any(self.mul_row(int(squares[x])) == x):
                return False
        return True

    def check_axioms(self, budgets: Budgets = DEFAULT_BUDGETS, seed: int = 0) -> None:
        """Verify the commutative ring axioms, exhaustively when affordable."""
        n = self.order
        if self.one == self.zero:
            raise AxiomViolationError(f"{self.name}: 1 = 0")
        triples: Iterable[tuple[np.ndarray, np.ndarray, np.ndarray]]
        if n**3 <= budgets.axiom_operations:
            elems = self.elements

            def exhaustive() -> Iterable[tuple[np.ndarray, np.ndarray, np.ndarray]]:
                b = np.repeat(elems, n)
                c = np.tile(elems, n)
                for a in range(n):
                    yield np.full(n * n, a, dtype=np.int64), b, c

            triples = exhaustive()
        else:
            rng = np.random.default_rng(seed)
            count = min(max(1, budgets.axiom_operations // 100), 200_000)
            sample = rng.integers(0, n, size=(count, 3), dtype=np.int64)
            triples = [(sample[:, 0], sample[:, 1], sample[:, 2])]
            get_logger().debug("axiom check sampled", operation="check_axioms", ring=self.name)
        for a, b, c in triples:
            ab = self.mul_many(a, b)
            if np.any(ab != self.mul_many(b, a)):
                raise AxiomViolationError(f"{self.name}: multiplication not commutative")
            if np.any(self.add_many(a, b) != self.add_many(b, a)):
                raise AxiomViolationError(f"{self.name}: addition not commutative")
            if np.any(self.mul_many(ab, c) != self.mul_many(a, self.mul_many(b, c))):
                raise AxiomViolationError(f"{self.name}: multiplication not associative")
            if np.any(
                self.add_many(self.add_many(a, b), c) != self.add_many(a, self.add_many(b, c))
            ):
                raise AxiomViolationError(f"{self.name}: addition not associative")
            lhs = self.mul_many(a, self.add_many(b, c))
            rhs = self.add_many(ab, self.mul_many(a, c))
            if np.any(lhs != rhs):
                raise AxiomViolationError(f"{self.name}: distributivity fails")
        elems = self.elements
        if np.any(self.mul_many(np.full(n, self.one), elems) != elems):
            raise AxiomViolationError(f"{self.name}: {self.label(self.one)} is not an identity")
        if np.any(self.add_many(np.full(n, self.zero), elems) != elems):
            raise AxiomViolationError(f"{self.name}: zero is not additive identity")
        if np.any(self.add_many(elems, self.neg_many(elems)) != self.zero):
            raise AxiomViolationError(f"{self.name}: additive inverses missing")

    def labels(self, indices: Iterable[int]) -> list[str]:
        return [self.label(int(i)) for i in indices]

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name} order={self.order}>"


class TableRing(FiniteRing):
    def __init__(
        self,
        add_table: np.ndarray,
        mul_table: np.ndarray,
        labels: Sequence[str],
        *,
        zero: int = 0,
        one: int = 1,
        provenance: dict[str, Any] | None = None,
        additive_orders: tuple[int, ...] | None = None,
    ) -> None:
        order = add_table.shape[0]
        dtype = _index_dtype(order)
        self.order = order
        self.add_table = np.ascontiguousarray(add_table, dtype=dtype)
        self.mul_table = np.ascontiguousarray(mul_table, dtype=dtype)
        self.add_table.setflags(write=False)
        self.mul_table.setflags(write=False)
        self._labels = tuple(labels)
        self.zero = zero
        self.one = one
        self.provenance = dict(provenance or {"kind": "table"})
        self.additive_orders = additive_orders
        self._lookup = {lab.replace(" ", ""): i for i, lab in enumerate(self._labels)}
        neg = np.argmax(self.add_table == zero, axis=1)
        self._neg = neg.astype(np.int64)

    def add_many(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.add_table[a, b].astype(np.int64)

    def mul_many(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.mul_table[a, b].astype(np.int64)

    def neg_many(self, a: np.ndarray) -> np.ndarray:
        return self._neg[a]

    def mul_row(self, a: int) -> np.ndarray:
        return self.mul_table[a].astype(np.int64)

    @cached_property
    def unit_mask(self) -> np.ndarray:
        return np.any(self.mul_table == self.one, axis=1)

    def label(self, index: int) -> str:
        return self._labels[index]

    def parse_element(self, text: str) -> int:
        key = text.strip().replace(" ", "")
        if key in self._lookup:
            return self._lookup[key]
        if self.provenance.get("kind") == "zn":
            try:
                return int(key) % self.order
            except ValueError:
                pass
        raise ParseError(f"{self.name}: unknown element {text!r}")

    def as_table(self, budgets: Budgets = DEFAULT_BUDGETS) -> TableRing:
        return self


class ModularRing(FiniteRing):
    """``Z_n`` by direct modular arithmetic, for n beyond the table limit."""

    def __init__(self, n: int) -> None:
        self.n = n
        self.order = n
        self.zero = 0
        self.one = 1 % n
        self.provenance = {"kind": "zn", "n": n, "name": f"Z{n}"}
        self.additive_orders = (n,)

    def add_many(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (np.asarray(a, dtype=np.int64) + np.asarray(b, dtype=np.int64)) % self.n

    def mul_many(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (np.asarray(a, dtype=np.int64) * np.asarray(b, dtype=np.int64)) % self.n

    def neg_many(self, a: np.ndarray) -> np.ndarray:
        return (-np.asarray(a, dtype=np.int64)) % self.n

    @cached_property
    def unit_mask(self) -> np.ndarray:
        return np.gcd(self.elements, self.n) == 1

    def characteristic(self) -> int:
        return self.n

    def is_local(self) -> bool:
        return len(sympy.factorint(self.n)) == 1

    def is_reduced(self) -> bool:
        return all(e == 1 for e in sympy.factorint(self.n).values())

    def is_vnr(self) -> bool:
        return self.is_reduced()

    def label(self, index: int) -> str:
        return str(int(index))

    def parse_element(self, text: str) -> int:
        try:
            return int(text.strip()) % self.n
        except ValueError as exc:
            raise ParseError(f"{self.name}: unknown element {text!r}") from exc

    def as_table(self, budgets: Budgets = DEFAULT_BUDGETS) -> TableRing:
        if self.n > budgets.table_order_limit:
            raise BudgetExceededError("table_order_limit", budgets.table_order_limit, self.n)
        return _zn_table(self.n)


class AlgebraRing(FiniteRing):
    """F_p-algebra ``sum c_i b_i`` with ``b_i b_j = sum_k C[i, j, k] b_k``."""

    def __init__(
        self,
        p: int,
        basis: Sequence[tuple[int, ...]],
        struct: np.ndarray,
        one_vector: np.ndarray,
        *,
        var_names: Sequence[str],
        variables: Sequence[np.ndarray],
        provenance: dict[str, Any] | None = None,
    ) -> None:
        self.p = p
        self.basis = tuple(tuple(int(e) for e in b) for b in basis)
        self.dim = len(self.basis)
        self.struct = np.array(struct, dtype=np.int64) % p
        self.struct.setflags(write=False)
        self.order = p**self.dim
        self.var_names = tuple(var_names)
        self.radix = p ** np.arange(self.dim, dtype=np.int64)
        self.zero = 0
        self.one = self.encode(one_vector)
        self.variables = tuple(self.encode(v) for v in variables)
        self.provenance = dict(provenance or {"kind": "algebra"})
        # b_i * b_j flattened over (i, j)
        self._flat = self.struct.reshape(self.dim * self.dim, self.dim)

    def encode(self, vectors: np.ndarray) -> Any:
        arr = np.asarray(vectors, dtype=np.int64) % self.p
        if arr.ndim == 1:
            return int(arr @ self.radix)
        return arr @ self.radix

    def decode(self, indices: np.ndarray) -> np.ndarray:
        idx = np.asarray(indices, dtype=np.int64)
        return (idx[..., None] // self.radix) % self.p

    def add_many(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.encode(self.decode(a) + self.decode(b))

    def neg_many(self, a: np.ndarray) -> np.ndarray:
        return self.encode(-self.decode(a))

    def mul_vectors(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        outer = (u[:, :, None] * v[:, None, :]).reshape(u.shape[0], self.dim * self.dim)
        return (outer % self.p) @ self._flat % self.p

    def mul_many(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.atleast_1d(np.asarray(a, dtype=np.int64))
        b = np.atleast_1d(np.asarray(b, dtype=np.int64))
        if a.shape != b.shape:
            a, b = np.broadcast_arrays(a, b)
        out = np.empty(a.shape[0], dtype=np.int64)
        step = 1 << 14
        for start in range(0, a.shape[0], step):
            sl = slice(start, start + step)
            out[sl] = self.encode(self.mul_vectors(self.decode(a[sl]), self.decode(b[sl])))
        return out

    def multiplication_matrix(self, a: int) -> np.ndarray:
        """Matrix ``L`` with ``vec(a * x) = vec(x) @ L``."""
        va = self.decode(np.array([a]))[0]
        return np.einsum("i,ijk->jk", va, self.struct) % self.p

    def mul_row(self, a: int) -> np.ndarray:
        return self.encode(self._all_vectors @ self.multiplication_matrix(a) % self.p)

    @cached_property
    def unit_mask(self) -> np.ndarray:
        # x is a unit iff multiplication by x is injective
        mask = np.empty(self.order, dtype=bool)
        step = 1 << 12
        for start in range(0, self.order, step):
            vecs = self._all_vectors[start : start + step]
            mats = np.einsum("bi,ijk->bjk", vecs, self.struct) % self.p
            mask[start : start + step] = full_rank_mod_p(mats, self.p)
        return mask

    @cached_property
    def _all_vectors(self) -> np.ndarray:
        return self.decode(self.elements)

    def basis_label(self, i: int) -> str:
        return format_polynomial({self.basis[i]: 1}, self.var_names)

    def label(self, index: int) -> str:
        vec = self.decode(np.array([index]))[0]
        terms = {self.basis[i]: int(c) for i, c in enumerate(vec) if c}
        return format_polynomial(terms, self.var_names)

    def parse_element(self, text: str) -> int:
        terms = parse_polynomial(text, self.var_names)
        total = self.zero
        for exps, coeff in terms.items():
            term = self.one
            for var, e in zip(self.variables, exps):
                if e:
                    term = self.mul(term, self.power(var, e))
            scaled = self.zero
            for _ in range(coeff % self.p):
                scaled = self.add(scaled, term)
            total = self.add(total, scaled)
        return total

    def as_table(self, budgets: Budgets = DEFAULT_BUDGETS) -> TableRing:
        if self.order > budgets.table_order_limit:
            raise BudgetExceededError("table_order_limit", budgets.table_order_limit, self.order)
        mul = np.empty((self.order, self.order), dtype=_index_dtype(self.order))
        for a in range(self.order):
            mul[a] = self.mul_row(a)
        vecs = self._all_vectors
        add = np.empty_like(mul)
        for a in range(self.order):
            add[a] = self.encode(vecs + vecs[a])
        return TableRing(
            add,
            mul,
            [self.label(i) for i in range(self.order)],
            zero=self.zero,
            one=self.one,
            provenance={**self.provenance, "table_of": self.name},
            additive_orders=(self.p,) * self.dim,
        )

    def is_local(self) -> bool:
        """Local iff the F_p-span of the nonunits contains no unit."""
        nonunits = np.flatnonzero(~self.unit_mask)
        if nonunits.size == 0:
            return False
        basis, _ = rref_mod_p(self.decode(nonunits), self.p)
        return not bool(np.any(self.unit_mask[_algebra_mask(self, basis)]))

    def is_vnr(self) -> bool:
        # a finite ring is von Neumann regular exactly when it is reduced
        return self.is_reduced()

    def check_axioms(self, budgets: Budgets = DEFAULT_BUDGETS, seed: int = 0) -> None:
        """Check on basis triples; bilinearity gives the rest."""
        c, p = self.struct, self.p
        if self.one == self.zero:
            raise AxiomViolationError(f"{self.name}: 1 = 0")
        if np.any(c != np.transpose(c, (1, 0, 2))):
            raise AxiomViolationError(f"{self.name}: structure constants not symmetric")
        left = np.einsum("ijm,mkl->ijkl", c, c) % p
        right = np.einsum("jkm,iml->ijkl", c, c) % p
        if np.any(left != right):
            raise AxiomViolationError(f"{self.name}: multiplication not associative")
        one = self.decode(np.array([self.one]))[0]
        ident = np.einsum("i,ijk->jk", one, c) % p
        if np.any(ident != np.eye(self.dim, dtype=np.int64)):
            raise AxiomViolationError(f"{self.name}: {self.label(self.one)} is not an identity")


# --- ideals ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class IdealHandle:
    ring: FiniteRing
    mask: np.ndarray
    gens: tuple[int, ...] = ()
    basis: np.ndarray | None = field(default=None, repr=False)

    @cached_property
    def key(self) -> bytes:
        return np.packbits(self.mask).tobytes()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IdealHandle):
            return NotImplemented
        return self.ring is other.ring and self.key == other.key

    def __hash__(self) -> int:
        return hash((id(self.ring), self.key))

    @cached_property
    def elements(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    @property
    def size(self) -> int:
        return int(self.elements.size)

    @property
    def proper(self) -> bool:
        return not bool(self.mask[self.ring.one])

    @property
    def is_zero(self) -> bool:
        return self.size == 1

    def __contains__(self, x: int) -> bool:
        return bool(self.mask[x])

    def issubset(self, other: IdealHandle) -> bool:
        _same_ring(self, other)
        return bool(np.all(other.mask[self.mask]))

    def describe(self) -> str:
        if self.is_zero:
            return "(0)"
        gens = self.gens or tuple(int(x) for x in self.elements[:1])
        return "(" + ", ".join(self.ring.label(g) for g in gens) + ")"

    def __repr__(self) -> str:
        return f"<Ideal {self.describe()} of {self.ring.name} size={self.size}>"


def _same_ring(*ideals: IdealHandle) -> FiniteRing:
    ring = ideals[0].ring
    for ideal in ideals[1:]:
        if ideal.ring is not ring:
            raise InvalidParameterError("ideals belong to different rings")
    return ring


def _subgroup_sum(ring: TableRing, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    sums = ring.add_table[np.ix_(a, b)]
    mask = np.zeros(ring.order, dtype=bool)
    mask[sums.ravel()] = True
    return mask


def _algebra_mask(ring: AlgebraRing, basis: np.ndarray) -> np.ndarray:
    mask = np.zeros(ring.order, dtype=bool)
    mask[ring.encode(span_vectors(basis, ring.p))] = True
    return mask


def _algebra_ideal_basis(ring: AlgebraRing, gens: Sequence[int]) -> np.ndarray:
    if not gens:
        return np.zeros((0, ring.dim), dtype=np.int64)
    g = ring.decode(np.array(gens))
    prods = np.einsum("mi,jik->mjk", g, ring.struct).reshape(-1, ring.dim)
    rows, _ = rref_mod_p(np.vstack([g, prods]), ring.p)
    return rows


def ideal_generated(ring: FiniteRing, gens: Iterable[int]) -> IdealHandle:
    """Smallest ideal containing *gens*; ``()`` gives the zero ideal."""
    gen_list = tuple(dict.fromkeys(int(g) for g in gens if int(g) != ring.zero))
    if isinstance(ring, AlgebraRing):
        basis = _algebra_ideal_basis(ring, gen_list)
        return IdealHandle(ring, _algebra_mask(ring, basis), gen_list, basis)
    if isinstance(ring, ModularRing):
        d = math.gcd(ring.n, *gen_list) if gen_list else ring.n
        gens = (d,) if d != ring.n else ()
        return IdealHandle(ring, ring.elements % d == 0, gens)
    table = ring.as_table()
    mask = np.zeros(ring.order, dtype=bool)
    mask[ring.zero] = True
    for g in gen_list:
        principal = np.unique(table.mul_row(g))
        if np.all(mask[principal]):
            continue
        mask = _subgroup_sum(table, np.flatnonzero(mask), principal)
    return IdealHandle(ring, mask, gen_list)


def zero_ideal(ring: FiniteRing) -> IdealHandle:
    return ideal_generated(ring, ())


def unit_ideal(ring: FiniteRing) -> IdealHandle:
    return ideal_generated(ring, (ring.one,))


def principal_ideal(ring: FiniteRing, x: int) -> IdealHandle:
    return ideal_generated(ring, (x,))


def ideal_from_mask(ring: FiniteRing, mask: np.ndarray) -> IdealHandle:
    """Wrap *mask* as an ideal after checking closure; generators found greedily."""
    mask = np.asarray(mask, dtype=bool)
    if isinstance(ring, AlgebraRing):
        vecs = ring.decode(np.flatnonzero(mask))
        basis, _ = rref_mod_p(vecs, ring.p) if vecs.size else (vecs, [])
        gens = tuple(int(x) for x in ring.encode(basis)) if len(basis) else ()
        ideal = IdealHandle(ring, _algebra_mask(ring, basis), gens, basis)
    else:
        gens_list: list[int] = []
        current = zero_ideal(ring)
        for x in np.flatnonzero(mask):
            if not current.mask[x]:
                gens_list.append(int(x))
                current = ideal_generated(ring, gens_list)
        ideal = IdealHandle(ring, current.mask, tuple(gens_list))
    if not np.array_equal(ideal.mask, mask):
        raise InvalidParameterError("subset is not an ideal")
    return ideal


def ideal_sum(a: IdealHandle, b: IdealHandle) -> IdealHandle:
    ring = _same_ring(a, b)
    return ideal_generated(ring, a.gens + b.gens)


def ideal_product(a: IdealHandle, b: IdealHandle) -> IdealHandle:
    ring = _same_ring(a, b)
    if not a.gens or not b.gens:
        return zero_ideal(ring)
    ga = np.repeat(np.array(a.gens), len(b.gens))
    gb = np.tile(np.array(b.gens), len(a.gens))
    return ideal_generated(ring, ring.mul_many(ga, gb))


def ideal_power(a: IdealHandle, k: int) -> IdealHandle:
    if k < 1:
        raise InvalidParameterError("ideal power needs k >= 1")
    result = a
    for _ in range(k - 1):
        result = ideal_product(result, a)
    return result


def ideal_intersection(a: IdealHandle, b: IdealHandle) -> IdealHandle:
    ring = _same_ring(a, b)
    return ideal_from_mask(ring, a.mask & b.mask)


def ideal_arith(kind: str, *args: Any) -> IdealHandle:
    """Dispatch ``sum``, ``product``, ``intersection`` or ``power`` (last arg is k)."""
    if kind == "sum":
        return ideal_sum(*args)
    if kind == "product":
        return ideal_product(*args)
    if kind == "intersection":
        return ideal_intersection(*args)
    if kind == "power":
        ideal, k = args
        return ideal_power(ideal, int(k))
    raise InvalidParameterError(f"unknown ideal operation {kind!r}")


def radical(ideal: IdealHandle) -> IdealHandle:
    ring = ideal.ring
    powers = ring.pow_all(ring.nil_bound)
    return ideal_from_mask(ring, ideal.mask[powers])


def power_image(ring: FiniteRing, n: int) -> np.ndarray:
    """Distinct n-th powers in index order."""
    return np.unique(ring.pow_all(n))


# --- quotients ------------------------------------------------------------


@dataclass(frozen=True)
class QuotientMap:
    ring: FiniteRing
    source: FiniteRing
    kernel: IdealHandle
    projection: np.ndarray
    lift: np.ndarray

    def image(self, ideal: IdealHandle) -> IdealHandle:
        mask = np.zeros(self.ring.order, dtype=bool)
        mask[self.projection[ideal.mask]] = True
        gens = tuple(dict.fromkeys(int(self.projection[g]) for g in ideal.gens))
        return IdealHandle(self.ring, mask, gens) if not isinstance(
            self.ring, AlgebraRing
        ) else ideal_from_mask(self.ring, mask)

    def preimage(self, ideal: IdealHandle) -> IdealHandle:
        return ideal_from_mask(self.source, ideal.mask[self.projection])

    def lift_label(self, x: int) -> str:
        return self.source.label(int(self.lift[x]))


def _lowest_preimage(projection: np.ndarray, size: int) -> np.ndarray:
    lift = np.full(size, np.iinfo(np.int64).max, dtype=np.int64)
    np.minimum.at(lift, projection, np.arange(projection.size, dtype=np.int64))
    return lift


def quotient_ring(ring: FiniteRing, j: IdealHandle) -> QuotientMap:
    if j.ring is not ring:
        raise InvalidParameterError("ideal does not belong to ring")
    if not j.proper:
        raise InvalidParameterError("cannot form the quotient by the unit ideal")
    if isinstance(ring, AlgebraRing):
        return _algebra_quotient(ring, j)
    if isinstance(ring, ModularRing):
        return _modular_quotient(ring, j)
    table = ring.as_table()
    members = j.elements
    reps = table.add_table[:, members].min(axis=1).astype(np.int64)
    classes = np.unique(reps)
    index_of = np.full(ring.order, -1, dtype=np.int64)
    index_of[classes] = np.arange(classes.size)
    projection = index_of[reps]
    add = projection[table.add_table[np.ix_(classes, classes)]]
    mul = projection[table.mul_table[np.ix_(classes, classes)]]
    quotient = TableRing(
        add,
        mul,
        [f"[{table.label(int(c))}]" for c in classes],
        zero=int(projection[ring.zero]),
        one=int(projection[ring.one]),
        provenance={"kind": "quotient", "name": f"{ring.name}/{j.describe()}"},
    )
    return QuotientMap(quotient, ring, j, projection, classes.astype(np.int64))


def _modular_quotient(ring: ModularRing, j: IdealHandle) -> QuotientMap:
    d = math.gcd(ring.n, *(int(x) for x in j.elements))
    quotient = mk_zn(d)
    quotient.provenance["name"] = f"{ring.name}/({d})"
    projection = ring.elements % d
    return QuotientMap(quotient, ring, j, projection, np.arange(d, dtype=np.int64))


def _column_order(basis: Sequence[tuple[int, ...]]) -> list[int]:
    """Largest monomials first so pivots eliminate them and small ones stay as basis."""
    return sorted(range(len(basis)), key=lambda i: (sum(basis[i]), basis[i]), reverse=True)


def _reduce_against(vecs: np.ndarray, rows: np.ndarray, pivots: list[int], p: int) -> np.ndarray:
    if not pivots:
        return vecs % p
    return (vecs - vecs[:, pivots] @ rows) % p


def _algebra_quotient(ring: AlgebraRing, j: IdealHandle) -> QuotientMap:
    p = ring.p
    basis = j.basis if j.basis is not None else _algebra_ideal_basis(ring, j.gens)
    order_cols = _column_order(ring.basis)
    rows_perm, piv_perm = rref_mod_p(basis[:, order_cols], p) if len(basis) else (
        np.zeros((0, ring.dim), dtype=np.int64),
        [],
    )
    inverse = np.argsort(order_cols)
    rows = rows_perm[:, inverse] if len(rows_perm) else rows_perm
    pivots = [order_cols[c] for c in piv_perm]
    keep = [i for i in range(ring.dim) if i not in set(pivots)]
    struct = np.zeros((len(keep), len(keep), len(keep)), dtype=np.int64)
    for a, i in enumerate(keep):
        for b, k in enumerate(keep):
            prod = ring.struct[i, k][None, :]
            struct[a, b] = _reduce_against(prod, rows, pivots, p)[0, keep]
    one_vec = _reduce_against(ring.decode(np.array([ring.one])), rows, pivots, p)[0, keep]
    variables = [
        _reduce_against(ring.decode(np.array([v])), rows, pivots, p)[0, keep]
        for v in ring.variables
    ]
    quotient = AlgebraRing(
        p,
        [ring.basis[i] for i in keep],
        struct,
        one_vec,
        var_names=ring.var_names,
        variables=variables,
        provenance={"kind": "quotient", "name": f"{ring.name}/{j.describe()}"},
    )
    src_vecs = ring.decode(ring.elements)
    projection = quotient.encode(_reduce_against(src_vecs, rows, pivots, p)[:, keep])
    projection = np.atleast_1d(projection).astype(np.int64)
    lift = _lowest_preimage(projection, quotient.order)
    return QuotientMap(quotient, ring, j, projection, lift)


# --- constructors ---------------------------------------------------------


def _finish(ring: FiniteRing, budgets: Budgets) -> FiniteRing:
    ring.check_axioms(budgets)
    get_logger().debug("ring constructed", operation="construct", ring=ring.name, order=ring.order)
    return ring


def _zn_table(n: int) -> TableRing:
    idx = np.arange(n, dtype=np.int64)
    return TableRing(
        np.add.outer(idx, idx) % n,
        np.multiply.outer(idx, idx) % n,
        [str(i) for i in range(n)],
        provenance={"kind": "zn", "n": n, "name": f"Z{n}"},
        additive_orders=(n,),
    )


def mk_zn(n: int, budgets: Budgets = DEFAULT_BUDGETS) -> FiniteRing:
    """``Z_n`` with tables up to the table limit and plain modular arithmetic above it."""
    if n < 2:
        raise InvalidParameterError(f"Z_n needs n >= 2, got {n}")
    ring: FiniteRing
    if n <= budgets.table_order_limit:
        ring = _zn_table(n)
    elif n <= budgets.algebra_order_limit:
        ring = ModularRing(n)
    else:
        raise BudgetExceededError("algebra_order_limit", budgets.algebra_order_limit, n)
    _finish(ring, budgets)
    return ring


def mk_product(a: FiniteRing, b: FiniteRing, budgets: Budgets = DEFAULT_BUDGETS) -> TableRing:
    order = a.order * b.order
    if order > budgets.table_order_limit:
        raise BudgetExceededError("table_order_limit", budgets.table_order_limit, order)
    ta, tb = a.as_table(budgets), b.as_table(budgets)
    ia = np.repeat(np.arange(a.order), b.order)
    ib = np.tile(np.arange(b.order), a.order)
    nb = b.order
    add = ta.add_table[np.ix_(ia, ia)].astype(np.int64) * nb + tb.add_table[np.ix_(ib, ib)]
    mul = ta.mul_table[np.ix_(ia, ia)].astype(np.int64) * nb + tb.mul_table[np.ix_(ib, ib)]
    orders = None
    if ta.additive_orders is not None and tb.additive_orders is not None:
        orders = ta.additive_orders + tb.additive_orders
    ring = TableRing(
        add,
        mul,
        [f"({ta.label(int(x))},{tb.label(int(y))})" for x, y in zip(ia, ib)],
        zero=a.zero * nb + b.zero,
        one=a.one * nb + b.one,
        provenance={
            "kind": "product",
            "factors": [a.provenance, b.provenance],
            "name": f"{a.name}x{b.name}",
        },
        additive_orders=orders,
    )
    _finish(ring, budgets)
    return ring


def mk_poly_quotient(
    p: int,
    caps: Sequence[int],
    extra: Sequence[str] = (),
    budgets: Budgets = DEFAULT_BUDGETS,
    var_names: Sequence[str] | None = None,
) -> AlgebraRing:
    """``Z_p[X_1..X_k] / ((X_i^{d_i}) + (extra))`` in algebra representation."""
    if not sympy.isprime(p):
        raise InvalidParameterError(f"{p} is not prime")
    if not caps or any(int(d) < 1 for d in caps):
        raise InvalidParameterError("caps must be a nonempty list of positive integers")
    caps = tuple(int(d) for d in caps)
    names = tuple(var_names) if var_names else default_var_names(len(caps))
    basis = list(itertools.product(*(range(d) for d in caps)))
    dim = len(basis)
    if p**dim > budgets.algebra_order_limit:
        raise BudgetExceededError("algebra_order_limit", budgets.algebra_order_limit, p**dim)
    position = {b: i for i, b in enumerate(basis)}
    struct = np.zeros((dim, dim, dim), dtype=np.int64)
    for i, bi in enumerate(basis):
        for j, bj in enumerate(basis):
            target = tuple(x + y for x, y in zip(bi, bj))
            if target in position:
                struct[i, j, position[target]] = 1
    one = np.zeros(dim, dtype=np.int64)
    one[position[(0,) * len(caps)]] = 1
    variables = []
    for v in range(len(caps)):
        vec = np.zeros(dim, dtype=np.int64)
        unit = tuple(1 if i == v else 0 for i in range(len(caps)))
        if unit in position:
            vec[position[unit]] = 1
        variables.append(vec)
    cap_text = ",".join(str(d) for d in caps)
    name = f"F{p}[{','.join(names)}]/caps({cap_text})"
    provenance: dict[str, Any] = {
        "kind": "poly_quotient",
        "p": p,
        "caps": list(caps),
        "extra": list(extra),
        "name": name,
    }
    ring = AlgebraRing(p, basis, struct, one, var_names=names, variables=variables,
                       provenance=provenance)
    if extra:
        relations = ideal_generated(ring, [ring.parse_element(f) for f in extra])
        if not relations.proper:
            raise InvalidParameterError("extra relations make 1 = 0")
        quotient = quotient_ring(ring, relations).ring
        assert isinstance(quotient, AlgebraRing)
        quotient.provenance.update(provenance)
        quotient.provenance["name"] = f"{name}/({', '.join(extra)})"
        ring = quotient
    _finish(ring, budgets)
    return ring


@dataclass(frozen=True)
class ModuleSpec:
    """Finite R-module on the group ``Z_{o_1} x ... x Z_{o_k}`` (most significant first)."""

    orders: tuple[int, ...]
    action: np.ndarray
    labels: tuple[str, ...] = ()

    @property
    def size(self) -> int:
        return math.prod(self.orders)

    @cached_property
    def add_table(self) -> np.ndarray:
        digits = self.digits
        total = (digits[:, None, :] + digits[None, :, :]) % np.array(self.orders)
        return self._encode(total)

    @cached_property
    def digits(self) -> np.ndarray:
        idx = np.arange(self.size, dtype=np.int64)
        out = np.zeros((self.size, len(self.orders)), dtype=np.int64)
        for pos in range(len(self.orders) - 1, -1, -1):
            out[:, pos] = idx % self.orders[pos]
            idx = idx // self.orders[pos]
        return out

    def _encode(self, digits: np.ndarray) -> np.ndarray:
        out = np.zeros(digits.shape[:-1], dtype=np.int64)
        for pos, o in enumerate(self.orders):
            out = out * o + digits[..., pos]
        return out

    def label(self, m: int) -> str:
        if self.labels:
            return self.labels[m]
        d = self.digits[m]
        return str(int(d[0])) if len(d) == 1 else "(" + ",".join(str(int(x)) for x in d) + ")"

    def validate(self, ring: FiniteRing) -> None:
        """Check that the action is unital, additive in both slots and associative."""
        size = self.size
        act = np.asarray(self.action, dtype=np.int64)
        if act.shape != (ring.order, size):
            raise InvalidParameterError(
                f"action table has shape {act.shape}, expected {(ring.order, size)}"
            )
        if np.any(act[ring.one] != np.arange(size)):
            raise InvalidParameterError("action: 1*m != m")
        if np.any(act[:, 0] != 0):
            raise InvalidParameterError("action: r*0 != 0")
        add = self.add_table
        elems = ring.elements
        for r in range(ring.order):
            if np.any(act[r][add] != add[act[r]][:, act[r]]):
                raise InvalidParameterError(f"action of {ring.label(r)} is not additive")
            rs = ring.add_many(np.full(ring.order, r), elems)
            if np.any(act[rs] != add[np.broadcast_to(act[r], act.shape), act]):
                raise InvalidParameterError(f"action is not additive at {ring.label(r)}")
            prods = ring.mul_many(np.full(ring.order, r), elems)
            if np.any(act[prods] != act[r][act]):
                raise InvalidParameterError(f"action is not associative at {ring.label(r)}")

    @classmethod
    def natural(cls, ring: FiniteRing, d: int) -> ModuleSpec:
        """``Z_d`` as a module over ``Z_n`` with d | n."""
        n = ring.provenance.get("n")
        if ring.provenance.get("kind") != "zn" or n is None or int(n) % d:
            raise InvalidParameterError("natural module needs Z_n with d dividing n")
        r = np.arange(ring.order, dtype=np.int64)
        m = np.arange(d, dtype=np.int64)
        return cls((d,), np.multiply.outer(r, m) % d)

    @classmethod
    def regular(cls, ring: FiniteRing) -> ModuleSpec:
        """The ring as a module over itself."""
        table = ring.as_table()
        if table.additive_orders is None:
            raise InvalidParameterError(f"{ring.name}: additive decomposition unknown")
        return cls(
            table.additive_orders,
            table.mul_table.astype(np.int64),
            tuple(table.label(i) for i in range(ring.order)),
        )


def mk_idealization(
    ring: FiniteRing, module: ModuleSpec, budgets: Budgets = DEFAULT_BUDGETS
) -> TableRing:
    """``R(+)M`` with ``(a, m)(b, n) = (ab, an + bm)``."""
    module.validate(ring)
    size = module.size
    order = ring.order * size
    if order > budgets.table_order_limit:
        raise BudgetExceededError("table_order_limit", budgets.table_order_limit, order)
    table = ring.as_table(budgets)
    act = np.asarray(module.action, dtype=np.int64)
    madd = module.add_table
    ir = np.repeat(np.arange(ring.order), size)
    im = np.tile(np.arange(size), ring.order)
    r1, r2 = np.meshgrid(ir, ir, indexing="ij")
    m1, m2 = np.meshgrid(im, im, indexing="ij")
    add = table.add_table[r1, r2].astype(np.int64) * size + madd[m1, m2]
    cross = madd[act[r1, m2], act[r2, m1]]
    mul = table.mul_table[r1, r2].astype(np.int64) * size + cross
    orders = None
    if table.additive_orders is not None:
        orders = table.additive_orders + module.orders
    idealized = TableRing(
        add,
        mul,
        [f"({table.label(int(r))},{module.label(int(m))})" for r, m in zip(ir, im)],
        zero=ring.zero * size,
        one=ring.one * size,
        provenance={
            "kind": "idealization",
            "ring": ring.provenance,
            "module_orders": list(module.orders),
            "name": f"{ring.name}(+)M{list(module.orders)}",
        },
        additive_orders=orders,
    )
    idealized.provenance["module_size"] = size
    _finish(idealized, budgets)
    return idealized


def module_product(ideal: IdealHandle, module: ModuleSpec) -> np.ndarray:
    """Mask of the submodule ``I M`` generated by ``{i m}``."""
    act = np.asarray(module.action, dtype=np.int64)
    gens = np.unique(act[ideal.elements].ravel())
    mask = np.zeros(module.size, dtype=bool)
    mask[0] = True
    frontier = np.flatnonzero(mask)
    while True:
        sums = np.unique(module.add_table[np.ix_(frontier, gens)].ravel())
        if np.all(mask[sums]):
            return mask
        mask[sums] = True
        frontier = np.flatnonzero(mask)


def idealization_ideal(
    ring: FiniteRing, base: IdealHandle, submodule: np.ndarray, module_size: int
) -> IdealHandle:
    """``I(+)S`` inside the idealization *ring*; requires ``I M`` inside ``S``."""
    r_part = np.arange(ring.order) // module_size
    m_part = np.arange(ring.order) % module_size
    mask = base.mask[r_part] & np.asarray(submodule, dtype=bool)[m_part]
    return ideal_from_mask(ring, mask)


# --- enumeration and localization ----------------------------------------


def enumerate_ideals(ring: FiniteRing, budgets: Budgets = DEFAULT_BUDGETS) -> list[IdealHandle]:
    """All ideals as the join-closure of the principal ideals, smallest first."""
    if ring.order > budgets.table_order_limit:
        raise BudgetExceededError("table_order_limit", budgets.table_order_limit, ring.order)
    principals: dict[bytes, IdealHandle] = {}
    for x in range(ring.order):
        ideal = principal_ideal(ring, x)
        principals.setdefault(ideal.key, ideal)
    found: dict[bytes, IdealHandle] = dict(principals)
    frontier = list(principals.values())
    while frontier:
        nxt: list[IdealHandle] = []
        for ideal in frontier:
            for pr in principals.values():
                if pr.issubset(ideal):
                    continue
                total = ideal_sum(ideal, pr)
                if total.key not in found:
                    found[total.key] = total
                    nxt.append(total)
                    if len(found) > budgets.ideal_enumeration:
                        get_logger().log_budget(
                            "ideal_enumeration", budgets.ideal_enumeration, len(found),
                            ring=ring.name,
                        )
                        raise BudgetExceededError(
                            "ideal_enumeration", budgets.ideal_enumeration, len(found)
                        )
        frontier = nxt
    return sorted(found.values(), key=lambda i: (i.size, tuple(i.elements)))


def multiplicative_closure(ring: FiniteRing, s: Iterable[int]) -> np.ndarray:
    mask = np.zeros(ring.order, dtype=bool)
    mask[ring.one] = True
    gens = np.unique(np.array(list(s), dtype=np.int64))
    frontier = np.array([ring.one], dtype=np.int64)
    while frontier.size:
        prods = ring.mul_many(np.repeat(frontier, gens.size), np.tile(gens, frontier.size))
        new = np.unique(prods[~mask[prods]])
        mask[new] = True
        frontier = new
    return mask


def idempotent_power(ring: FiniteRing, t: int) -> int:
    """The unique idempotent among the powers of *t*."""
    seen: dict[int, int] = {}
    x, k = t, 1
    while x not in seen:
        seen[x] = k
        x = ring.mul(x, t)
        k += 1
    start, period = seen[x], k - seen[x]
    m = period * max(1, -(-start // period))
    return ring.power(t, m)


@dataclass(frozen=True)
class Localization:
    source: FiniteRing
    ring: FiniteRing | None
    idempotent: int
    closure: np.ndarray
    canonical: np.ndarray

    @property
    def zero_ring(self) -> bool:
        return self.ring is None

    def image(self, ideal: IdealHandle) -> IdealHandle:
        if self.ring is None:
            raise InvalidParameterError("localization is the zero ring")
        mask = np.zeros(self.ring.order, dtype=bool)
        mask[self.canonical[ideal.elements]] = True
        return ideal_from_mask(self.ring, mask)


def localize(ring: FiniteRing, s: Sequence[int], budgets: Budgets = DEFAULT_BUDGETS) -> Localization:
    """``R_S`` realised as ``eR`` for the idempotent power e of the product of S."""
    closure = multiplicative_closure(ring, s)
    t = ring.one
    for x in s:
        t = ring.mul(t, int(x))
    e = idempotent_power(ring, t)
    if closure[ring.zero] or e == ring.zero:
        return Localization(ring, None, ring.zero, closure, np.zeros(ring.order, dtype=np.int64))
    image = ring.mul_row(e)
    members = np.unique(image)
    if members.size > budgets.table_order_limit:
        raise BudgetExceededError("table_order_limit", budgets.table_order_limit, members.size)
    index_of = np.full(ring.order, -1, dtype=np.int64)
    index_of[members] = np.arange(members.size)
    a = np.repeat(members, members.size)
    b = np.tile(members, members.size)
    k = members.size
    local = TableRing(
        index_of[ring.add_many(a, b)].reshape(k, k),
        index_of[ring.mul_many(a, b)].reshape(k, k),
        [ring.label(int(m)) for m in members],
        zero=int(index_of[ring.zero]),
        one=int(index_of[e]),
        provenance={"kind": "localization", "name": f"{ring.name}_S", "idempotent": ring.label(e)},
    )
    canonical = index_of[image]
    _verify_localization(ring, local, closure, canonical)
    return Localization(ring, local, e, closure, canonical)


def _verify_localization(
    ring: FiniteRing, local: TableRing, closure: np.ndarray, canonical: np.ndarray
) -> None:
    for s in np.flatnonzero(closure):
        if not local.unit_mask[canonical[s]]:
            raise AxiomViolationError(f"localization: image of {ring.label(int(s))} is not a unit")
    killed = np.zeros(ring.order, dtype=bool)
    for s in np.flatnonzero(closure):
        killed |= ring.mul_row(int(s)) == ring.zero
    if not np.array_equal(killed, canonical == local.zero):
        raise AxiomViolationError("localization: kernel differs from the S-torsion")


__all__ = [
    "AlgebraRing",
    "FiniteRing",
    "IdealHandle",
    "Localization",
    "ModuleSpec",
    "QuotientMap",
    "TableRing",
    "enumerate_ideals",
    "ideal_arith",
    "ideal_from_mask",
    "ideal_generated",
    "ideal_intersection",
    "ideal_power",
    "ideal_product",
    "ideal_sum",
    "idealization_ideal",
    "localize",
    "mk_idealization",
    "mk_poly_quotient",
    "mk_product",
    "mk_zn",
    "module_product",
    "power_image",
    "principal_ideal",
    "quotient_ring",
    "radical",
    "full_rank_mod_p",
    "rref_mod_p",
    "span_vectors",
    "unit_ideal",
    "zero_ideal",
]
