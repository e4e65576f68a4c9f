"""Finite ring construction, ideal arithmetic, quotients and localizations."""

import numpy as np
import pytest

from nsemiprimary.config import Budgets
from nsemiprimary.errors import AxiomViolationError, BudgetExceededError, InvalidParameterError
from nsemiprimary.rings import (
    AlgebraRing,
    ModularRing,
    ModuleSpec,
    TableRing,
    enumerate_ideals,
    ideal_arith,
    ideal_from_mask,
    ideal_generated,
    ideal_intersection,
    ideal_power,
    ideal_product,
    ideal_sum,
    localize,
    mk_idealization,
    mk_poly_quotient,
    mk_product,
    mk_zn,
    power_image,
    principal_ideal,
    quotient_ring,
    radical,
    unit_ideal,
    zero_ideal,
)


def _ideal(ring, *gens: str):
    return ideal_generated(ring, [ring.parse_element(g) for g in gens])


def test_zn_basics() -> None:
    z12 = mk_zn(12)
    assert isinstance(z12, TableRing)
    assert z12.name == "Z12"
    assert z12.order == 12
    assert z12.units() == [1, 5, 7, 11]
    assert z12.characteristic() == 12
    assert list(z12.nilradical().elements) == [0, 6]
    assert not z12.is_local()
    assert not z12.is_vnr()
    assert mk_zn(6).is_vnr()
    assert mk_zn(8).is_local()
    assert mk_zn(5).is_reduced()


def test_zn_rejects_small_modulus() -> None:
    with pytest.raises(InvalidParameterError):
        mk_zn(1)


def test_zn_switches_to_modular_above_table_limit() -> None:
    ring = mk_zn(5000)
    assert isinstance(ring, ModularRing)
    assert ring.is_local() is False
    ideal = ideal_generated(ring, [10, 25])
    assert ideal.size == 1000
    assert ideal.describe() == "(5)"
    with pytest.raises(BudgetExceededError) as info:
        mk_zn(1 << 17)
    assert info.value.budget == "algebra_order_limit"


def test_product_labels_and_nilradical() -> None:
    ring = mk_product(mk_zn(4), mk_zn(2))
    assert ring.name == "Z4xZ2"
    assert ring.order == 8
    assert ring.labels(ring.nilradical().elements) == ["(0,0)", "(2,0)"]
    assert ring.parse_element("(0, 1)") == 1
    assert not ring.is_local()
    assert mk_product(mk_zn(2), mk_zn(3)).is_vnr()


def test_product_respects_table_budget() -> None:
    with pytest.raises(BudgetExceededError):
        mk_product(mk_zn(64), mk_zn(64), Budgets(table_order_limit=1024))


def test_poly_quotient_orders() -> None:
    ring = mk_poly_quotient(2, (4, 4), ["X^2*Y^2"])
    assert isinstance(ring, AlgebraRing)
    assert ring.order == 2**12
    small = mk_poly_quotient(3, (2,))
    assert small.order == 9
    assert small.nilradical() == _ideal(small, "X")
    assert small.is_local()


def test_poly_quotient_rejects_bad_input() -> None:
    with pytest.raises(InvalidParameterError):
        mk_poly_quotient(4, (2,))
    with pytest.raises(InvalidParameterError):
        mk_poly_quotient(2, (3,), ["X + 1"])
    with pytest.raises(BudgetExceededError):
        mk_poly_quotient(2, (8, 8))


def test_idealizations() -> None:
    z2 = mk_zn(2)
    ring = mk_idealization(z2, ModuleSpec.natural(z2, 2))
    assert ring.order == 4
    assert ring.nilradical().size == 2
    assert ring.is_local()
    z4 = mk_zn(4)
    regular = mk_idealization(z4, ModuleSpec.regular(z4))
    assert regular.order == 16
    assert regular.characteristic() == 4
    with pytest.raises(InvalidParameterError):
        ModuleSpec.natural(mk_zn(6), 4)


def test_ideal_arithmetic_in_z12() -> None:
    z12 = mk_zn(12)
    two, three, six = _ideal(z12, "2"), _ideal(z12, "3"), _ideal(z12, "6")
    assert list(_ideal(z12, "4").elements) == [0, 4, 8]
    assert ideal_product(two, three) == six
    assert ideal_arith("product", two, three) == six
    assert ideal_sum(two, three) == unit_ideal(z12)
    assert ideal_intersection(two, three) == six
    assert ideal_arith("power", two, 2) == _ideal(z12, "4")
    assert ideal_power(two, 3) == _ideal(z12, "8")
    assert not unit_ideal(z12).proper
    assert zero_ideal(z12).is_zero
    assert 6 in six and 4 not in six
    assert six.issubset(two)
    with pytest.raises(InvalidParameterError):
        ideal_arith("quotient", two, three)


def test_ideal_equality_by_members() -> None:
    z12 = mk_zn(12)
    assert _ideal(z12, "2") == _ideal(z12, "10")
    assert principal_ideal(z12, 9) == _ideal(z12, "3")
    # same members in a different ring object are different ideals
    assert _ideal(mk_zn(12), "2") != _ideal(z12, "2")


def test_ideal_from_mask_checks_closure() -> None:
    z8 = mk_zn(8)
    mask = np.zeros(8, dtype=bool)
    mask[[0, 4]] = True
    assert ideal_from_mask(z8, mask) == _ideal(z8, "4")
    mask[2] = True
    with pytest.raises(InvalidParameterError):
        ideal_from_mask(z8, mask)


def test_radicals() -> None:
    z8 = mk_zn(8)
    assert list(radical(_ideal(z8, "4")).elements) == [0, 2, 4, 6]
    z12 = mk_zn(12)
    assert radical(_ideal(z12, "6")) == _ideal(z12, "6")
    assert radical(zero_ideal(z12)) == _ideal(z12, "6")


def test_power_image() -> None:
    assert list(power_image(mk_zn(8), 2)) == [0, 1, 4]
    assert list(power_image(mk_zn(8), 3)) == [0, 1, 3, 5, 7]


def test_quotient_maps() -> None:
    z12 = mk_zn(12)
    qmap = quotient_ring(z12, _ideal(z12, "4"))
    assert qmap.ring.order == 4
    assert qmap.image(_ideal(z12, "2")).size == 2
    assert qmap.preimage(zero_ideal(qmap.ring)) == _ideal(z12, "4")
    with pytest.raises(InvalidParameterError):
        quotient_ring(z12, unit_ideal(z12))


def test_modular_and_algebra_quotients() -> None:
    ring = mk_zn(5000)
    qmap = quotient_ring(ring, ideal_generated(ring, [40]))
    assert qmap.ring.order == 40
    alg = mk_poly_quotient(2, (4, 4), ["X^2*Y^2"])
    q = quotient_ring(alg, _ideal(alg, "X^2", "Y^2"))
    assert q.ring.order == 16


def test_enumerate_ideals() -> None:
    ideals = enumerate_ideals(mk_zn(12))
    assert len(ideals) == 6
    assert ideals[0].is_zero
    assert not ideals[-1].proper
    assert len(enumerate_ideals(mk_product(mk_zn(3), mk_zn(3)))) == 4
    assert len(enumerate_ideals(mk_zn(5))) == 2
    with pytest.raises(BudgetExceededError):
        enumerate_ideals(mk_zn(64), Budgets(table_order_limit=32))


def test_localization_at_idempotent() -> None:
    z12 = mk_zn(12)
    loc = localize(z12, [4])
    assert not loc.zero_ring
    assert loc.ring is not None and loc.ring.order == 3
    assert z12.label(loc.idempotent) == "4"
    assert loc.image(_ideal(z12, "3")).is_zero
    trivial = localize(z12, [1])
    assert trivial.ring is not None and trivial.ring.order == 12
    assert localize(z12, [6]).zero_ring
    with pytest.raises(InvalidParameterError):
        localize(z12, [6]).image(_ideal(z12, "2"))


@pytest.mark.parametrize(
    "ring",
    [
        mk_zn(9),
        mk_product(mk_zn(4), mk_zn(2)),
        mk_poly_quotient(2, (2, 2)),
    ],
    ids=["z9", "z4xz2", "f2xy"],
)
def test_constructed_rings_satisfy_axioms(ring) -> None:
    ring.check_axioms()


def test_broken_table_fails_axioms() -> None:
    add = np.add.outer(np.arange(3), np.arange(3)) % 3
    mul = np.zeros((3, 3), dtype=np.int64)
    mul[1] = np.arange(3)
    mul[:, 1] = np.arange(3)
    mul[2, 2] = 2
    broken = TableRing(add, mul, ["0", "1", "2"])
    with pytest.raises(AxiomViolationError):
        broken.check_axioms()
