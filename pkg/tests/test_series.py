"""Laurent arithmetic and subrings of F_q[[X]] given by slot subspaces."""

import numpy as np
import pytest

from nsemiprimary.catalog import series_fixture
from nsemiprimary.errors import InvalidParameterError, ParseError, PrecisionError, SpecViolationError
from nsemiprimary.fields import coeff_field
from nsemiprimary.series import (
    POWER_AVOIDS,
    POWER_LIES_IN,
    SeriesRingSpec,
    TruncatedLaurent,
    colon_ring,
    integral_closure,
    laurent_arith,
    laurent_inv,
    laurent_mul,
    laurent_pow,
    maximal_ideal,
    membership,
    order_ideal,
    pullback,
    ring_from_dict,
    series_ideal,
    series_ring,
)


@pytest.fixture
def f2():
    return coeff_field(2)


def test_parse_and_format(f2) -> None:
    assert str(TruncatedLaurent.parse(f2, "X + 1")) == "1 + X"
    assert str(TruncatedLaurent.parse(f2, "X^-2")) == "X^-2"
    assert TruncatedLaurent.parse(f2, "X + X").is_zero
    f4 = coeff_field(4)
    x = TruncatedLaurent.parse(f4, "aX^3 + (a+1)X")
    assert x.order == 1
    assert str(x) == "(a+1)X + aX^3"


@pytest.mark.parametrize("text", ["", "X^", "1++X", "X^a"])
def test_parse_errors(f2, text: str) -> None:
    with pytest.raises(ParseError):
        TruncatedLaurent.parse(f2, text)


def test_arithmetic(f2) -> None:
    x = TruncatedLaurent.parse(f2, "X")
    inv_x = TruncatedLaurent.parse(f2, "X^-1")
    assert str(laurent_mul(x, inv_x)) == "1"
    one_plus = TruncatedLaurent.parse(f2, "1 + X")
    assert str(laurent_pow(one_plus, 2)) == "1 + X^2"
    assert str(laurent_inv(one_plus, 4)) == "1 + X + X^2 + X^3 + O(X^4)"
    assert str(laurent_arith("pow", one_plus, n=-1, precision=4)) == "1 + X + X^2 + X^3 + O(X^4)"
    assert str(laurent_arith("inv", inv_x)) == "X"
    with pytest.raises(InvalidParameterError):
        laurent_arith("div", x, x)
    with pytest.raises(ZeroDivisionError):
        laurent_inv(TruncatedLaurent.zero(f2))


def test_precision_is_tracked(f2) -> None:
    approx = laurent_inv(TruncatedLaurent.parse(f2, "1 + X"), 3)
    assert approx.top == 3
    assert approx.coefficient(2) == 1
    with pytest.raises(PrecisionError):
        approx.coefficient(3)
    ring = series_fixture("z2_x2_x3").ring
    with pytest.raises(PrecisionError):
        ring.contains(TruncatedLaurent(f2, 0, (1,), top=1))


def test_ring_membership(f2) -> None:
    ring = series_fixture("z2_x2_x3").ring
    assert ring.describe() == "F2 + X^2F2[[X]]"
    assert not ring.contains(TruncatedLaurent.parse(f2, "X"))
    assert ring.contains(TruncatedLaurent.parse(f2, "1 + X^3"))
    assert not ring.contains(TruncatedLaurent.parse(f2, "X^-1"))
    x = TruncatedLaurent.parse(f2, "X")
    assert membership(x, ring, POWER_LIES_IN, 2)
    assert not membership(x, ring, POWER_AVOIDS, 3)
    with pytest.raises(InvalidParameterError):
        membership(x, ring, "Z", 2)


def test_contains_batch_matches_contains(f2) -> None:
    ring = series_fixture("z2_x2_x5").ring
    orders = np.array([0, 1, 2, 3, 4, -1])
    units = np.ones((6, 4), dtype=np.int64)
    expected = [
        ring.contains(TruncatedLaurent.from_terms(f2, {o + i: 1 for i in range(4)}))
        for o in orders
    ]
    assert ring.contains_batch(orders, units).tolist() == expected


def test_to_dict_and_from_dict() -> None:
    ring = series_fixture("z2_x2_x3").ring
    data = ring.to_dict()
    assert data == {"kind": "series", "field": "F2", "conductor": 2, "slots": {"0": "F2", "1": "0"}}
    assert ring_from_dict(data) == ring
    with pytest.raises(ParseError):
        ring_from_dict({"conductor": 1})
    with pytest.raises(ParseError):
        ring_from_dict({"field": "F2", "conductor": 1, "slots": {"3": "F2"}})


@pytest.mark.parametrize(
    ("q", "slots", "conductor"),
    [
        (2, {}, 1),
        (4, {0: "<a>"}, 1),
        (2, {0: "F2", 1: "F2"}, 3),
    ],
)
def test_spec_violations(q: int, slots: dict, conductor: int) -> None:
    with pytest.raises(SpecViolationError):
        series_ring(q, slots, conductor)


def test_slot_product_violation_names_the_pair() -> None:
    with pytest.raises(SpecViolationError) as info:
        series_ring(2, {0: "F2", 1: "F2"}, 3)
    assert info.value.pair == (1, 1)


def test_ideals() -> None:
    fixture = series_fixture("z2_x2_x5")
    m = maximal_ideal(fixture.ring)
    assert m.is_maximal()
    assert m.describe() == "F2X^2 + X^4F2[[X]]"
    assert order_ideal(fixture.ring, 4) == fixture.ideal("I")
    with pytest.raises(InvalidParameterError):
        order_ideal(fixture.ring, 0)
    with pytest.raises(SpecViolationError):
        series_ideal(fixture.ring, {0: "F2"}, 1)
    with pytest.raises(SpecViolationError):
        series_ideal(fixture.ring, {1: "F2"}, 2)


def test_colon_ring() -> None:
    fixture = series_fixture("z3_z3x9_x12")
    v = colon_ring(fixture.ideal())
    assert v == series_ring(3, {0: "F3"}, 3)
    assert v.describe() == "F3 + X^3F3[[X]]"


def test_colon_of_prime_slot_ring_is_almost_valuation() -> None:
    for q in (4, 9):
        fld = coeff_field(q)
        ring = series_ring(q, {0: f"F{fld.p}", 1: f"F{fld.p}"}, 2)
        assert colon_ring(maximal_ideal(ring)) == pullback(SeriesRingSpec.power_series(fld), 1)


def test_integral_closure_is_full_power_series() -> None:
    result = integral_closure(series_fixture("z2_z2x_x2f4").ring)
    assert result.closure == SeriesRingSpec.power_series(coeff_field(4))
    assert result.to_dict() == {
        "closure": "F4[[X]]",
        "maximal_ideal": "XF4[[X]]",
        "residue_field": "F4",
    }


@pytest.mark.parametrize("name", ["z2_x2_x5", "z2_xf4", "z3_z3x9_x12", "z2_z2x2_x3f4"])
def test_closure_tail_lies_in_ring(name: str) -> None:
    ring = series_fixture(name).ring
    result = integral_closure(ring)
    field = ring.field
    assert result.closure == SeriesRingSpec.power_series(field)
    assert result.residue_field == field.name
    for a in range(1, field.q):
        for e in range(3):
            shifted = TruncatedLaurent.monomial(field, a, e + ring.conductor)
            assert ring.contains(shifted)
            assert result.closure.contains(TruncatedLaurent.monomial(field, a, e))


def test_pullback() -> None:
    f4x = series_fixture("f4_x").ring
    assert pullback(f4x, 1) == series_fixture("z2_xf4").ring
    with pytest.raises(InvalidParameterError):
        pullback(series_fixture("z2_xf4").ring, 1)
    with pytest.raises(InvalidParameterError):
        pullback(f4x, f4x.field.span([2]))
