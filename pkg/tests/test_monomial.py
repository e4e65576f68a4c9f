"""Monomial ideals: operations, certificates, witness search and stand-ins."""

import pytest

from nsemiprimary.catalog import monomial_fixture
from nsemiprimary.config import Budgets
from nsemiprimary.errors import BudgetExceededError, InvalidParameterError, ParseError
from nsemiprimary.monomial import (
    CERTIFIED_FALSE,
    CERTIFIED_TRUE,
    UNKNOWN,
    MonomialIdeal,
    certify_n_semiprimary,
    default_caps,
    mono_contains,
    mono_counterexample_search,
    mono_ideal_ops,
    mono_member,
    mono_power,
    mono_primary_witness,
    mono_radical,
    radical_is_prime,
    stand_in,
)


def test_parse_minimalizes_generators() -> None:
    ideal = MonomialIdeal.parse(2, "X^2, X^2*Y, Y^3")
    assert ideal.describe() == "(X^2, Y^3)"
    assert ideal.k == 2
    assert ideal == MonomialIdeal.from_exponents(2, [(0, 3), (2, 0)])


@pytest.mark.parametrize("text", ["", "X + Y", "X^2, Q"])
def test_parse_errors(text: str) -> None:
    with pytest.raises(ParseError):
        MonomialIdeal.parse(2, text)


def test_non_prime_characteristic() -> None:
    with pytest.raises(InvalidParameterError):
        MonomialIdeal.parse(4, "X")


def test_power_and_radical() -> None:
    xy = MonomialIdeal.parse(2, "X, Y")
    assert mono_power(xy, 2).describe() == "(X^2, X*Y, Y^2)"
    assert mono_radical(MonomialIdeal.parse(2, "X*Y, Y^2")).describe() == "(Y)"
    assert radical_is_prime(MonomialIdeal.parse(2, "X^2, Y^3"))
    assert not radical_is_prime(MonomialIdeal.parse(2, "X*Y"))


def test_ideal_ops_dispatch() -> None:
    a = MonomialIdeal.parse(2, "X^2, Y^2")
    b = MonomialIdeal.parse(2, "X, Y")
    assert mono_ideal_ops("containment", a, b) is True
    assert mono_contains(b, a) is False
    assert mono_ideal_ops("power", b, 3) == mono_power(b, 3)
    product = mono_ideal_ops("product", a, b)
    assert isinstance(product, MonomialIdeal)
    assert product.describe() == "(X^3, X^2*Y, X*Y^2, Y^3)"
    with pytest.raises(InvalidParameterError):
        mono_ideal_ops("quotient", a, b)


def test_membership_reduces_coefficients() -> None:
    ideal = MonomialIdeal.parse(2, "X^2, Y^2")
    assert mono_member("X^2*Y + Y^3", ideal)
    assert mono_member("2*X*Y + X^2", ideal)
    assert not mono_member("X*Y", ideal)


@pytest.mark.parametrize(
    ("text", "n", "kind"),
    [
        ("X^2, Y^2", 1, CERTIFIED_FALSE),
        ("X^2, Y^2", 2, UNKNOWN),
        ("X^2, Y^2", 3, CERTIFIED_TRUE),
        ("X*Y, Y^2", 1, CERTIFIED_FALSE),
        ("X*Y, Y^2", 2, CERTIFIED_TRUE),
        ("X*Y, Y^3", 2, CERTIFIED_FALSE),
        ("X*Y, Y^3", 3, CERTIFIED_TRUE),
        ("X*Y", 5, CERTIFIED_FALSE),
    ],
)
def test_certificates(text: str, n: int, kind: str) -> None:
    assert certify_n_semiprimary(MonomialIdeal.parse(2, text), n).kind == kind


def test_certificate_rejects_unit_ideal() -> None:
    with pytest.raises(InvalidParameterError):
        certify_n_semiprimary(MonomialIdeal.from_exponents(2, [(0, 0)]), 2)


def test_counterexample_search_finds_first_pair() -> None:
    ideal = monomial_fixture("mono_xy_y2").ideal
    result = mono_counterexample_search(ideal, 1, 1, 1)
    assert result.found
    assert result.witness == ("X", "Y")
    assert result.to_dict()["result"] == "Witness"


def test_counterexample_search_none_found_when_certified() -> None:
    ideal = monomial_fixture("mono_xy_y2").ideal
    result = mono_counterexample_search(ideal, 2, 2, 2)
    assert not result.found
    assert result.to_dict()["result"] == "NoneFound"
    assert result.candidates > result.live


def test_counterexample_search_budget() -> None:
    ideal = MonomialIdeal.parse(3, "X^3, Y^3")
    with pytest.raises(BudgetExceededError):
        mono_counterexample_search(ideal, 3, 4, 3, Budgets(monomial_search=100))


@pytest.mark.parametrize("name", ["mono_xy_y2", "mono_xy_y3", "mono_xy_y4"])
def test_not_primary_witness(name: str) -> None:
    fixture = monomial_fixture(name)
    n = fixture.n_values[0]
    assert certify_n_semiprimary(fixture.ideal, n).kind == CERTIFIED_TRUE
    assert mono_primary_witness(fixture.ideal, n + 1, 8) == ("Y", "X")


def test_default_caps() -> None:
    assert default_caps(MonomialIdeal.parse(2, "X^2, Y^3")) == ((2, 3), True)
    assert default_caps(MonomialIdeal.parse(2, "X*Y, Y^2")) == ((2, 2), False)


def test_stand_in_exact_transport() -> None:
    si = stand_in(MonomialIdeal.parse(2, "X^2, Y^2"))
    assert si.exact
    assert si.caps == (2, 2)
    assert si.ring.order == 16
    assert si.ideal.is_zero


def test_stand_in_cap_count_checked() -> None:
    with pytest.raises(InvalidParameterError):
        stand_in(MonomialIdeal.parse(2, "X^2, Y^2"), caps=(3,))
