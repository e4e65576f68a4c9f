"""Decision procedures for n-semiprimary and related ideal classes in finite rings."""

import pytest

from nsemiprimary.catalog import ring_fixture
from nsemiprimary.classify import (
    chain_product,
    classify_ideal,
    classify_ring,
    delta,
    format_n,
    is_maximal,
    is_n_absorbing,
    is_n_divided_prime,
    is_n_primary,
    is_n_semiprimary,
    is_prime,
    is_radical_ideal,
    is_strongly_n_semiprimary,
    json_n,
)
from nsemiprimary.concurrency import ConcurrencyConfig
from nsemiprimary.errors import InvalidParameterError
from nsemiprimary.rings import ideal_generated, mk_product, mk_zn, unit_ideal, zero_ideal


def _ideal(ring, *gens: str):
    return ideal_generated(ring, [ring.parse_element(g) for g in gens])


def test_product_ideal_is_two_semiprimary_not_prime() -> None:
    fixture = ring_fixture("z4_x_z2")
    ring = fixture.ring()
    ideal = fixture.ideal(ring, "I")
    first = is_n_semiprimary(ring, ideal, 1)
    assert first.holds is False
    assert first.witness == ("(2,0)", "(2,0)")
    assert is_n_semiprimary(ring, ideal, 2).holds is True
    assert not is_prime(ring, ideal)
    assert not ring.nilradical().issubset(ideal)
    result = delta(ring, ideal)
    assert result.delta == 2
    assert result.radical_prime
    assert result.bound == 2


@pytest.mark.parametrize(
    "n, gen, expected",
    [
        (8, "0", 3),
        (27, "0", 3),
        (12, "4", 2),
        (36, "4", 2),
        (9, "3", 1),
        (36, "6", None),
        (12, "0", None),
    ],
)
def test_delta_in_integer_quotients(n: int, gen: str, expected: int | None) -> None:
    ring = mk_zn(n)
    assert delta(ring, _ideal(ring, gen)).delta == expected


def test_delta_is_scheduling_independent() -> None:
    ring = mk_zn(64)
    serial = is_n_semiprimary(ring, zero_ideal(ring), 2)
    pooled = is_n_semiprimary(
        ring, zero_ideal(ring), 2, config=ConcurrencyConfig(enabled=True, max_workers=4)
    )
    assert serial == pooled
    assert delta(ring, zero_ideal(ring)).delta == 6


def test_unit_ideal_and_bad_n_rejected() -> None:
    ring = mk_zn(12)
    with pytest.raises(InvalidParameterError):
        is_n_semiprimary(ring, unit_ideal(ring), 1)
    with pytest.raises(InvalidParameterError):
        is_n_semiprimary(ring, zero_ideal(ring), 0)
    with pytest.raises(InvalidParameterError):
        is_n_semiprimary(ring, zero_ideal(mk_zn(12)), 1)


def test_prime_and_maximal_coincide() -> None:
    z12 = mk_zn(12)
    assert is_prime(z12, _ideal(z12, "2"))
    assert is_maximal(z12, _ideal(z12, "3"))
    assert not is_prime(z12, _ideal(z12, "6"))
    z5 = mk_zn(5)
    assert is_prime(z5, zero_ideal(z5))


def test_radical_ideal_flag() -> None:
    z12 = mk_zn(12)
    assert is_radical_ideal(z12, _ideal(z12, "6"))
    assert not is_radical_ideal(z12, _ideal(z12, "4"))


def test_n_primary_thresholds() -> None:
    z8 = mk_zn(8)
    zero = zero_ideal(z8)
    assert is_n_primary(z8, zero, 1).holds is False
    assert is_n_primary(z8, zero, 2).holds is False
    assert is_n_primary(z8, zero, 3).holds is True
    z36 = mk_zn(36)
    assert is_n_primary(z36, _ideal(z36, "6"), 5).holds is False


def test_n_absorbing() -> None:
    z8 = mk_zn(8)
    zero = zero_ideal(z8)
    two = is_n_absorbing(z8, zero, 2)
    assert two.holds is False
    assert len(two.witness) == 3
    assert is_n_absorbing(z8, zero, 3).holds is True
    z36 = mk_zn(36)
    assert is_n_absorbing(z36, _ideal(z36, "6"), 2).holds is True
    assert is_n_absorbing(z36, _ideal(z36, "6"), 1).holds is False


def test_strongly_n_semiprimary() -> None:
    z8 = mk_zn(8)
    weak = is_strongly_n_semiprimary(z8, zero_ideal(z8), 1)
    assert weak.holds is False
    assert weak.j is not None and weak.k is not None
    assert set(weak.to_dict()["witness"]) == {"J", "K", "J^n", "K^n"}
    assert is_strongly_n_semiprimary(z8, zero_ideal(z8), 3).holds is True


def test_poly_stand_in_separates_classes() -> None:
    fixture = ring_fixture("poly_x2_y2_caps44")
    ring = fixture.ring()
    ideal = fixture.ideal(ring, "I")
    assert is_n_semiprimary(ring, ideal, 2).holds is True
    assert is_n_absorbing(ring, ideal, 2).holds is False
    strong = is_strongly_n_semiprimary(ring, ideal, 2)
    assert strong.holds is False
    assert delta(ring, ideal).delta == 2


def test_n_divided_prime() -> None:
    z4 = mk_zn(4)
    assert is_n_divided_prime(z4, _ideal(z4, "2"), 1).holds is True
    z6 = mk_zn(6)
    result = is_n_divided_prime(z6, _ideal(z6, "2"), 1)
    assert result.holds is False
    assert result.witness[0] in {"1", "3", "5"}
    with pytest.raises(InvalidParameterError):
        is_n_divided_prime(z6, zero_ideal(z6), 1)


def test_chain_product() -> None:
    z8 = mk_zn(8)
    two = _ideal(z8, "2")
    assert chain_product([two], [2]) == _ideal(z8, "4")
    assert chain_product([two, two], [1, 2]).is_zero
    with pytest.raises(InvalidParameterError):
        chain_product([two], [1, 2])


def test_classify_ideal_report() -> None:
    z12 = mk_zn(12)
    report = classify_ideal(z12, _ideal(z12, "6"), n=2)
    assert not report.semiprimary
    assert report.delta is None
    assert report.radical
    assert "semiprimary: no; delta: ∞" in report.lines()
    assert report.n_semiprimary is not None and report.n_semiprimary.holds is False
    data = report.to_dict()
    assert data["delta"] == "inf"
    assert data["n"] == 2
    assert "radical not prime" in report.notes


def test_classify_primary_ideal() -> None:
    z8 = mk_zn(8)
    report = classify_ideal(z8, zero_ideal(z8))
    assert report.primary
    assert report.semiprimary
    assert report.n_primary == 3
    assert report.delta == 3
    assert report.radical_ideal == "(2)"
    assert "not prime" in report.notes
    assert "not radical" in report.notes


def test_classify_ring() -> None:
    z12 = classify_ring(mk_zn(12))
    assert (z12.order, z12.characteristic, z12.units, z12.nilradical_size) == (12, 12, 4, 2)
    assert z12.dim0 and not z12.vnr and not z12.local
    assert not z12.n_semiprimary_implies_prime
    z6 = classify_ring(mk_product(mk_zn(2), mk_zn(3)))
    assert z6.vnr and z6.reduced and z6.n_semiprimary_implies_prime
    assert z6.to_dict()["order"] == 6


def test_infinity_rendering() -> None:
    assert format_n(None) == "∞"
    assert format_n(3) == "3"
    assert json_n(None) == "inf"
    assert json_n(2) == 2
