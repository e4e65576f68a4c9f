"""Ideals of valuation domains with value groups Z, Q and their rank-two sums."""

import pytest

from nsemiprimary.errors import InvalidParameterError, ParseError
from nsemiprimary.valuation import (
    FAMILY_BELOW,
    FAMILY_BETWEEN,
    FAMILY_M,
    FAMILY_OTHER,
    FAMILY_P,
    GROUP_TAGS,
    OrderedGroup,
    ValIdealDesc,
    enable_oracle,
    family_samples,
    height_one_prime,
    maximal_ideal,
    oracle_enabled,
    parse_descriptor,
    vd_contains,
    vd_delta,
    vd_example_table,
    vd_is_n_semiprimary,
    vd_member,
    vd_power,
    vd_sqrt,
)


@pytest.mark.parametrize(
    ("text", "expected"),
    [
        ("Z cut=3", "Z cut=3 nonstrict"),
        ("Z cut=5/2 strict", "Z cut=3 nonstrict"),
        ("Q cut=1/2 >", "Q cut=1/2 strict"),
        ("z+q cut=1/2,0 strict", "Z+Q cut=1,-inf nonstrict"),
        ("Q+Q cut=0,inf", "Q+Q cut=0,+inf strict"),
        ("Q+Q zero", "Q+Q zero"),
        ("Q cut=0", "Q unit"),
    ],
)
def test_descriptors_are_canonical(text: str, expected: str) -> None:
    assert parse_descriptor(text).describe() == expected


@pytest.mark.parametrize(
    ("text", "error"),
    [
        ("", ParseError),
        ("R cut=1", InvalidParameterError),
        ("Z", ParseError),
        ("Z cut=1 loose", ParseError),
        ("Z+Z cut=1", InvalidParameterError),
        ("Z cut=abc", ParseError),
        ("Z+Q cut=inf,0", InvalidParameterError),
    ],
)
def test_descriptor_errors(text: str, error: type[Exception]) -> None:
    with pytest.raises(error):
        parse_descriptor(text)


def test_groups() -> None:
    assert OrderedGroup.parse("Z ⊕ Q").tag == "Z+Q"
    assert OrderedGroup.parse("Q+Z").rank == 2
    assert set(GROUP_TAGS) >= {"Z", "Q", "Z+Z", "Q+Q"}


def test_maximal_and_height_one() -> None:
    zz = OrderedGroup.parse("Z+Z")
    assert maximal_ideal(zz).describe() == "Z+Z cut=0,1 nonstrict"
    assert height_one_prime(zz).describe() == "Z+Z cut=1,-inf nonstrict"
    with pytest.raises(InvalidParameterError):
        height_one_prime(OrderedGroup.parse("Q"))


def test_membership() -> None:
    zz = OrderedGroup.parse("Z+Z")
    p = height_one_prime(zz)
    assert vd_member(p, (1, -7))
    assert not vd_member(p, (0, 5))
    assert vd_member(maximal_ideal(zz), (0, 1))
    with pytest.raises(InvalidParameterError):
        vd_member(p, (-1, 0))
    with pytest.raises(InvalidParameterError):
        vd_member(maximal_ideal(OrderedGroup.parse("Z")), ("1/2",))


def test_power_and_radical() -> None:
    q = OrderedGroup.parse("Q")
    half = parse_descriptor("Q cut=1/2 strict")
    assert vd_power(half, 2).describe() == "Q cut=1 strict"
    assert vd_sqrt(half) == maximal_ideal(q)
    qq_m = maximal_ideal(OrderedGroup.parse("Q+Q"))
    assert vd_power(qq_m, 5) == qq_m
    below = parse_descriptor("Q+Q cut=1,0")
    assert vd_sqrt(below) == height_one_prime(OrderedGroup.parse("Q+Q"))
    with pytest.raises(InvalidParameterError):
        vd_sqrt(ValIdealDesc.unit(q))


def test_containment_requires_same_group() -> None:
    z = maximal_ideal(OrderedGroup.parse("Z"))
    q = maximal_ideal(OrderedGroup.parse("Q"))
    assert vd_contains(parse_descriptor("Z cut=4"), z)
    assert not vd_contains(z, parse_descriptor("Z cut=4"))
    with pytest.raises(InvalidParameterError):
        vd_contains(z, q)


@pytest.mark.parametrize(
    ("text", "expected"),
    [
        ("Z cut=3", 3),
        ("Q cut=0 strict", 1),
        ("Q cut=1", None),
        ("Z+Z cut=1,0 strict", 2),
        ("Z+Z cut=2,3", 3),
        ("Z+Z cut=0,2", 2),
        ("Q+Q cut=1,-inf", None),
        ("Q+Z cut=0,5 strict", 6),
    ],
)
def test_delta(text: str, expected: int | None) -> None:
    assert vd_delta(parse_descriptor(text)) == expected


def test_zero_and_unit() -> None:
    group = OrderedGroup.parse("Z")
    assert vd_is_n_semiprimary(ValIdealDesc.zero(group), 1)
    with pytest.raises(InvalidParameterError):
        vd_is_n_semiprimary(ValIdealDesc.unit(group), 1)


def test_oracle_agrees_on_samples() -> None:
    enable_oracle(True)
    assert oracle_enabled()
    assert vd_power(parse_descriptor("Q cut=1/2 strict"), 2).describe() == "Q cut=1 strict"
    assert vd_power(parse_descriptor("Z cut=2"), 3).describe() == "Z cut=6 nonstrict"
    assert vd_sqrt(parse_descriptor("Q cut=3")) == maximal_ideal(OrderedGroup.parse("Q"))
    assert vd_contains(parse_descriptor("Q cut=2"), parse_descriptor("Q cut=1"))


def test_example_tables() -> None:
    assert vd_example_table("Z").row(FAMILY_OTHER).verdict == "yes"
    assert vd_example_table("Q").row(FAMILY_OTHER).verdict == "no"
    zz = vd_example_table("Z+Z")
    assert zz.summary == "Z+Z: every proper ideal is n-semiprimary for some n"
    qq = vd_example_table("Q+Q")
    assert qq.row(FAMILY_P).verdict == "yes"
    assert qq.row(FAMILY_M).verdict == "yes"
    assert qq.row(FAMILY_BELOW).verdict == "no"
    assert qq.row(FAMILY_BETWEEN).verdict == "no"
    assert vd_example_table("Z+Q").row(FAMILY_BETWEEN).verdict == "no"
    assert vd_example_table("Q+Z").row(FAMILY_BELOW).verdict == "no"


def test_table_rows_serialize_infinity() -> None:
    data = vd_example_table("Q").to_dict()
    other = next(r for r in data["rows"] if r["family"] == FAMILY_OTHER)
    assert {s["min_n"] for s in other["samples"]} == {"inf"}
    assert other["n_semiprimary"] == other["n_powerful_semiprimary"] == "no"
    with pytest.raises(KeyError):
        vd_example_table("Q").row(FAMILY_P)


@pytest.mark.filterwarnings("error")
@pytest.mark.parametrize("tag", ["Z+Q", "Q+Z"])
def test_rank_two_oracle_raises_no_warnings(tag: str) -> None:
    enable_oracle(True)
    try:
        for desc in family_samples(OrderedGroup.parse(tag))[FAMILY_BELOW]:
            assert vd_contains(vd_power(desc, 2), desc)
    finally:
        enable_oracle(False)


@pytest.mark.parametrize("tag", ["Z+Z", "Z+Q", "Q+Z", "Q+Q"])
def test_family_samples_are_strictly_inside_their_range(tag: str) -> None:
    group = OrderedGroup.parse(tag)
    samples = family_samples(group)
    p, m = height_one_prime(group), maximal_ideal(group)
    assert samples[FAMILY_BELOW]
    for desc in samples[FAMILY_BELOW]:
        assert desc != p
        assert vd_contains(desc, p)
    for desc in samples[FAMILY_BETWEEN]:
        assert desc not in (p, m)
        assert vd_contains(p, desc) and vd_contains(desc, m)


def test_table_below_row_omits_height_one_prime() -> None:
    table = vd_example_table("Z+Q")
    p = height_one_prime(OrderedGroup.parse("Z+Q")).describe()
    assert p not in [name for name, _ in table.row(FAMILY_BELOW).samples]
    assert table.row(FAMILY_BELOW).verdict == "yes"
