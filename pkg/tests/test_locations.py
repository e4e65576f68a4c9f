import pytest

from nsemiprimary.catalog import fixture_names
from nsemiprimary.config import ConfigError
from nsemiprimary.locations import (
    check_aliases,
    check_location,
    fixture_aliases,
    in_scope_refs,
    location_table,
    normalize_ref,
    parse_table,
)


@pytest.mark.parametrize(
    "text",
    ["Thm. 2.2(b)", "thm2.2b", "Thm 2.2 (b)", " THM.2.2B "],
)
def test_normalize_ref_ignores_spacing_case_and_punctuation(text: str) -> None:
    assert normalize_ref(text) == "thm2.2b"


def test_normalize_ref_keeps_the_numbering_dot() -> None:
    assert normalize_ref("Ex.4.21c") == "ex4.21c"
    assert normalize_ref("Cor4.14") != normalize_ref("Cor4.1")


def test_shipped_table_loads() -> None:
    table = location_table()
    assert table.checks["strong-gap"].ref == "Ex2.13"
    assert check_location("idealization-shift").ref == "Thm3.9"
    assert check_aliases()["strong-vs-plain"] == "strong-gap"
    assert "Thm5.4a" in in_scope_refs()


def test_fixture_aliases_point_at_catalog_entries() -> None:
    names = set(fixture_names())
    aliases = fixture_aliases()
    assert aliases["ex4_7"] == "z2_x2_x5"
    assert set(aliases.values()) <= names
    assert not set(aliases) & names


def test_unknown_check_location_raises() -> None:
    with pytest.raises(ConfigError, match="no location"):
        check_location("no-such-check")


@pytest.mark.parametrize(
    ("data", "message"),
    [
        ([], "must hold a mapping"),
        ({"checks": []}, "'checks' must be a mapping"),
        ({"checks": {"a": {"ref": "Thm1"}}}, "needs a ref and an anchor"),
        ({"checks": {}, "aliases": {"b": "a"}}, "unknown check 'a'"),
        ({"checks": {}, "in_scope": "Thm1"}, "'in_scope' must be a list"),
    ],
)
def test_parse_table_rejects_bad_data(data: object, message: str) -> None:
    with pytest.raises(ConfigError, match=message):
        parse_table(data)


def test_parse_table_defaults_to_empty_sections() -> None:
    table = parse_table({"checks": {"a": {"ref": "Thm1", "anchor": "x"}}})
    assert table.aliases == {}
    assert table.fixtures == {}
    assert table.in_scope == ()
