"""Shorthand ring specs, ideal specs and fixture documents."""

import json

import pytest

from nsemiprimary.catalog import get_fixture
from nsemiprimary.errors import InvalidParameterError, ParseError
from nsemiprimary.specs import (
    MonomialFixture,
    RingFixture,
    SeriesFixture,
    dump_fixture,
    fixture_from_dict,
    load_fixture,
    load_series,
    normalize_ring_spec,
    parse_ideal,
    parse_ring,
    read_json,
    ring_spec_from_text,
    ring_spec_text,
    split_top_level,
)


def test_split_top_level() -> None:
    assert split_top_level("(0,1), 2,,3") == ["(0,1)", "2", "3"]
    with pytest.raises(ParseError):
        split_top_level("(0,1")
    with pytest.raises(ParseError):
        split_top_level("0,1)")


@pytest.mark.parametrize(
    "text",
    ["zn:12", "zn:4*zn:2", "poly:2:4,4:X^2*Y^2", "zn:8(+)4", "zn:4(+)R", "zn:4(+)2*zn:2"],
)
def test_shorthand_round_trips_through_text(text: str) -> None:
    spec = ring_spec_from_text(text)
    assert ring_spec_text(spec) == text
    assert ring_spec_from_text(ring_spec_text(spec)) == spec


def test_product_binds_loosest() -> None:
    spec = ring_spec_from_text("zn:4(+)2*zn:2")
    assert spec["kind"] == "product"
    assert spec["factors"][0]["kind"] == "idealization"
    assert spec["factors"][1] == {"kind": "zn", "n": 2}


def test_poly_spec_fields() -> None:
    spec = ring_spec_from_text("poly:3:2,3")
    assert spec == {"kind": "poly_quotient", "p": 3, "caps": [2, 3], "extra": []}
    assert parse_ring("poly:3:2,3").order == 3**6


@pytest.mark.parametrize("text", ["", "  ", "ring:5", "zn:x", "poly:2", "poly:2:2:X:Y", "zn:4(+)q"])
def test_bad_shorthand(text: str) -> None:
    with pytest.raises(ParseError):
        ring_spec_from_text(text)


def test_normalize_ring_spec() -> None:
    assert normalize_ring_spec({"kind": "zn", "n": "9"}) == {"kind": "zn", "n": 9}
    assert normalize_ring_spec("zn:9") == {"kind": "zn", "n": 9}
    with pytest.raises(ParseError, match="two factors"):
        normalize_ring_spec({"kind": "product", "factors": ["zn:2"]})
    with pytest.raises(ParseError, match="missing key"):
        normalize_ring_spec({"kind": "zn"})
    with pytest.raises(ParseError, match="unknown ring kind"):
        normalize_ring_spec({"kind": "field", "q": 4})
    with pytest.raises(ParseError):
        normalize_ring_spec(12)


def test_table_module_spec() -> None:
    spec = normalize_ring_spec(
        {"kind": "idealization", "ring": "zn:2", "module": {"orders": [2], "action": [[0], [1]]}}
    )
    assert spec["module"]["kind"] == "table"
    assert ring_spec_text(spec) == "zn:2(+)M[2]"
    with pytest.raises(ParseError, match="module table missing key"):
        normalize_ring_spec({"kind": "idealization", "ring": "zn:2", "module": {"kind": "table"}})


def test_parse_ideal_forms() -> None:
    ring = parse_ring("zn:12")
    assert parse_ideal(ring, "zero").is_zero
    assert parse_ideal(ring, "(0)").is_zero
    assert parse_ideal(ring, "nil") == ring.nilradical()
    assert parse_ideal(ring, "gen:4, 6") == parse_ideal(ring, "gen:2")
    for bad in ("6", "gen:", "gen: ,"):
        with pytest.raises(ParseError):
            parse_ideal(ring, bad)


def test_ring_spec_from_json_file(tmp_path, fixtures_dir) -> None:
    assert ring_spec_from_text(str(fixtures_dir / "z4_x_z2.json")) == ring_spec_from_text("zn:4*zn:2")
    plain = tmp_path / "ring.json"
    plain.write_text(json.dumps({"kind": "zn", "n": 10}), encoding="utf-8")
    assert ring_spec_from_text(f"file:{plain}") == {"kind": "zn", "n": 10}


def test_read_json_errors(tmp_path) -> None:
    with pytest.raises(ParseError, match="spec file not found"):
        read_json(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{", encoding="utf-8")
    with pytest.raises(ParseError, match="invalid JSON"):
        read_json(broken)


def test_fixture_kinds(fixtures_dir) -> None:
    ring_fix = load_fixture(fixtures_dir / "z4_x_z2.json")
    assert isinstance(ring_fix, RingFixture)
    ring = ring_fix.ring()
    assert ring_fix.ideal(ring).describe() == "((0,1))"
    with pytest.raises(InvalidParameterError):
        ring_fix.ideal(ring, "J")
    series = load_fixture(fixtures_dir / "z2_x2_x5.json")
    assert isinstance(series, SeriesFixture)
    assert series.ideal().is_maximal()
    with pytest.raises(InvalidParameterError):
        series.ideal("J")
    mono = load_fixture(fixtures_dir / "mono_xy_y3.json")
    assert isinstance(mono, MonomialFixture)
    assert mono.n_values == (3,)


def test_load_fixture_names_from_stem(tmp_path) -> None:
    target = tmp_path / "cusp.json"
    target.write_text(
        json.dumps({"kind": "series", "field": "F2", "conductor": 2, "slots": {"0": "F2"}}),
        encoding="utf-8",
    )
    assert load_fixture(target).name == "cusp"
    assert load_series(target).name == "cusp"


def test_load_series_rejects_other_kinds(fixtures_dir) -> None:
    with pytest.raises(ParseError, match="does not describe a series ring"):
        load_series(fixtures_dir / "mono_xy_y2.json")


def test_fixture_from_dict_errors() -> None:
    with pytest.raises(ParseError):
        fixture_from_dict([1, 2])
    with pytest.raises(ParseError, match="unknown fixture kind"):
        fixture_from_dict({"kind": "matrix"})
    with pytest.raises(ParseError, match="monomial fixture missing key"):
        fixture_from_dict({"kind": "monomial", "p": 2})
    with pytest.raises(ParseError):
        fixture_from_dict(
            {"kind": "series", "field": "F2", "conductor": 2, "slots": {"0": "F2"}, "ideals": {"I": 3}}
        )


@pytest.mark.parametrize("name", ["z36_ideal_6", "z2_x2_x5", "mono_xy_y4"])
def test_dump_fixture_reloads(name: str) -> None:
    fixture = get_fixture(name)
    text = dump_fixture(fixture)
    assert text.endswith("\n")
    assert fixture_from_dict(json.loads(text), name).to_dict() == fixture.to_dict()
