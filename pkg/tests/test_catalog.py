"""Named fixtures and the seeded audit corpus."""

import json

import pytest

from nsemiprimary.catalog import (
    corpus_generate,
    exported_names,
    fixture_data,
    fixture_names,
    gap_ring,
    get_fixture,
    monomial_fixture,
    prime_slots_ring,
    ring_fixture,
    series_fixture,
    valuation_fixture,
)
from nsemiprimary.errors import InvalidParameterError, ParseError
from nsemiprimary.fields import coeff_field
from nsemiprimary.specs import fixture_from_dict


def test_exported_fixtures_match_catalog(fixtures_dir) -> None:
    on_disk = {p.stem for p in fixtures_dir.glob("*.json")}
    assert on_disk == set(exported_names())
    for name in exported_names():
        data = json.loads((fixtures_dir / f"{name}.json").read_text(encoding="utf-8"))
        assert data == fixture_data(name), name


def test_every_fixture_loads() -> None:
    for name in exported_names():
        assert get_fixture(name).name == name


def test_kind_specific_accessors() -> None:
    assert ring_fixture("z36_ideal_6").ring().order == 36
    assert monomial_fixture("mono_x3_y3_p3").ideal.p == 3
    assert series_fixture("f4_x").ring.describe() == "F4[[X]]"
    with pytest.raises(InvalidParameterError):
        series_fixture("z36_ideal_6")
    with pytest.raises(InvalidParameterError):
        ring_fixture("mono_xy_y2")
    with pytest.raises(InvalidParameterError):
        monomial_fixture("f4_x")
    with pytest.raises(InvalidParameterError, match="unknown fixture"):
        fixture_data("nope")


def test_location_aliases_resolve_to_their_targets() -> None:
    assert set(fixture_names()) < set(exported_names())
    alias = fixture_data("ex4_7")
    assert alias["name"] == "ex4_7"
    assert {**alias, "name": "z2_x2_x5"} == fixture_data("z2_x2_x5")
    assert series_fixture("ex4_7").ring == series_fixture("z2_x2_x5").ring
    assert series_fixture("ex5_6").ring == series_fixture("z2_z2x2_x3f4").ring
    assert ring_fixture("ex2_13").spec == ring_fixture("poly_x2_y2_caps44").spec
    assert monomial_fixture("ex2_11").ideal.describe() == monomial_fixture("mono_xy_y2").ideal.describe()
    assert valuation_fixture("ex3_7").tags == valuation_fixture("valuation_groups").tags


def test_valuation_fixture_lists_every_group() -> None:
    fixture = valuation_fixture("valuation_groups")
    assert fixture.tags == ("Z", "Q", "Z+Z", "Q+Q", "Z+Q", "Q+Z")
    assert fixture.to_dict() == fixture_data("valuation_groups")
    with pytest.raises(InvalidParameterError):
        valuation_fixture("f4_x")


@pytest.mark.parametrize(
    "data",
    [
        {"kind": "valuation", "name": "v"},
        {"kind": "valuation", "name": "v", "groups": []},
        {"kind": "valuation", "name": "v", "groups": ["Z+Z+Z"]},
    ],
)
def test_bad_valuation_fixture(data: dict) -> None:
    with pytest.raises(ParseError):
        fixture_from_dict(data)


def test_ring_families() -> None:
    assert prime_slots_ring(coeff_field(4)) == series_fixture("z2_z2x_x2f4").ring
    assert gap_ring(coeff_field(2), 3) == series_fixture("z2_x3_x4_x5").ring
    assert gap_ring(coeff_field(2), 4) == series_fixture("z2_x4_x5_x6_x7").ring


def test_small_corpus_ignores_seed() -> None:
    a = corpus_generate("small", seed=1)
    b = corpus_generate("small", seed=2)
    assert [i.name for i in a.items] == [i.name for i in b.items]
    names = [i.name for i in a.rings()]
    assert "zn:12" in names
    assert "zn:2*zn:8" in names
    assert "zn:4(+)R" in names
    assert len(names) == len(set(names))


def test_default_corpus_is_seeded() -> None:
    a = corpus_generate("default", seed=7)
    again = corpus_generate("default", seed=7)
    other = corpus_generate("default", seed=8)
    assert a.manifest() == again.manifest()
    assert [i.name for i in a.items] != [i.name for i in other.items]


def test_corpus_manifest_and_fixtures() -> None:
    corpus = corpus_generate("small")
    manifest = corpus.manifest()
    assert manifest["profile"] == "small"
    assert manifest["rings"] == sum(1 for i in corpus.items if i.kind == "ring")
    assert corpus.fixtures() == fixture_names()
    fixtures = list(corpus.by_source("fixture"))
    assert {i.kind for i in fixtures} == {"ring", "monomial", "series", "valuation"}
    assert not {i.name for i in fixtures} & set(exported_names()[len(fixture_names()):])


def test_invalid_profile() -> None:
    with pytest.raises(InvalidParameterError):
        corpus_generate("huge")
