import json
from pathlib import Path

import pytest

from nsemiprimary.catalog import exported_names, fixture_data
from nsemiprimary.schema_registry import get_schema_descriptor
from nsemiprimary.schemas import get_schemas, validate_document, validation_available


def test_schema_registry_contains_expected_entries() -> None:
    names = ("ring_spec", "series_spec", "fixture", "audit_report")
    descriptors = [get_schema_descriptor(name) for name in names]
    assert [d.name for d in descriptors] == list(names)
    assert get_schema_descriptor("fixture").filename == "fixture.schema.json"
    assert all(d.version.isdigit() for d in descriptors)


def test_unknown_descriptor_raises() -> None:
    with pytest.raises(KeyError):
        get_schema_descriptor("summary")


def test_schemas_carry_versions() -> None:
    schemas = get_schemas()
    assert set(schemas) == {"ring_spec", "series_spec", "fixture", "audit_report"}
    for name, schema in schemas.items():
        assert schema["$schema"].startswith("http://json-schema.org/draft-07")
        assert f"v{get_schema_descriptor(name).version}" in schema["$comment"]


def test_validate_unknown_kind() -> None:
    with pytest.raises(KeyError):
        validate_document("export", {})


@pytest.mark.skipif(not validation_available(), reason="jsonschema not installed")
def test_shipped_fixtures_validate(fixtures_dir: Path) -> None:
    for name in exported_names():
        data = json.loads((fixtures_dir / f"{name}.json").read_text(encoding="utf-8"))
        assert validate_document("fixture", data) == [], name
        assert validate_document("fixture", fixture_data(name)) == []


@pytest.mark.skipif(not validation_available(), reason="jsonschema not installed")
def test_invalid_documents_report_paths() -> None:
    errors = validate_document("series_spec", {"field": "F2", "conductor": 5, "slots": {"x": "1"}})
    assert errors and errors[0].startswith("slots")
    assert validate_document("ring_spec", {"kind": "zn", "n": 12}) == []
    assert validate_document("ring_spec", {"kind": "zn", "n": 1}) != []
    assert validate_document("fixture", {"kind": "monomial", "name": "m"}) != []
    assert validate_document("fixture", {"kind": "valuation", "name": "v", "groups": ["Z+R"]}) != []
