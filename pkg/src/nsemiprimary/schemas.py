"""JSON Schemas for the document formats nsemiprimary reads and writes.

Schemas fix the top-level structure and the fields the loaders require; nested
payloads such as verdict witnesses stay open.
"""

from __future__ import annotations

from typing import Any

from .logging import get_logger
from .schema_registry import get_schema_descriptor
from .valuation import GROUP_TAGS

# Optional validation dependency (module-level import for linting)
Draft7Validator: Any | None
try:
    from jsonschema import Draft7Validator as _Draft7Validator
except Exception:  # pragma: no cover - optional dependency
    Draft7Validator = None
else:
    Draft7Validator = _Draft7Validator

SCHEMA_KEY = "$schema"
SCHEMA_URL = "http://json-schema.org/draft-07/schema#"

_SLOT = {
    "oneOf": [
        {"type": "string"},
        {"type": "array", "items": {"type": "string"}},
    ]
}

_MODULE = {
    "type": "object",
    "required": ["kind"],
    "properties": {
        "kind": {"enum": ["natural", "regular", "table"]},
        "d": {"type": "integer", "minimum": 1},
        "orders": {"type": "array", "items": {"type": "integer", "minimum": 2}},
        "action": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
    },
}


def _ring_spec() -> dict[str, Any]:
    ref = {"$ref": "#/definitions/ring"}
    ring = {
        "type": "object",
        "required": ["kind"],
        "oneOf": [
            {
                "properties": {"kind": {"const": "zn"}, "n": {"type": "integer", "minimum": 2}},
                "required": ["n"],
            },
            {
                "properties": {
                    "kind": {"const": "product"},
                    "factors": {"type": "array", "items": ref, "minItems": 2},
                },
                "required": ["factors"],
            },
            {
                "properties": {
                    "kind": {"const": "poly_quotient"},
                    "p": {"type": "integer", "minimum": 2},
                    "caps": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                    "extra": {"type": "array", "items": {"type": "string"}},
                },
                "required": ["p", "caps"],
            },
            {
                "properties": {
                    "kind": {"const": "idealization"},
                    "ring": ref,
                    "module": _MODULE,
                },
                "required": ["ring", "module"],
            },
        ],
    }
    return ring


def _series_spec() -> dict[str, Any]:
    return {
        "type": "object",
        "required": ["field", "conductor", "slots"],
        "properties": {
            "kind": {"const": "series"},
            "field": {"type": "string", "pattern": "^F[0-9]+$"},
            "conductor": {"type": "integer", "minimum": 0},
            "slots": {
                "type": "object",
                "patternProperties": {"^[0-9]+$": _SLOT},
                "additionalProperties": False,
            },
        },
    }


def get_schemas() -> dict[str, Any]:
    """Return a mapping of schema name -> JSON Schema dictionary."""
    ring_descriptor = get_schema_descriptor("ring_spec")
    ring_schema: dict[str, Any] = {
        SCHEMA_KEY: SCHEMA_URL,
        "$comment": f"nsemiprimary ring spec schema v{ring_descriptor.version}",
        "title": "RingSpec",
        "definitions": {"ring": _ring_spec()},
        "$ref": "#/definitions/ring",
    }

    series_descriptor = get_schema_descriptor("series_spec")
    series_schema: dict[str, Any] = {
        SCHEMA_KEY: SCHEMA_URL,
        "$comment": f"nsemiprimary series spec schema v{series_descriptor.version}",
        "title": "SeriesSpec",
        **_series_spec(),
    }

    fixture_descriptor = get_schema_descriptor("fixture")
    series_ideal = {
        "type": "object",
        "oneOf": [
            {"required": ["order"], "properties": {"order": {"type": "integer", "minimum": 1}}},
            {"required": ["conductor", "slots"]},
        ],
    }
    fixture_schema: dict[str, Any] = {
        SCHEMA_KEY: SCHEMA_URL,
        "$comment": f"nsemiprimary fixture schema v{fixture_descriptor.version}",
        "title": "Fixture",
        "type": "object",
        "required": ["kind", "name"],
        "definitions": {"ring": _ring_spec()},
        "properties": {
            "kind": {"enum": ["ring", "series", "monomial", "valuation"]},
            "name": {"type": "string", "minLength": 1},
            "note": {"type": "string"},
        },
        "allOf": [
            {
                "if": {"properties": {"kind": {"const": "ring"}}},
                "then": {
                    "required": ["ring", "ideals"],
                    "properties": {
                        "ring": {"$ref": "#/definitions/ring"},
                        "ideals": {"type": "object", "additionalProperties": {"type": "string"}},
                    },
                },
            },
            {
                "if": {"properties": {"kind": {"const": "series"}}},
                "then": {
                    **_series_spec(),
                    "properties": {
                        **_series_spec()["properties"],
                        "ideals": {"type": "object", "additionalProperties": series_ideal},
                    },
                },
            },
            {
                "if": {"properties": {"kind": {"const": "monomial"}}},
                "then": {
                    "required": ["p", "ideal"],
                    "properties": {
                        "p": {"type": "integer", "minimum": 2},
                        "ideal": {"type": "string"},
                        "n": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                    },
                },
            },
            {
                "if": {"properties": {"kind": {"const": "valuation"}}},
                "then": {
                    "required": ["groups"],
                    "properties": {
                        "groups": {
                            "type": "array",
                            "minItems": 1,
                            "items": {"enum": list(GROUP_TAGS)},
                        },
                    },
                },
            },
        ],
    }

    report_descriptor = get_schema_descriptor("audit_report")
    report_schema: dict[str, Any] = {
        SCHEMA_KEY: SCHEMA_URL,
        "$comment": f"nsemiprimary audit report schema v{report_descriptor.version}",
        "title": "AuditReport",
        "type": "object",
        "required": ["version", "profile", "seed", "summary", "checks", "corpus"],
        "properties": {
            "version": {"type": "string"},
            "profile": {"enum": ["small", "default", "large"]},
            "seed": {"type": "integer"},
            "strict": {"type": "boolean"},
            "summary": {
                "type": "object",
                "required": ["checks", "tried", "refutations", "skips"],
            },
            "checks": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["id", "statement", "status", "tried", "passes", "refutations", "skips"],
                    "properties": {
                        "id": {"type": "string"},
                        "statement": {"type": "string"},
                        "ref": {"type": "string"},
                        "anchor": {"type": "string"},
                        "scope": {"type": "string"},
                        "shape": {"enum": ["forall", "expected-witness"]},
                        "status": {"enum": ["passed", "refuted", "skipped"]},
                        "tried": {"type": "integer", "minimum": 0},
                        "passes": {"type": "integer", "minimum": 0},
                        "refutations": {"type": "array", "items": {"type": "object"}},
                        "skips": {"type": "array", "items": {"type": "object"}},
                        "duration_ms": {"type": "number"},
                    },
                },
            },
            "corpus": {"type": "object", "required": ["profile", "seed", "rings", "items"]},
            "timing": {"type": "object"},
        },
    }

    return {
        "ring_spec": ring_schema,
        "series_spec": series_schema,
        "fixture": fixture_schema,
        "audit_report": report_schema,
    }


def validation_available() -> bool:
    return Draft7Validator is not None


def validate_document(kind: str, data: Any) -> list[str]:
    """Error messages for *data* against schema *kind*; empty when valid.

    Without jsonschema installed nothing is checked and the list is empty.
    """
    schemas = get_schemas()
    if kind not in schemas:
        raise KeyError(f"Unknown schema '{kind}'")
    if Draft7Validator is None:
        get_logger().debug("jsonschema not installed; skipping validation", schema=kind)
        return []
    validator = Draft7Validator(schemas[kind])
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    return [
        f"{'/'.join(str(p) for p in e.absolute_path) or '<root>'}: {e.message}" for e in errors
    ]


__all__ = [
    "SCHEMA_KEY",
    "SCHEMA_URL",
    "get_schemas",
    "validate_document",
    "validation_available",
]
