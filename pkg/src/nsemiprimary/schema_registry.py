"""Central schema registry with version metadata and filenames."""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class SchemaDescriptor:
    """Describes a JSON document format read or written by nsemiprimary."""

    name: str
    version: str
    filename: str
    description: str


_REGISTRY: dict[str, SchemaDescriptor] = {
    "ring_spec": SchemaDescriptor(
        name="ring_spec",
        version="1",
        filename="ring_spec.schema.json",
        description="Canonical finite ring spec: zn, product, poly_quotient or idealization.",
    ),
    "series_spec": SchemaDescriptor(
        name="series_spec",
        version="1",
        filename="series_spec.schema.json",
        description="Subring of F_q[[X]] given by its field, conductor and slot subspaces.",
    ),
    "fixture": SchemaDescriptor(
        name="fixture",
        version="1",
        filename="fixture.schema.json",
        description="Named fixture shipped under fixtures/: a ring, series or monomial example.",
    ),
    "audit_report": SchemaDescriptor(
        name="audit_report",
        version="1",
        filename="audit_report.schema.json",
        description="Structured output of 'nsemiprimary audit --json'.",
    ),
}


def get_schema_descriptor(name: str) -> SchemaDescriptor:
    try:
        descriptor = _REGISTRY[name]
    except KeyError as exc:
        raise KeyError(f"Unknown schema '{name}'") from exc
    return replace(descriptor)


__all__ = [
    "SchemaDescriptor",
    "get_schema_descriptor",
]
