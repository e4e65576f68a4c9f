"""nsemiprimary - n-semiprimary ideals over finite rings, principal ideal
domains, monomial ideals, valuation domains and subrings of F_q[[X]].

High-level API::

    from nsemiprimary.specs import parse_ring, parse_ideal
    from nsemiprimary.classify import classify_ideal

    ring = parse_ring("zn:12")
    report = classify_ideal(ring, parse_ideal(ring, "gen:6"))
    print("\\n".join(report.lines()))

The CLI (``nsemiprimary``) wraps the same functions; ``nsemiprimary audit``
runs the quantified self-checks over a seeded corpus.
"""

from __future__ import annotations

# Keep in sync with pyproject.toml
__version__ = "0.3.0"

__all__ = ["__version__"]
