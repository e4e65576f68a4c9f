"""Audit registry, tallies and small end-to-end runs."""

import pytest

from nsemiprimary.audit import (
    EXPECTED_TABLE,
    EXPECTED_WITNESS,
    FORALL,
    PASSED,
    REFUTED,
    SKIPPED,
    AuditReport,
    CheckResult,
    Tally,
    check_registry,
    resolve_checks,
    run_audit,
)
from nsemiprimary.catalog import corpus_generate
from nsemiprimary.concurrency import ConcurrencyConfig
from nsemiprimary.config import AuditSettings, SeriesBounds, SuiteConfig
from nsemiprimary.errors import UnknownCheckError
from nsemiprimary.locations import in_scope_refs, normalize_ref
from nsemiprimary.valuation import GROUP_TAGS

CHEAP = ["dedekind-delta", "valuation-table", "nvd-parity", "z4-x-z2", "non-primary"]


def _config(strict: bool = False) -> SuiteConfig:
    return SuiteConfig(
        series=SeriesBounds(order_bound=4, degree_bound=3),
        audit=AuditSettings(profile="small", strict=strict),
    )


def test_registry_shapes() -> None:
    registry = check_registry()
    assert len(registry) >= 40
    assert {c.shape for c in registry.values()} == {FORALL, EXPECTED_WITNESS}
    assert {c.scope for c in registry.values()} == {"finite", "monomial", "pid", "valuation", "series"}
    assert registry["delta-bar-gap"].shape == EXPECTED_WITNESS
    assert registry["radical-and-powers"].shape == FORALL


def test_resolve_checks() -> None:
    assert [c.id for c in resolve_checks(["nvd-parity", "nvd-parity", "z4-x-z2"])] == [
        "nvd-parity",
        "z4-x-z2",
    ]
    assert len(resolve_checks()) == len(check_registry())
    with pytest.raises(UnknownCheckError, match="audit --list"):
        resolve_checks(["nvd-parity", "no-such-check"])


def test_every_check_has_a_location() -> None:
    for check in check_registry().values():
        assert check.ref and check.anchor, check.id
        assert set(check.describe()) == {"id", "ref", "anchor", "scope", "shape", "statement"}


@pytest.mark.parametrize("ref", in_scope_refs())
def test_in_scope_locations_resolve(ref: str) -> None:
    selected = resolve_checks([ref])
    assert selected
    assert all(normalize_ref(c.ref) == normalize_ref(ref) for c in selected)


def test_resolve_by_alias_and_location() -> None:
    assert [c.id for c in resolve_checks(["strong-vs-plain"])] == ["strong-gap"]
    assert [c.id for c in resolve_checks(["Thm3.9"])] == ["idealization-shift"]
    shared = {c.id for c in resolve_checks(["Thm. 2.2(b)"])}
    assert {"quotient-transport", "monomial-stand-in-agreement"} <= shared
    assert [c.id for c in resolve_checks(["strong-gap", "strong-vs-plain"])] == ["strong-gap"]
    with pytest.raises(UnknownCheckError):
        resolve_checks(["Thm99.1"])


def test_expected_table_covers_every_group() -> None:
    assert set(EXPECTED_TABLE) == set(GROUP_TAGS)


def test_tally_bookkeeping() -> None:
    tally = Tally("demo")
    tally.record(True, "a")
    tally.record(False, "b", witness=[1, 2])
    tally.skip("c", "budget")
    assert (tally.tried, tally.passes) == (2, 1)
    assert tally.refutations == [{"instance": "b", "witness": [1, 2]}]
    assert tally.skips == [{"instance": "c", "reason": "budget"}]


def _result(check_id: str, tally: Tally) -> CheckResult:
    return CheckResult(check_registry()[check_id], tally)


def test_report_exit_codes() -> None:
    clean = Tally("z4-x-z2")
    clean.record(True, "z4_x_z2")
    skipped = Tally("nvd-parity")
    skipped.record(True, "n=1")
    skipped.skip("n=2", "partial search")
    assert _result("z4-x-z2", clean).status == PASSED
    assert _result("nvd-parity", skipped).status == SKIPPED
    results = [_result("z4-x-z2", clean), _result("nvd-parity", skipped)]
    manifest = {"rings": 0}
    assert AuditReport("small", 1, manifest, results).exit_code() == 0
    assert AuditReport("small", 1, manifest, results, strict=True).exit_code() == 3
    broken = Tally("non-primary")
    broken.record(False, "mono_xy_y2")
    refuted = [*results, _result("non-primary", broken)]
    assert _result("non-primary", broken).status == REFUTED
    assert AuditReport("small", 1, manifest, refuted).exit_code() == 2
    assert AuditReport("small", 1, manifest, refuted, strict=True).exit_code() == 2
    lines = AuditReport("small", 1, manifest, refuted).lines()
    assert "    refuted on mono_xy_y2" in lines
    assert lines[-1].endswith("1 refutations, 1 skips")


def test_small_audit_passes() -> None:
    corpus = corpus_generate("small")
    report = run_audit(corpus, CHEAP, _config())
    assert [r.check.id for r in report.results] == CHEAP
    assert all(r.status == PASSED for r in report.results), report.lines()
    assert report.exit_code() == 0
    assert set(report.to_dict()) == {"version", "profile", "seed", "strict", "summary", "checks", "corpus"}
    data = report.to_dict(timing=True)
    assert data["timing"]["total_metrics"] == len(CHEAP)
    assert data["timing"]["slowest"].removeprefix("audit.") in CHEAP
    assert data["summary"]["refutations"] == 0
    assert data["summary"]["checks"] == len(CHEAP)
    assert "duration_ms" in data["checks"][0]
    assert data["corpus"]["profile"] == "small"


def test_parallel_run_keeps_registry_order() -> None:
    corpus = corpus_generate("small")
    parallel = ConcurrencyConfig(enabled=True, max_workers=3)
    report = run_audit(corpus, CHEAP, _config(), concurrency=parallel)
    assert [r.check.id for r in report.results] == CHEAP
    assert report.refutations == 0


def test_strict_flag_reaches_the_report() -> None:
    report = run_audit(corpus_generate("small"), ["valuation-table"], _config(strict=True))
    assert report.strict
    assert report.to_dict()["strict"] is True
    assert report.exit_code() == 0


@pytest.mark.slow
def test_full_small_audit_has_no_refutations() -> None:
    report = run_audit(corpus_generate("small"), None, _config())
    assert report.refutations == 0, report.lines()


LOCATION_CHECKS = [
    "nvd-divisibility",
    "npvd-criterion",
    "star-condition",
    "pnvd-criterion",
    "almost-valuation-colon",
    "npvd-not-pnvd",
]


@pytest.mark.slow
def test_location_checks_pass() -> None:
    report = run_audit(corpus_generate("small"), LOCATION_CHECKS, _config())
    assert [r.check.id for r in report.results] == LOCATION_CHECKS
    assert report.refutations == 0, report.lines()
    assert all(r.tally.tried for r in report.results), report.lines()


def test_reports_are_reproducible() -> None:
    first = run_audit(corpus_generate("small", 7), CHEAP, _config()).to_dict()
    second = run_audit(corpus_generate("small", 7), CHEAP, _config()).to_dict()
    assert first == second
    parallel = ConcurrencyConfig(enabled=True, max_workers=2)
    third = run_audit(corpus_generate("small", 7), CHEAP, _config(), concurrency=parallel)
    assert third.to_dict() == first
