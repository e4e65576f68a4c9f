import pytest

from nsemiprimary.config import ConfigError
from nsemiprimary.errors import (
    EXIT_BUDGET,
    EXIT_INTERNAL,
    EXIT_USAGE,
    AxiomViolationError,
    BudgetExceededError,
    InvalidParameterError,
    ParseError,
    PrecisionError,
    SpecViolationError,
    UnknownCheckError,
    classify_error,
)


@pytest.mark.parametrize(
    "exc, category, code",
    [
        (InvalidParameterError("n must be positive"), "usage", EXIT_USAGE),
        (ParseError("bad token"), "parse", EXIT_USAGE),
        (AxiomViolationError("1 = 0"), "axiom", EXIT_USAGE),
        (SpecViolationError("not closed"), "spec", EXIT_USAGE),
        (ConfigError("missing"), "config", EXIT_USAGE),
        (PrecisionError("truncated"), "precision", EXIT_BUDGET),
        (BudgetExceededError("table_order_limit", 4096, 8192), "budget", EXIT_BUDGET),
        (ValueError("plain"), "usage", EXIT_USAGE),
        (RuntimeError("bug"), "internal", EXIT_INTERNAL),
        (ZeroDivisionError("bug"), "internal", EXIT_INTERNAL),
    ],
)
def test_classify_error_categories(exc: Exception, category: str, code: int) -> None:
    info = classify_error(exc)
    assert info.category == category
    assert info.exit_code == code
    assert info.original_type == type(exc).__name__


def test_budget_error_details() -> None:
    exc = BudgetExceededError("pair_budget", 10, 99)
    assert str(exc) == "budget 'pair_budget' exceeded: needs 99, limit 10"
    assert classify_error(exc).details == {"budget": "pair_budget", "limit": 10, "required": 99}


def test_spec_violation_pair_in_details() -> None:
    info = classify_error(SpecViolationError("slots 2 and 3 not closed", pair=(2, 3)))
    assert info.details == {"pair": [2, 3]}
    assert classify_error(SpecViolationError("no pair")).details == {}


def test_unknown_check_error_message_unquoted() -> None:
    exc = UnknownCheckError("unknown check 'nope'")
    assert str(exc) == "unknown check 'nope'"
    assert isinstance(exc, KeyError)
    assert classify_error(exc).category == "usage"
