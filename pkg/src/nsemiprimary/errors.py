"""Error taxonomy and exit-code mapping.

Every failure the library raises on purpose derives from
:class:`NSemiprimaryError`. The CLI never inspects messages to decide what
went wrong; it asks :func:`classify_error` for an :class:`ErrorInfo` and uses
its ``exit_code``.

Categories and exit codes:

- ``usage`` / ``parse`` / ``config`` / ``spec`` / ``axiom`` -> 64 (bad input)
- ``budget`` / ``precision`` -> 3 (the computation was refused, not failed)
- ``internal`` -> 1 (anything else, i.e. a bug)

Budget refusals carry the budget name, its limit and what the request would
have needed so reports can say which knob to turn.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_REFUTED = 2
EXIT_BUDGET = 3
EXIT_USAGE = 64


class NSemiprimaryError(Exception):
    category = "internal"


class InvalidParameterError(NSemiprimaryError, ValueError):
    category = "usage"


class ParseError(NSemiprimaryError, ValueError):
    category = "parse"


class UnknownCheckError(NSemiprimaryError, KeyError):
    category = "usage"

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown check"


class AxiomViolationError(NSemiprimaryError, ValueError):
    category = "axiom"


class SpecViolationError(NSemiprimaryError, ValueError):
    """A series spec breaks a closure rule; ``pair`` names the offending slots."""

    category = "spec"

    def __init__(self, message: str, pair: tuple[int, int] | None = None) -> None:
        super().__init__(message)
        self.pair = pair


class PrecisionError(NSemiprimaryError, ArithmeticError):
    category = "precision"


class BudgetExceededError(NSemiprimaryError, RuntimeError):
    category = "budget"

    def __init__(self, budget: str, limit: int, required: int, message: str | None = None) -> None:
        self.budget = budget
        self.limit = limit
        self.required = required
        super().__init__(message or f"budget '{budget}' exceeded: needs {required}, limit {limit}")


_EXIT_CODES = {
    "usage": EXIT_USAGE,
    "parse": EXIT_USAGE,
    "config": EXIT_USAGE,
    "spec": EXIT_USAGE,
    "axiom": EXIT_USAGE,
    "budget": EXIT_BUDGET,
    "precision": EXIT_BUDGET,
    "internal": EXIT_INTERNAL,
}


@dataclass
class ErrorInfo:
    category: str
    message: str
    original_type: str
    exit_code: int = EXIT_INTERNAL
    details: dict[str, Any] = field(default_factory=dict)


def classify_error(exc: BaseException) -> ErrorInfo:
    """Map an exception onto a category and CLI exit code.

    Library errors carry their category. ``ConfigError`` is recognised by name
    so this module does not import the config layer; plain ``ValueError`` from
    argument conversion counts as usage.
    """
    msg = str(exc)
    name = exc.__class__.__name__
    if isinstance(exc, NSemiprimaryError):
        category = exc.category
    elif name == "ConfigError":
        category = "config"
    elif isinstance(exc, (ValueError, KeyError)):
        category = "usage"
    else:
        category = "internal"
    details: dict[str, Any] = {}
    if isinstance(exc, BudgetExceededError):
        details = {"budget": exc.budget, "limit": exc.limit, "required": exc.required}
    elif isinstance(exc, SpecViolationError) and exc.pair is not None:
        details = {"pair": list(exc.pair)}
    return ErrorInfo(category, msg, name, _EXIT_CODES[category], details)


__all__ = [
    "EXIT_BUDGET",
    "EXIT_INTERNAL",
    "EXIT_OK",
    "EXIT_REFUTED",
    "EXIT_USAGE",
    "AxiomViolationError",
    "BudgetExceededError",
    "ErrorInfo",
    "InvalidParameterError",
    "NSemiprimaryError",
    "ParseError",
    "PrecisionError",
    "SpecViolationError",
    "UnknownCheckError",
    "classify_error",
]
