"""Terminal helpers for the text output of the CLI."""

from __future__ import annotations

import sys
from collections.abc import Sequence
from typing import TextIO


class Colors:
    """ANSI color codes for terminal output."""

    RESET = "\033[0m"
    BOLD = "\033[1m"
    DIM = "\033[2m"

    RED = "\033[31m"
    GREEN = "\033[32m"
    YELLOW = "\033[33m"
    BLUE = "\033[34m"
    CYAN = "\033[36m"


_COLOR_DISABLED = False


def disable_color(flag: bool = True) -> None:
    """Force plain output regardless of the terminal (``--no-color``)."""
    global _COLOR_DISABLED  # noqa: PLW0603
    _COLOR_DISABLED = flag


def _supports_color(stream: TextIO | None = None) -> bool:
    stream = stream or sys.stdout
    if _COLOR_DISABLED:
        return False
    return hasattr(stream, "isatty") and bool(stream.isatty())


def colorize(text: str, color: str, bold: bool = False, stream: TextIO | None = None) -> str:
    """Apply color to text if terminal supports it."""
    if not _supports_color(stream):
        return text
    prefix = (Colors.BOLD if bold else "") + color
    return f"{prefix}{text}{Colors.RESET}"


def print_error(message: str, stream: TextIO | None = None) -> None:
    stream = stream or sys.stderr
    print(colorize("✗", Colors.RED, bold=True, stream=stream) + " " + message, file=stream)


def print_header(message: str, stream: TextIO | None = None) -> None:
    stream = stream or sys.stdout
    print(colorize(message, Colors.CYAN, bold=True, stream=stream), file=stream)


def _color_value(value: str | int, stream: TextIO) -> str:
    text = str(value)
    lowered = text.lower()
    if lowered in ("yes", "true", "passed", "verifiedatbound", "certifiedtrue"):
        return colorize(text, Colors.GREEN, stream=stream)
    if lowered in ("no", "false", "refuted"):
        return colorize(text, Colors.RED, stream=stream)
    if lowered in ("partial", "skipped", "unknown", "∞"):
        return colorize(text, Colors.YELLOW, stream=stream)
    return text


def print_summary_box(
    title: str, items: Sequence[tuple[str, str | int]], stream: TextIO | None = None
) -> None:
    """Print a titled block of aligned key/value pairs."""
    stream = stream or sys.stdout
    width = max((len(k) for k, _ in items), default=0)
    print(colorize(title, Colors.CYAN, bold=True, stream=stream), file=stream)
    print(colorize("─" * 60, Colors.DIM, stream=stream), file=stream)
    for key, value in items:
        print(f"  {key.ljust(width)}  {_color_value(value, stream)}", file=stream)
    print(colorize("─" * 60, Colors.DIM, stream=stream), file=stream)


def print_check_status(
    check: str, status: str, details: str = "", stream: TextIO | None = None
) -> None:
    """One audit line: icon, check id, status and counts."""
    stream = stream or sys.stdout
    lowered = status.lower()
    if lowered == "passed":
        icon = colorize("✓", Colors.GREEN, bold=True, stream=stream)
    elif lowered == "refuted":
        icon = colorize("✗", Colors.RED, bold=True, stream=stream)
    else:
        icon = colorize("○", Colors.YELLOW, bold=True, stream=stream)
    line = f"{icon} {check}: {_color_value(status, stream)}"
    if details:
        line += colorize(f" ({details})", Colors.DIM, stream=stream)
    print(line, file=stream)


def print_lines(lines: Sequence[str], stream: TextIO | None = None) -> None:
    stream = stream or sys.stdout
    for line in lines:
        print(line, file=stream)


__all__ = [
    "Colors",
    "colorize",
    "disable_color",
    "print_check_status",
    "print_error",
    "print_header",
    "print_lines",
    "print_summary_box",
]
