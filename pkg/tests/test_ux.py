"""Tests for UX helpers module."""

from __future__ import annotations

import io

from nsemiprimary.ux import (
    Colors,
    colorize,
    disable_color,
    print_check_status,
    print_error,
    print_lines,
    print_summary_box,
)


def _tty() -> io.StringIO:
    stream = io.StringIO()
    stream.isatty = lambda: True  # type: ignore[method-assign]
    return stream


def test_colorize_with_tty_support() -> None:
    result = colorize("test", Colors.RED, bold=True, stream=_tty())
    assert result == f"{Colors.BOLD}{Colors.RED}test{Colors.RESET}"


def test_plain_when_not_a_tty() -> None:
    assert colorize("test", Colors.RED, stream=io.StringIO()) == "test"


def test_no_color_flag_wins_over_tty() -> None:
    disable_color()
    assert colorize("test", Colors.GREEN, stream=_tty()) == "test"


def test_summary_box_aligns_keys() -> None:
    stream = io.StringIO()
    print_summary_box("Z12", [("order", 12), ("local", "no")], stream=stream)
    lines = stream.getvalue().splitlines()
    assert lines[0] == "Z12"
    assert "  order  12" in lines
    assert "  local  no" in lines


def test_check_status_icons() -> None:
    stream = io.StringIO()
    print_check_status("prime-implies-n-semiprimary", "passed", "tried 5", stream=stream)
    print_check_status("delta-bar-profile", "refuted", stream=stream)
    print_check_status("large-field", "skipped", stream=stream)
    lines = stream.getvalue().splitlines()
    assert lines[0] == "✓ prime-implies-n-semiprimary: passed (tried 5)"
    assert lines[1] == "✗ delta-bar-profile: refuted"
    assert lines[2].startswith("○ large-field")


def test_print_error_defaults_to_stderr(capsys) -> None:
    print_error("usage: bad ring")
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "✗ usage: bad ring" in captured.err


def test_print_lines(capsys) -> None:
    print_lines(["a", "b"])
    assert capsys.readouterr().out == "a\nb\n"
