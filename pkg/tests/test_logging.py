import json
import logging

import pytest

from nsemiprimary.logging import JSONFormatter, StructuredLogger, configure_logging, get_logger


def _lines(text: str) -> list[str]:
    return [line for line in text.strip().split("\n") if line]


def test_json_logger_writes_to_stderr_and_dedupes(capsys) -> None:
    logger = StructuredLogger(name="nsemiprimary.test", json_logging=True, level="INFO")
    logger.log_operation("classify", ring="Z12", n=2)
    logger.log_operation("classify", ring="Z12", n=2)

    captured = capsys.readouterr()
    assert captured.out == ""
    lines = _lines(captured.err)
    assert len(lines) == 1
    data = json.loads(lines[0])
    assert data["level"] == "INFO"
    assert data["operation"] == "classify"
    assert data["ring"] == "Z12"
    assert data["n"] == 2
    assert "timestamp" in data


def test_text_logger_does_not_dedupe(capsys) -> None:
    logger = StructuredLogger(name="nsemiprimary.test", json_logging=False, level="INFO")
    logger.log_operation("audit")
    logger.log_operation("audit")
    err = capsys.readouterr().err
    assert err.count("Operation: audit") == 2


def test_level_filters_info(capsys) -> None:
    logger = StructuredLogger(name="nsemiprimary.test", json_logging=True, level="WARNING")
    logger.log_operation("quiet")
    logger.log_budget("pair_budget", 10, 20, ring="Z36")
    lines = _lines(capsys.readouterr().err)
    assert len(lines) == 1
    data = json.loads(lines[0])
    assert data["budget"] == "pair_budget"
    assert data["limit"] == 10
    assert data["required"] == 20
    assert data["level"] == "WARNING"


def test_log_performance_rounds_duration(capsys) -> None:
    logger = StructuredLogger(name="nsemiprimary.test", json_logging=True, level="INFO")
    logger.log_performance("delta-bar", 12.34567, exit_code=0)
    data = json.loads(_lines(capsys.readouterr().err)[0])
    assert data["duration_ms"] == 12.35
    assert data["exit_code"] == 0


def test_timed_operation_logs_error_and_reraises(capsys) -> None:
    logger = StructuredLogger(name="nsemiprimary.test", json_logging=True, level="INFO")
    with pytest.raises(ValueError), logger.timed_operation("tower", n=3):
        raise ValueError("no tower")
    records = [json.loads(line) for line in _lines(capsys.readouterr().err)]
    assert records[0]["operation"] == "tower_start"
    assert records[-1]["error"] == "no tower"
    assert records[-1]["level"] == "ERROR"


def test_json_formatter_keeps_extras() -> None:
    record = logging.makeLogRecord({"msg": "hello", "levelname": "INFO", "check": "x", "seed": 7})
    data = json.loads(JSONFormatter().format(record))
    assert data["message"] == "hello"
    assert data["check"] == "x"
    assert data["seed"] == 7


def test_configure_logging_replaces_global() -> None:
    first = configure_logging(False, "INFO")
    assert get_logger() is first
    assert first.level == logging.INFO
    second = configure_logging(True, "DEBUG")
    assert get_logger() is second
    assert second.level == logging.DEBUG


def test_refutations_and_verdicts(capsys) -> None:
    logger = StructuredLogger(name="nsemiprimary.test", json_logging=True, level="INFO")
    logger.log_verdict("Refuted", "n-vd", 3, candidates=40)
    logger.log_refutation("nvd-parity", "z2_x2_x3 n-vd n=3")
    first, second = (json.loads(line) for line in _lines(capsys.readouterr().err))
    assert first["verdict"] == "Refuted"
    assert first["check"] == "n-vd"
    assert first["level"] == "INFO"
    assert second["instance"] == "z2_x2_x3 n-vd n=3"
    assert second["level"] == "WARNING"
