"""Tests for logging setup and the structured event helpers"""

import logging

import pytest

from domlab.utils.logging import PerformanceLogger, get_structured_logger, parse_size, setup_logging


@pytest.mark.parametrize("text, expected", [
    ("10MB", 10 * 1024 ** 2),
    ("1.5 KB", 1536),
    ("2g", 2 * 1024 ** 3),
    ("512", 512),
    ("lots", 10 * 1024 ** 2),
])
def test_parse_size(text, expected):
    assert parse_size(text) == expected


def test_console_handler_only_by_default():
    setup_logging({"level": "info"})
    root = logging.getLogger()
    assert root.level == logging.INFO
    assert len(root.handlers) == 1


def test_rotating_file_handler(tmp_path):
    log_file = tmp_path / "logs" / "domlab.log"
    setup_logging({"level": "DEBUG", "file": str(log_file), "max_size": "1KB", "backup_count": 2})
    handlers = logging.getLogger().handlers
    assert len(handlers) == 2
    assert handlers[1].maxBytes == 1024
    logging.getLogger("domlab.test").debug("written to file")
    for handler in handlers:
        handler.flush()
    assert "written to file" in log_file.read_text()


def test_unknown_level_falls_back_to_warning():
    setup_logging({"level": "chatty"})
    assert logging.getLogger().level == logging.WARNING


def test_structured_event_format(caplog):
    events = get_structured_logger("domlab.events")
    with caplog.at_level(logging.DEBUG, logger="domlab.events"):
        events.log_event("cap_exceeded", level="WARNING", graph="path:7", k=3)
        events.log_feasibility("house9", 3, False, components=4)
        events.log_cache(True, "autonomous")
    messages = [record.getMessage() for record in caplog.records]
    assert messages[0] == "EVENT:cap_exceeded graph=path:7 k=3"
    assert caplog.records[0].levelno == logging.WARNING
    assert messages[1] == "EVENT:feasibility graph=house9 k=3 feasible=False components=4"
    assert messages[2] == "EVENT:cache_hit invariant=autonomous"
    assert caplog.records[2].levelno == logging.DEBUG


def test_command_execution_event_level(caplog):
    events = get_structured_logger("domlab.events")
    with caplog.at_level(logging.INFO, logger="domlab.events"):
        events.log_command_execution("compute", False, 0.5, exit_code=3)
    (record,) = caplog.records
    assert record.levelno == logging.WARNING
    assert record.getMessage() == "EVENT:command_execution command=compute success=False duration=0.500 exit_code=3"


def test_performance_logger_times_block():
    with PerformanceLogger("unit") as perf:
        sum(range(1000))
    assert perf.elapsed >= 0.0
    assert perf.start_time is None


def test_performance_logger_records_failure(caplog):
    with caplog.at_level(logging.WARNING, logger="Performance.boom"):
        with pytest.raises(RuntimeError):
            with PerformanceLogger("boom"):
                raise RuntimeError("bad")
    assert "Failed: boom - bad" in caplog.text
