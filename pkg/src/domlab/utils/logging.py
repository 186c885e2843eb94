"""
Logging setup for domlab

Console output goes to stderr so that --json output on stdout stays clean; an
optional rotating log file can be added from configuration.
"""

import logging
import logging.handlers
import re
import sys
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional


def setup_logging(config: Dict[str, Any]):
    """
    Setup logging based on configuration

    Args:
        config: Logging configuration dictionary (the "logging" section)
    """
    default_config = {
        "level": "WARNING",
        "file": None,
        "max_size": "10MB",
        "backup_count": 3,
        "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    }
    config = {**default_config, **config}

    level = getattr(logging, str(config["level"]).upper(), logging.WARNING)
    formatter = logging.Formatter(config["format"])

    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    root_logger.handlers.clear()

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)
    root_logger.addHandler(console_handler)

    if config["file"]:
        log_file = Path(config["file"])
        log_file.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.handlers.RotatingFileHandler(
            log_file,
            maxBytes=parse_size(config["max_size"]),
            backupCount=config["backup_count"],
        )
        file_handler.setLevel(level)
        file_handler.setFormatter(formatter)
        root_logger.addHandler(file_handler)

    logging.debug("Logging system initialized")


def parse_size(size_str: str) -> int:
    """
    Parse size string to bytes

    Args:
        size_str: Size string like "10MB", "1GB", etc.

    Returns:
        Size in bytes (10MB when unparseable)
    """
    match = re.match(r"(\d+(?:\.\d+)?)\s*([KMGT]?B?)$", str(size_str).upper().strip())
    if not match:
        return 10 * 1024 * 1024

    number = float(match.group(1))
    multipliers = {
        "B": 1,
        "KB": 1024,
        "MB": 1024 ** 2,
        "GB": 1024 ** 3,
        "TB": 1024 ** 4,
        "K": 1024,
        "M": 1024 ** 2,
        "G": 1024 ** 3,
        "T": 1024 ** 4,
        "": 1,
    }
    return int(number * multipliers[match.group(2)])


class PerformanceLogger:
    """
    Times an operation; logs at DEBUG on start and INFO on completion
    """

    def __init__(self, name: str):
        self.name = name
        self.logger = logging.getLogger(f"Performance.{name}")
        self.start_time: Optional[datetime] = None
        self.elapsed = 0.0

    def start(self):
        self.start_time = datetime.now()
        self.logger.debug(f"Started: {self.name}")

    def stop(self, message: Optional[str] = None):
        """
        Stop timing and log duration

        Args:
            message: Optional message to include
        """
        if self.start_time:
            self.elapsed = (datetime.now() - self.start_time).total_seconds()
            log_msg = f"Completed: {self.name} in {self.elapsed:.3f}s"
            if message:
                log_msg += f" - {message}"
            self.logger.info(log_msg)
            self.start_time = None

    def __enter__(self):
        self.start()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if exc_type:
            if self.start_time:
                self.elapsed = (datetime.now() - self.start_time).total_seconds()
            self.logger.warning(f"Failed: {self.name} - {exc_val}")
            self.start_time = None
        else:
            self.stop()


class StructuredLogger:
    """
    Emits "EVENT:<name> key=value ..." lines
    """

    def __init__(self, name: str):
        self.logger = logging.getLogger(name)

    def log_event(self, event: str, level: str = "INFO", **kwargs):
        """
        Log a structured event

        Args:
            event: Event name/type
            level: Log level
            **kwargs: Additional event data
        """
        level_num = getattr(logging, level.upper(), logging.INFO)
        message = f"EVENT:{event}"
        for key, value in kwargs.items():
            message += f" {key}={value}"
        self.logger.log(level_num, message)

    def log_feasibility(self, graph: str, k: int, feasible: Optional[bool], **kwargs):
        self.log_event("feasibility", graph=graph, k=k, feasible=feasible, **kwargs)

    def log_cache(self, hit: bool, invariant: str, **kwargs):
        self.log_event("cache_hit" if hit else "cache_miss", level="DEBUG", invariant=invariant, **kwargs)

    def log_command_execution(self, command: str, success: bool, duration: float, **kwargs):
        self.log_event(
            "command_execution",
            level="INFO" if success else "WARNING",
            command=command,
            success=success,
            duration=f"{duration:.3f}",
            **kwargs,
        )


def get_structured_logger(name: str) -> StructuredLogger:
    return StructuredLogger(name)
