"""
Command objects behind the domlab CLI
"""

from .base_command import (
    EXIT_CAP,
    EXIT_INTERNAL,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_USAGE,
    BaseCommand,
    CommandContext,
    CommandRegistry,
    CommandResult,
)
from .builtin import build_registry

__all__ = [
    "EXIT_CAP",
    "EXIT_INTERNAL",
    "EXIT_MISMATCH",
    "EXIT_OK",
    "EXIT_USAGE",
    "BaseCommand",
    "CommandContext",
    "CommandRegistry",
    "CommandResult",
    "build_registry",
]
