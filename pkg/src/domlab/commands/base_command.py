"""
Base Command Interface for domlab

Every subcommand is a BaseCommand: it declares its parameters in metadata (the
CLI builds its argument parser from them) and returns a CommandResult whose
exit code follows one convention: 0 success, 1 verification mismatch, 2 usage
or input error, 3 node cap exceeded.
"""

import logging
import os
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from ..cache import ResultCache
from ..errors import DomlabError, EngineInvariantError, ResourceCapExceeded
from ..utils.logging import get_structured_logger

logger = logging.getLogger(__name__)
events = get_structured_logger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_INTERNAL = 4


class ParameterType(Enum):
    """Parameter types for validation"""
    STRING = "string"
    INTEGER = "integer"
    BOOLEAN = "boolean"
    PATH = "path"


@dataclass
class CommandParameter:
    """
    Command parameter definition with validation

    Positional parameters become positional CLI arguments; the rest become
    --name options.
    """
    name: str
    type: ParameterType
    description: str
    required: bool = True
    default: Any = None
    choices: Optional[List[Any]] = None
    min_value: Optional[int] = None
    positional: bool = False

    def validate(self, value: Any) -> Tuple[bool, Optional[str]]:
        if value is None:
            if self.required:
                return False, f"Parameter '{self.name}' is required"
            return True, None

        if self.type in (ParameterType.STRING, ParameterType.PATH) and not isinstance(value, str):
            return False, f"Parameter '{self.name}' must be a string"
        if self.type == ParameterType.INTEGER and (not isinstance(value, int) or isinstance(value, bool)):
            return False, f"Parameter '{self.name}' must be an integer"
        if self.type == ParameterType.BOOLEAN and not isinstance(value, bool):
            return False, f"Parameter '{self.name}' must be a boolean"

        if self.type == ParameterType.INTEGER and self.min_value is not None and value < self.min_value:
            return False, f"Parameter '{self.name}' must be >= {self.min_value}"

        if self.choices and value not in self.choices:
            return False, f"Parameter '{self.name}' must be one of: {self.choices}"

        return True, None


@dataclass
class CommandMetadata:
    """Command metadata for parser generation and help"""
    name: str
    description: str
    parameters: List[CommandParameter] = field(default_factory=list)
    examples: List[str] = field(default_factory=list)


@dataclass
class CommandContext:
    """
    Settings shared by every command in one invocation

    Attributes:
        node_cap: Largest move graph any computation may build (None: no cap)
        threads: Worker processes for fan-out work (already resolved, >= 1)
        cache: Result cache, or None when caching is off
        config: Effective configuration
    """
    node_cap: Optional[int] = None
    threads: int = 1
    cache: Optional[ResultCache] = None
    config: Dict[str, Any] = field(default_factory=dict)

    @staticmethod
    def resolve_threads(threads: int) -> int:
        return threads if threads > 0 else (os.cpu_count() or 1)


@dataclass
class CommandResult:
    """Standardized command result"""
    success: bool
    message: str
    data: Optional[Dict[str, Any]] = None
    error: Optional[str] = None
    exit_code: int = EXIT_OK
    execution_time: float = 0.0
    timestamp: datetime = field(default_factory=datetime.now)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "success": self.success,
            "message": self.message,
            "data": self.data,
            "error": self.error,
            "exit_code": self.exit_code,
            "execution_time": self.execution_time,
            "timestamp": self.timestamp.isoformat(),
        }


def exit_code_for(error: Exception) -> int:
    if isinstance(error, ResourceCapExceeded):
        return EXIT_CAP
    if isinstance(error, EngineInvariantError):
        return EXIT_MISMATCH
    if isinstance(error, (DomlabError, ValueError, OSError)):
        return EXIT_USAGE
    return EXIT_INTERNAL


class BaseCommand(ABC):
    """
    Base class for all domlab commands.

    Subclasses implement get_metadata() and execute(); callers use
    safe_execute(), which validates parameters, times the run and turns
    exceptions into failed results with the right exit code.
    """

    def __init__(self):
        self.metadata = self.get_metadata()
        self.logger = logging.getLogger(f"Command.{self.metadata.name}")
        self._validate_metadata()

    @abstractmethod
    def get_metadata(self) -> CommandMetadata:
        pass

    @abstractmethod
    def execute(self, context: CommandContext, **kwargs) -> CommandResult:
        pass

    def render(self, result: CommandResult, console) -> None:
        """Human output; commands with tables override this"""
        console.print(result.message)

    def validate_parameters(self, **kwargs) -> Tuple[bool, Optional[str]]:
        for param in self.metadata.parameters:
            is_valid, error = param.validate(kwargs.get(param.name))
            if not is_valid:
                return False, error

        expected = {p.name for p in self.metadata.parameters}
        unexpected = set(kwargs) - expected
        if unexpected:
            return False, f"Unexpected parameters: {sorted(unexpected)}"
        return True, None

    def safe_execute(self, context: CommandContext, **kwargs) -> CommandResult:
        start_time = time.time()
        kwargs = self._with_defaults(kwargs)

        is_valid, error = self.validate_parameters(**kwargs)
        if not is_valid:
            return CommandResult(
                success=False,
                message="Parameter validation failed",
                error=error,
                exit_code=EXIT_USAGE,
                execution_time=time.time() - start_time,
            )

        try:
            self.logger.info(f"Executing '{self.metadata.name}' with parameters: {kwargs}")
            result = self.execute(context, **kwargs)
        except Exception as e:
            code = exit_code_for(e)
            if isinstance(e, DomlabError):
                self.logger.info(f"'{self.metadata.name}' stopped: {e}")
            else:
                self.logger.error(f"Command '{self.metadata.name}' failed: {e}", exc_info=True)
            result = CommandResult(success=False, message=f"{self.metadata.name} failed", error=str(e), exit_code=code)

        result.execution_time = time.time() - start_time
        events.log_command_execution(
            self.metadata.name, result.success, result.execution_time, exit_code=result.exit_code
        )
        return result

    def _with_defaults(self, kwargs: Dict[str, Any]) -> Dict[str, Any]:
        filled = dict(kwargs)
        for param in self.metadata.parameters:
            if filled.get(param.name) is None and param.default is not None:
                filled[param.name] = param.default
        return filled

    def _validate_metadata(self):
        if not self.metadata.name:
            raise ValueError("Command name is required")
        if not self.metadata.description:
            raise ValueError("Command description is required")
        names = [p.name for p in self.metadata.parameters]
        if len(names) != len(set(names)):
            raise ValueError("Parameter names must be unique")

    def __str__(self) -> str:
        return f"Command({self.metadata.name})"

    def __repr__(self) -> str:
        return f"<Command: {self.metadata.name}>"


class CommandRegistry:
    """Registry of available commands, in registration order"""

    def __init__(self):
        self.commands: Dict[str, BaseCommand] = {}

    def register(self, command: BaseCommand):
        name = command.metadata.name
        if name in self.commands:
            logger.warning(f"Command '{name}' already registered, overwriting")
        self.commands[name] = command
        logger.debug(f"Registered command: {name}")

    def get_command(self, name: str) -> Optional[BaseCommand]:
        return self.commands.get(name)

    def list_commands(self) -> List[str]:
        return list(self.commands)

