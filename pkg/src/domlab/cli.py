"""
domlab command-line interface

    domlab compute path:7 autonomous
    domlab profile house9 --kmax 4
    domlab refute house9 3 b_1,a_3,a_4
    domlab realize 2 3 5
    domlab simulate house9 b_1,a_3,a_4 --adversary oracle --trials 100
    domlab verify-paper --scope default
    domlab export-dot house9 --highlight b_1,b_3,b_4
    domlab schema

Exit codes: 0 success, 1 verification mismatch, 2 usage or input error,
3 node cap exceeded, 4 internal error. Human output goes to stdout with rich; --json prints the
command's data instead. Logs go to stderr.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

from rich.console import Console

from . import __version__
from .cache import ResultCache
from .commands.base_command import (
    EXIT_USAGE,
    BaseCommand,
    CommandContext,
    CommandRegistry,
    ParameterType,
)
from .commands.builtin import build_registry
from .utils.config import ConfigManager
from .utils.logging import setup_logging

logger = logging.getLogger(__name__)


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Print machine-readable JSON")
    common.add_argument("--threads", type=int, default=None, help="Worker processes (0: machine parallelism)")
    common.add_argument("--cap", type=int, default=None, help="Move-graph node cap (0: no cap)")
    common.add_argument("--no-cache", action="store_true", help="Neither read nor write the result cache")
    common.add_argument("--config", default=None, help="Configuration file (YAML or JSON)")
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    return common


def _add_command(subparsers, command: BaseCommand, common: argparse.ArgumentParser):
    meta = command.metadata
    epilog = "examples:\n  " + "\n  ".join(meta.examples) if meta.examples else None
    parser = subparsers.add_parser(
        meta.name,
        help=meta.description,
        description=meta.description,
        epilog=epilog,
        parents=[common],
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    for param in meta.parameters:
        kwargs: Dict[str, Any] = {"help": param.description}
        if param.type == ParameterType.BOOLEAN:
            parser.add_argument(f"--{param.name}", action="store_true", **kwargs)
            continue
        if param.type == ParameterType.INTEGER:
            kwargs["type"] = int
        if param.choices:
            kwargs["choices"] = param.choices
        if param.positional:
            parser.add_argument(param.name, **kwargs)
        else:
            parser.add_argument(f"--{param.name}", default=None, **kwargs)


def build_parser(registry: CommandRegistry) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="domlab",
        description="Exact domination, eternal domination and autonomous domination numbers",
    )
    parser.add_argument("--version", action="version", version=f"domlab {__version__}")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True
    common = _common_options()
    for name in registry.list_commands():
        _add_command(subparsers, registry.commands[name], common)
    return parser


def build_context(args: argparse.Namespace, config: Dict[str, Any]) -> CommandContext:
    engine = config.get("engine", {})
    cap = args.cap if args.cap is not None else engine.get("node_cap")
    threads = args.threads if args.threads is not None else engine.get("threads", 0)

    cache = None
    cache_config = config.get("cache", {})
    if not args.no_cache and cache_config.get("enabled", True):
        cache = ResultCache(cache_config.get("path", ".domlab-cache.jsonl"))

    return CommandContext(
        node_cap=cap if cap and cap > 0 else None,
        threads=CommandContext.resolve_threads(threads),
        cache=cache,
        config=config,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    registry = build_registry()
    parser = build_parser(registry)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    out = Console()
    err = Console(stderr=True)

    config_manager = ConfigManager(Path(args.config) if args.config else None)
    config = config_manager.load_config()
    validation = config_manager.validate_config(config)
    for warning in validation["warnings"]:
        err.print(f"[yellow]warning:[/yellow] {warning}")
    if not validation["valid"]:
        for error in validation["errors"]:
            err.print(f"[red]config error:[/red] {error}")
        return EXIT_USAGE

    logging_config = dict(config.get("logging", {}))
    if args.log_level:
        logging_config["level"] = args.log_level
    setup_logging(logging_config)

    command = registry.commands[args.command]
    params = {p.name: getattr(args, p.name) for p in command.metadata.parameters}
    result = command.safe_execute(build_context(args, config), **params)

    if args.json:
        payload = result.data if result.data is not None else {"error": result.error, "exit_code": result.exit_code}
        print(json.dumps(payload, indent=2))
    elif result.data is not None or result.success:
        command.render(result, out)
    if result.error and not (args.json and result.data is None):
        err.print(f"[red]error:[/red] {result.error}")

    logger.debug(f"{args.command} finished with exit code {result.exit_code}")
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
