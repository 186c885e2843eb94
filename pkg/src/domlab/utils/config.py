"""
Configuration Management for domlab

Loads a JSON or YAML file over built-in defaults, substitutes environment
variables, validates value ranges and saves with a timestamped backup.
"""

import copy
import json
import logging
import os
import re
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

logger = logging.getLogger(__name__)

CONFIG_ENV = "DOMLAB_CONFIG"
CACHE_ENV = "DOMLAB_CACHE"
DEFAULT_CONFIG_FILE = "domlab.yaml"

ADVERSARIES = ("uniform", "greedy", "oracle")


class ConfigManager:
    """
    Configuration manager for domlab

    Features:
    - JSON and YAML configuration support
    - Environment variable substitution (${VAR} and $VAR)
    - Discovery: explicit path, then $DOMLAB_CONFIG, then ./domlab.yaml
    - Configuration validation
    - Backup on save, export
    """

    def __init__(self, config_path: Optional[Path] = None):
        self.config_path = config_path or self._discover()

        self.default_config: Dict[str, Any] = {
            "version": "1.0.0",

            "engine": {
                "node_cap": 50_000_000,
                "threads": 0,  # 0 = machine parallelism
            },

            "cache": {
                "enabled": True,
                "path": ".domlab-cache.jsonl",
            },

            "simulation": {
                "seed": 0,
                "rounds": 1000,
                "trials": 1,
                "adversary": "uniform",
            },

            "logging": {
                "level": "WARNING",
                "file": None,
                "max_size": "10MB",
                "backup_count": 3,
                "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            },
        }

    @staticmethod
    def _discover() -> Optional[Path]:
        env_path = os.getenv(CONFIG_ENV)
        if env_path:
            return Path(env_path)
        local = Path.cwd() / DEFAULT_CONFIG_FILE
        return local if local.exists() else None

    def load_config(self) -> Dict[str, Any]:
        """
        Load configuration from file

        Returns:
            Dict with configuration data; $DOMLAB_CACHE overrides cache.path
        """
        config = copy.deepcopy(self.default_config)

        if self.config_path is not None and self.config_path.exists():
            logger.info(f"Loading configuration from {self.config_path}")
            try:
                with open(self.config_path, "r", encoding="utf-8") as f:
                    if self.config_path.suffix.lower() in (".yaml", ".yml"):
                        user = yaml.safe_load(f) or {}
                    else:
                        user = json.load(f)
                config = self._merge_configs(config, user)
                config = self._substitute_env_vars(config)
            except (OSError, ValueError, yaml.YAMLError) as e:
                logger.error(f"Failed to load configuration: {e}")
                logger.info("Using default configuration")
                config = copy.deepcopy(self.default_config)
        elif self.config_path is not None:
            logger.warning(f"Configuration file {self.config_path} not found, using defaults")

        cache_override = os.getenv(CACHE_ENV)
        if cache_override:
            config["cache"]["path"] = cache_override

        return config

    def save_config(self, config: Dict[str, Any]):
        """
        Save configuration to file, moving any existing file to a timestamped backup

        Args:
            config: Configuration dictionary to save
        """
        if self.config_path is None:
            self.config_path = Path.cwd() / DEFAULT_CONFIG_FILE

        if self.config_path.exists():
            backup_path = self.config_path.with_suffix(
                f'.backup.{datetime.now().strftime("%Y%m%d_%H%M%S")}{self.config_path.suffix}'
            )
            self.config_path.rename(backup_path)
            logger.info(f"Created configuration backup: {backup_path}")

        self.config_path.parent.mkdir(parents=True, exist_ok=True)
        self._write(self.config_path, config)
        logger.info(f"Configuration saved to {self.config_path}")

    def export_config(self, export_path: Path):
        """Write the effective configuration (defaults + file + env) to export_path"""
        self._write(export_path, self.load_config())
        logger.info(f"Configuration exported to {export_path}")

    @staticmethod
    def _write(path: Path, config: Dict[str, Any]):
        with open(path, "w", encoding="utf-8") as f:
            if path.suffix.lower() in (".yaml", ".yml"):
                yaml.dump(config, f, default_flow_style=False, indent=2)
            else:
                json.dump(config, f, indent=2)

    def _merge_configs(self, default: Dict[str, Any], user: Dict[str, Any]) -> Dict[str, Any]:
        """
        Recursively merge user config with default config

        Args:
            default: Default configuration
            user: User configuration

        Returns:
            Merged configuration
        """
        merged = default.copy()

        for key, value in user.items():
            if key in merged and isinstance(merged[key], dict) and isinstance(value, dict):
                merged[key] = self._merge_configs(merged[key], value)
            else:
                merged[key] = value

        return merged

    def _substitute_env_vars(self, config: Dict[str, Any]) -> Dict[str, Any]:
        """Replace ${VAR} or $VAR in string values; unknown variables are left as written"""
        pattern = re.compile(r"\$\{([^}]+)\}|\$([A-Za-z_][A-Za-z0-9_]*)")

        def replace_match(match):
            var_name = match.group(1) or match.group(2)
            return os.getenv(var_name, match.group(0))

        def substitute_value(value: Any) -> Any:
            if isinstance(value, str):
                return pattern.sub(replace_match, value)
            if isinstance(value, dict):
                return {k: substitute_value(v) for k, v in value.items()}
            if isinstance(value, list):
                return [substitute_value(item) for item in value]
            return value

        result = substitute_value(config)
        return result if isinstance(result, dict) else config

    def validate_config(self, config: Dict[str, Any]) -> Dict[str, Any]:
        """
        Validate configuration and return validation results

        Args:
            config: Configuration to validate

        Returns:
            Dict with "valid", "errors" and "warnings"
        """
        results: Dict[str, Any] = {
            "valid": True,
            "errors": [],
            "warnings": [],
        }

        def error(message: str):
            results["errors"].append(message)
            results["valid"] = False

        engine = config.get("engine", {})
        node_cap = engine.get("node_cap")
        if not isinstance(node_cap, int) or node_cap < 1:
            error("engine.node_cap must be a positive integer")
        threads = engine.get("threads")
        if not isinstance(threads, int) or threads < 0:
            error("engine.threads must be a non-negative integer")

        simulation = config.get("simulation", {})
        for key in ("rounds", "trials"):
            value = simulation.get(key)
            if not isinstance(value, int) or value < 0:
                error(f"simulation.{key} must be a non-negative integer")
        seed = simulation.get("seed")
        if not isinstance(seed, int) or not 0 <= seed < 2 ** 64:
            error("simulation.seed must be an integer in [0, 2^64)")
        adversary = simulation.get("adversary", "uniform")
        if not isinstance(adversary, str) or (
            adversary not in ADVERSARIES and not adversary.startswith("scripted:")
        ):
            error(f"simulation.adversary must be one of {ADVERSARIES} or scripted:FILE")

        level = str(config.get("logging", {}).get("level", "WARNING")).upper()
        if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            error(f"logging.level {level!r} is not a logging level")

        known = set(self.default_config)
        for key in config:
            if key not in known:
                results["warnings"].append(f"Unknown configuration section: {key}")

        return results
