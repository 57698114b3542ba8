"""Configuration module for stackcount.

This module provides configuration loading, validation, and schema definitions.

Usage:
    from stackcount.config import load_config, Config

    config = load_config()  # Auto-discovers a config file, else defaults
    config = load_config("/path/to/stackcount.yaml")  # Explicit path
"""

from stackcount.config.loader import (
    ConfigError,
    ConfigNotFoundError,
    ConfigValidationError,
    EnvironmentVariableError,
    discover_config_path,
    expand_env_vars,
    load_config,
)
from stackcount.config.schema import Config, CountingConfig, FitConfig, GroupsConfig

__all__ = [
    "Config",
    "ConfigError",
    "ConfigNotFoundError",
    "ConfigValidationError",
    "CountingConfig",
    "EnvironmentVariableError",
    "FitConfig",
    "GroupsConfig",
    "discover_config_path",
    "expand_env_vars",
    "load_config",
]
