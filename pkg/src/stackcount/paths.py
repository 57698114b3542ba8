"""Where stackcount looks for its user-level configuration (XDG base directories)."""

from __future__ import annotations

import os
from pathlib import Path

APP_NAME = "stackcount"
CONFIG_FILE_NAME = "config.yaml"


def get_config_home() -> Path:
    """``$XDG_CONFIG_HOME``, or ``~/.config`` when it is unset or empty."""
    configured = os.environ.get("XDG_CONFIG_HOME", "")
    return Path(configured).expanduser() if configured else Path.home() / ".config"


def get_config_dir() -> Path:
    return get_config_home() / APP_NAME


def get_default_config_path() -> Path:
    return get_config_dir() / CONFIG_FILE_NAME
