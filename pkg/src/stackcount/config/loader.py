"""Find, read and validate the stackcount configuration file.

Candidates are tried in order: ``--config``, ``$STACKCOUNT_CONFIG``,
``./stackcount.yaml``, then ``$XDG_CONFIG_HOME/stackcount/config.yaml``. The
first two must exist when given; the last two are optional and their absence
means built-in defaults. String values may reference ``${VAR}``.
"""

from __future__ import annotations

import logging
import os
import re
from pathlib import Path
from typing import TYPE_CHECKING, Any, NamedTuple

import yaml
from pydantic import ValidationError

from stackcount.config.schema import Config
from stackcount.errors import StackcountError
from stackcount.paths import get_default_config_path

if TYPE_CHECKING:
    from collections.abc import Iterator

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "STACKCOUNT_CONFIG"
LOCAL_CONFIG_NAME = "stackcount.yaml"

# ${NAME} with an upper-case shell-style name; anything else is left alone
ENV_REFERENCE = re.compile(r"\$\{([A-Z_][A-Z0-9_]*)\}")


class ConfigError(StackcountError):
    """A configuration file could not be used."""

    def __init__(self, message: str, path: Path | None = None) -> None:
        self.path = path
        super().__init__(message)


class ConfigNotFoundError(ConfigError):
    """A required configuration file is missing."""


class ConfigValidationError(ConfigError):
    """The file parsed but does not match the schema.

    Attributes:
        validation_errors: Pydantic error dicts, one per failing location
    """

    def __init__(
        self,
        message: str,
        path: Path | None = None,
        validation_errors: list[dict[str, Any]] | None = None,
    ) -> None:
        self.validation_errors = validation_errors or []
        super().__init__(message, path)


class EnvironmentVariableError(ConfigError):
    """A ``${VAR}`` reference names an unset variable."""

    def __init__(self, var_name: str, path: Path | None = None) -> None:
        self.var_name = var_name
        message = f"Environment variable '{var_name}' referenced by the config is not set"
        super().__init__(message, path)


class _Candidate(NamedTuple):
    path: Path
    required: bool
    origin: str


def expand_env_vars(value: Any, *, strict: bool = True) -> Any:
    """Substitute ``${VAR}`` references in strings, recursing into lists and mappings.

    Args:
        value: Parsed YAML value
        strict: Raise on an unset variable; otherwise keep the reference as written

    Raises:
        EnvironmentVariableError: On an unset variable in strict mode.
    """
    if isinstance(value, dict):
        return {key: expand_env_vars(item, strict=strict) for key, item in value.items()}
    if isinstance(value, list):
        return [expand_env_vars(item, strict=strict) for item in value]
    if not isinstance(value, str):
        return value

    def substitute(match: re.Match[str]) -> str:
        name = match.group(1)
        if name in os.environ:
            return os.environ[name]
        if strict:
            raise EnvironmentVariableError(name)
        return match.group(0)

    return ENV_REFERENCE.sub(substitute, value)


def _candidates(explicit_path: str | Path | None) -> Iterator[_Candidate]:
    if explicit_path:
        yield _Candidate(Path(explicit_path).expanduser().resolve(), True, "--config")
        return
    env_path = os.environ.get(CONFIG_ENV_VAR)
    if env_path:
        yield _Candidate(Path(env_path).expanduser().resolve(), True, f"${CONFIG_ENV_VAR}")
        return
    yield _Candidate(Path.cwd() / LOCAL_CONFIG_NAME, False, "working directory")
    yield _Candidate(get_default_config_path(), False, "XDG config home")


def discover_config_path(explicit_path: str | Path | None = None) -> Path | None:
    """Return the configuration file to use, or None for defaults.

    Raises:
        ConfigNotFoundError: If ``--config`` or ``$STACKCOUNT_CONFIG`` names a missing file.
    """
    for candidate in _candidates(explicit_path):
        if candidate.path.exists():
            logger.debug("Using config from %s (%s)", candidate.path, candidate.origin)
            return candidate.path
        if candidate.required:
            msg = f"Config file given by {candidate.origin} not found: {candidate.path}"
            raise ConfigNotFoundError(msg, candidate.path)
    logger.debug("No config file found; using defaults")
    return None


def _read_mapping(path: Path) -> dict[str, Any]:
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8"))
    except OSError as e:
        msg = f"Cannot read config file: {e}"
        raise ConfigError(msg, path) from e
    except yaml.YAMLError as e:
        msg = f"Invalid YAML in {path}: {e}"
        raise ConfigError(msg, path) from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        msg = f"{path} must hold a YAML mapping at the top level, got {type(data).__name__}"
        raise ConfigError(msg, path)
    return data


def validate_config(raw_config: dict[str, Any], path: Path | None = None) -> Config:
    """Validate a raw mapping, reporting every failing location at once."""
    try:
        return Config.model_validate(raw_config)
    except ValidationError as e:
        errors = e.errors()
        lines: list[str] = []
        for err in errors:
            location = ".".join(str(part) for part in err["loc"]) or "config"
            lines.append(f"  - {location}: {err['msg']}")
        message = f"Config validation failed ({len(errors)} error(s)):\n" + "\n".join(lines)
        raise ConfigValidationError(
            message, path=path, validation_errors=[dict(err) for err in errors]
        ) from e


def load_config(path: str | Path | None = None, *, expand_env: bool = True) -> Config:
    """Load the configuration, or the defaults when no file is found.

    Args:
        path: Explicit file; None runs discovery
        expand_env: Substitute ``${VAR}`` references before validation

    Returns:
        Validated configuration

    Raises:
        ConfigError: Any failure to find, read, expand or validate the file.
    """
    config_path = discover_config_path(path)
    if config_path is None:
        return Config()

    raw_config = _read_mapping(config_path)
    if expand_env:
        try:
            raw_config = expand_env_vars(raw_config)
        except EnvironmentVariableError as e:
            e.path = config_path
            raise
    return validate_config(raw_config, config_path)
