"""Shared pytest fixtures for stackcount tests.

This module provides common fixtures for:
- Temporary directories and config files
- Mock time (via freezegun)
- The named groups and stacks used across the suites
- A Typer CliRunner
"""

from __future__ import annotations

import tempfile
from datetime import datetime, timezone

UTC = timezone.utc
from pathlib import Path
from typing import TYPE_CHECKING, Any

import pytest
import structlog
import yaml
from typer.testing import CliRunner

from stackcount.galois import FieldDescriptor
from stackcount.groups import kluners_group, symmetric_group
from stackcount.sectors import BGStack, MuStack, ProductStack, WPSStack

if TYPE_CHECKING:
    from collections.abc import Callable, Generator

    from stackcount.groups import FiniteGroup


# ============================================================================
# Time Fixtures
# ============================================================================


@pytest.fixture
def frozen_time() -> datetime:
    """Return a fixed datetime for deterministic tests.

    Use with freezegun's freeze_time decorator:

        @freeze_time("2026-01-10T15:30:00Z")
        def test_something(frozen_time):
            assert datetime.now(UTC) == frozen_time
    """
    return datetime(2026, 1, 10, 15, 30, 0, tzinfo=UTC)


# ============================================================================
# Configuration Fixtures
# ============================================================================


@pytest.fixture
def temp_dir() -> Generator[Path, None, None]:
    """Create a temporary directory for test files.

    Yields:
        Path to temporary directory (cleaned up after test)
    """
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def minimal_config() -> dict[str, Any]:
    """Return a minimal valid configuration dictionary."""
    return {"version": 1}


@pytest.fixture
def sample_config() -> dict[str, Any]:
    """Return a configuration touching every section."""
    return {
        "version": 1,
        "groups": {"closure_limit": 5000, "subgroup_order_limit": 120},
        "counting": {
            "workers": 2,
            "enumeration_budget": 100_000,
            "block_size": 4096,
        },
        "fit": {"points": 8, "ratio": 3.0},
    }


@pytest.fixture
def write_config(temp_dir: Path) -> Callable[..., Path]:
    """Factory fixture to write config files.

    Args:
        config: Configuration dictionary
        filename: Name of the config file (default: config.yaml)

    Returns:
        Path to the written config file
    """

    def _write(config: dict[str, Any], filename: str = "config.yaml") -> Path:
        path = temp_dir / filename
        with path.open("w") as f:
            yaml.safe_dump(config, f)
        return path

    return _write


@pytest.fixture(autouse=True)
def reset_structlog() -> Generator[None, None, None]:
    """Drop structlog configuration bound to a closed CliRunner stream."""
    yield
    structlog.reset_defaults()


@pytest.fixture(autouse=True)
def isolated_config_env(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
    """Keep discovery away from the developer's real config files."""
    monkeypatch.delenv("STACKCOUNT_CONFIG", raising=False)
    monkeypatch.setenv("XDG_CONFIG_HOME", str(tmp_path / "xdg"))
    monkeypatch.chdir(tmp_path)


# ============================================================================
# Group and Stack Fixtures
# ============================================================================


@pytest.fixture(scope="session")
def kluners() -> FiniteGroup:
    """C_3 wr C_2 inside S_6."""
    return kluners_group()


@pytest.fixture(scope="session")
def s3() -> FiniteGroup:
    return symmetric_group(3)


@pytest.fixture(scope="session")
def s4() -> FiniteGroup:
    return symmetric_group(4)


@pytest.fixture(scope="session")
def bg_s3_over_q(s3: FiniteGroup) -> BGStack:
    return BGStack(s3, FieldDescriptor.rationals(s3.exponent))


@pytest.fixture(scope="session")
def table_one_stack() -> ProductStack:
    """P(2,3) x B(mu_2)."""
    return ProductStack((WPSStack((2, 3)), MuStack(2)))


# ============================================================================
# CLI Fixtures
# ============================================================================


@pytest.fixture
def cli_runner() -> CliRunner:
    """Typer test runner with stderr captured separately."""
    try:
        return CliRunner(mix_stderr=False)
    except TypeError:
        # newer Click always separates the streams
        return CliRunner()
