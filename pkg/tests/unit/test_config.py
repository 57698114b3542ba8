"""Tests for configuration discovery, loading and validation."""

from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING, Any

import pytest
import yaml

from stackcount.config import (
    Config,
    ConfigError,
    ConfigNotFoundError,
    ConfigValidationError,
    CountingConfig,
    EnvironmentVariableError,
    discover_config_path,
    expand_env_vars,
    load_config,
)
from stackcount.paths import get_config_dir, get_config_home, get_default_config_path

if TYPE_CHECKING:
    from collections.abc import Callable

pytestmark = pytest.mark.unit


# ============================================================================
# Discovery
# ============================================================================


class TestDiscovery:
    def test_no_config_means_defaults(self) -> None:
        assert discover_config_path() is None
        config = load_config()
        assert config == Config()
        assert config.counting.workers == 1
        assert config.fit.points == 16

    def test_explicit_path(
        self, write_config: Callable[..., Path], sample_config: dict[str, Any]
    ) -> None:
        path = write_config(sample_config)
        assert discover_config_path(path) == path.resolve()

    def test_explicit_missing_path(self, temp_dir: Path) -> None:
        with pytest.raises(ConfigNotFoundError) as exc_info:
            discover_config_path(temp_dir / "absent.yaml")
        assert exc_info.value.path == (temp_dir / "absent.yaml").resolve()

    def test_environment_variable(
        self,
        monkeypatch: pytest.MonkeyPatch,
        write_config: Callable[..., Path],
        minimal_config: dict[str, Any],
    ) -> None:
        path = write_config(minimal_config, "from-env.yaml")
        monkeypatch.setenv("STACKCOUNT_CONFIG", str(path))
        assert discover_config_path() == path.resolve()

    def test_environment_variable_missing_file(
        self, monkeypatch: pytest.MonkeyPatch, temp_dir: Path
    ) -> None:
        monkeypatch.setenv("STACKCOUNT_CONFIG", str(temp_dir / "gone.yaml"))
        with pytest.raises(ConfigNotFoundError, match="STACKCOUNT_CONFIG"):
            discover_config_path()

    def test_working_directory_file(self, tmp_path: Path) -> None:
        local = tmp_path / "stackcount.yaml"
        local.write_text("version: 1\n")
        assert discover_config_path() == Path.cwd() / "stackcount.yaml"

    def test_xdg_file(self, tmp_path: Path) -> None:
        path = tmp_path / "xdg" / "stackcount" / "config.yaml"
        path.parent.mkdir(parents=True)
        path.write_text("counting:\n  workers: 3\n")
        assert discover_config_path() == path
        assert load_config().counting.workers == 3

    def test_local_file_wins_over_xdg(self, tmp_path: Path) -> None:
        xdg = tmp_path / "xdg" / "stackcount" / "config.yaml"
        xdg.parent.mkdir(parents=True)
        xdg.write_text("counting:\n  workers: 3\n")
        (tmp_path / "stackcount.yaml").write_text("counting:\n  workers: 5\n")
        assert load_config().counting.workers == 5


class TestPaths:
    def test_xdg_config_home(self, tmp_path: Path) -> None:
        assert get_config_home() == tmp_path / "xdg"
        assert get_config_dir() == tmp_path / "xdg" / "stackcount"
        assert get_default_config_path() == tmp_path / "xdg" / "stackcount" / "config.yaml"

    def test_home_fallback(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.delenv("XDG_CONFIG_HOME")
        assert get_config_home() == Path.home() / ".config"


# ============================================================================
# Loading
# ============================================================================


class TestLoadConfig:
    def test_sample_config(
        self, write_config: Callable[..., Path], sample_config: dict[str, Any]
    ) -> None:
        config = load_config(write_config(sample_config))
        assert config.groups.closure_limit == 5000
        assert config.groups.subgroup_order_limit == 120
        assert config.counting.workers == 2
        assert config.counting.block_size == 4096
        assert config.counting.enumeration_budget == 100_000
        assert config.counting.mu_sieve_limit == 10**9
        assert config.fit.ratio == 3.0

    def test_empty_file(self, temp_dir: Path) -> None:
        path = temp_dir / "empty.yaml"
        path.write_text("")
        assert load_config(path) == Config()

    def test_env_expansion(
        self, monkeypatch: pytest.MonkeyPatch, write_config: Callable[..., Path]
    ) -> None:
        monkeypatch.setenv("STACKCOUNT_WORKERS", "4")
        path = write_config({"counting": {"workers": "${STACKCOUNT_WORKERS}"}})
        assert load_config(path).counting.workers == 4

    def test_env_expansion_can_be_disabled(self, write_config: Callable[..., Path]) -> None:
        path = write_config({"counting": {"workers": "${STACKCOUNT_WORKERS}"}})
        with pytest.raises(ConfigValidationError):
            load_config(path, expand_env=False)

    def test_missing_env_var(self, write_config: Callable[..., Path]) -> None:
        path = write_config({"counting": {"workers": "${STACKCOUNT_UNSET_VAR}"}})
        with pytest.raises(EnvironmentVariableError) as exc_info:
            load_config(path)
        assert exc_info.value.var_name == "STACKCOUNT_UNSET_VAR"
        assert exc_info.value.path == path.resolve()

    @pytest.mark.parametrize(
        ("text", "match"),
        [
            ("counting: [1, 2\n", "Invalid YAML"),
            ("- 1\n- 2\n", "YAML mapping"),
        ],
    )
    def test_unreadable_yaml(self, temp_dir: Path, text: str, match: str) -> None:
        path = temp_dir / "bad.yaml"
        path.write_text(text)
        with pytest.raises(ConfigError, match=match):
            load_config(path)


class TestExpandEnvVars:
    def test_nested(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("BLOCK", "2048")
        raw = {"counting": {"block_size": "${BLOCK}"}, "tags": ["x${BLOCK}", 3]}
        assert expand_env_vars(raw) == {"counting": {"block_size": "2048"}, "tags": ["x2048", 3]}

    def test_lenient_mode_keeps_reference(self) -> None:
        assert expand_env_vars("${STACKCOUNT_UNSET_VAR}", strict=False) == "${STACKCOUNT_UNSET_VAR}"

    def test_lowercase_is_not_a_reference(self) -> None:
        assert expand_env_vars("${lower}") == "${lower}"


# ============================================================================
# Validation
# ============================================================================


class TestValidation:
    @pytest.mark.parametrize(
        ("raw", "location"),
        [
            ({"version": 2}, "version"),
            ({"counting": {"workers": 0}}, "counting.workers"),
            ({"counting": {"workers": 65}}, "counting.workers"),
            ({"counting": {"block_size": 512}}, "counting.block_size"),
            ({"fit": {"ratio": 1.0}}, "fit.ratio"),
            ({"fit": {"points": 3}}, "fit.points"),
            ({"groups": {"closure": 10}}, "groups.closure"),
            ({"logging": {}}, "logging"),
        ],
    )
    def test_schema_errors(
        self, write_config: Callable[..., Path], raw: dict[str, Any], location: str
    ) -> None:
        with pytest.raises(ConfigValidationError) as exc_info:
            load_config(write_config(raw))
        assert f"  - {location}:" in str(exc_info.value)
        assert exc_info.value.validation_errors

    def test_block_size_must_fit_sieve(self, write_config: Callable[..., Path]) -> None:
        raw = {"counting": {"mu_sieve_limit": 2000, "block_size": 4096}}
        with pytest.raises(ConfigValidationError, match="block_size must not exceed"):
            load_config(write_config(raw))

    def test_counting_defaults(self) -> None:
        counting = CountingConfig()
        assert counting.wps_max_weight == 6
        assert counting.wps_max_length == 3
        assert counting.block_size == 1 << 20

    def test_round_trip_through_yaml(self, write_config: Callable[..., Path]) -> None:
        config = Config.model_validate({"counting": {"workers": 8}})
        path = write_config(config.model_dump())
        assert load_config(path) == config
        assert yaml.safe_load(path.read_text())["counting"]["workers"] == 8
