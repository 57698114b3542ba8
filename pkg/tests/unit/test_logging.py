"""Tests for structured logging configuration and event helpers."""

from __future__ import annotations

import io
import json
from types import SimpleNamespace

import pytest
from structlog.testing import capture_logs

from stackcount.logging import (
    audit,
    configure_logging,
    get_logger,
    log_count_unit,
    log_fit_dropped,
    log_fit_result,
    log_invariants,
    log_series_complete,
    log_verdict,
)

pytestmark = pytest.mark.unit


class _Terminal(io.StringIO):
    def isatty(self) -> bool:
        return True


class TestConfigureLogging:
    def test_json_lines_on_stderr(self, capsys: pytest.CaptureFixture[str]) -> None:
        configure_logging(json_output=True)
        get_logger("stackcount.test").info("hello", k=1)
        captured = capsys.readouterr()
        assert captured.out == ""
        record = json.loads(captured.err.strip().splitlines()[-1])
        assert record["event"] == "hello"
        assert record["k"] == 1
        assert record["level"] == "info"
        assert record["timestamp"].endswith("Z")

    def test_console_output(self, capsys: pytest.CaptureFixture[str]) -> None:
        configure_logging(json_output=False)
        get_logger().warning("careful", family="mu(2)")
        err = capsys.readouterr().err
        assert "careful" in err
        assert "family=mu(2)" in err
        assert "\x1b[" not in err

    def test_console_colors_on_a_terminal(self, monkeypatch: pytest.MonkeyPatch) -> None:
        terminal = _Terminal()
        monkeypatch.setattr(audit, "sys", SimpleNamespace(stderr=terminal))
        configure_logging(json_output=False)
        get_logger().warning("careful", family="mu(2)")
        assert "careful" in terminal.getvalue()
        assert "\x1b[" in terminal.getvalue()

    def test_debug_needs_verbose(self, capsys: pytest.CaptureFixture[str]) -> None:
        configure_logging(verbose=False)
        log_invariants("mu(2)", "1", 1, adequate=True)
        assert capsys.readouterr().err == ""
        configure_logging(verbose=True)
        log_invariants("mu(2)", "1", 1, adequate=True)
        assert '"invariants"' in capsys.readouterr().err


class TestEvents:
    @pytest.fixture(autouse=True)
    def verbose(self) -> None:
        configure_logging(verbose=True)

    @pytest.mark.parametrize(
        ("verdict", "level"),
        [
            ("breaking", "warning"),
            ("weakly_breaking_only", "info"),
            ("not_breaking", "debug"),
        ],
    )
    def test_verdict_levels(self, verdict: str, level: str) -> None:
        with capture_logs() as logs:
            log_verdict("<(1,2,3)>", "1/2", 1, verdict)
        assert logs == [
            {
                "event": "thin_verdict",
                "log_level": level,
                "source": "<(1,2,3)>",
                "a_sub": "1/2",
                "b_sub": 1,
                "verdict": verdict,
            }
        ]

    def test_count_unit(self) -> None:
        with capture_logs() as logs:
            log_count_unit("mu(3)", 2, 8, 1234, 12.3456)
        assert logs[0]["event"] == "count_unit_complete"
        assert logs[0]["duration_ms"] == 12.35
        assert logs[0]["log_level"] == "debug"

    def test_series_and_fit(self) -> None:
        with capture_logs() as logs:
            log_series_complete("wps(2,3)", "table:{1/3:5/3,1/2:5/2,2/3:10/3}", 16, 99, 1.0)
            log_fit_result("free", 0.5, 1.0, 0.01)
        assert [entry["event"] for entry in logs] == ["series_complete", "fit_complete"]
        assert logs[0]["n_max"] == 99
        assert logs[1]["mode"] == "free"

    def test_fit_dropped(self) -> None:
        with capture_logs() as logs:
            log_fit_dropped([1.0, 5.0], 7.38905609893065)
        assert logs == [
            {
                "event": "fit_samples_dropped",
                "log_level": "warning",
                "dropped": 2,
                "bounds": [1.0, 5.0],
                "cutoff": 7.389056,
            }
        ]
