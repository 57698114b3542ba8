"""Logging module for stackcount.

This module provides structured logging with:
- structlog configuration for consistent log formatting on stderr
- Structured events for verdicts, invariant reports, counting and fits

Usage:
    from stackcount.logging import configure_logging, log_verdict

    configure_logging(verbose=True)
    log_verdict("<(1,2,3)>", "1/2", 1, "weakly_breaking_only")
"""

from stackcount.logging.audit import (
    configure_logging,
    get_logger,
    log_count_unit,
    log_fit_dropped,
    log_fit_result,
    log_invariants,
    log_series_complete,
    log_verdict,
)

__all__ = [
    "configure_logging",
    "get_logger",
    "log_count_unit",
    "log_fit_dropped",
    "log_fit_result",
    "log_invariants",
    "log_series_complete",
    "log_verdict",
]
