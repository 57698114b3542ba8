"""Structured logging and the computation trail.

This module provides:
- structlog configuration for JSON or console logging to stderr
- Structured log events for thin-morphism verdicts, invariant reports,
  enumeration work units, finished counting series, exponent fits
  and samples a fit leaves out

Stdout is reserved for command output, so every log line goes to stderr.
"""

from __future__ import annotations

import logging
import sys
from typing import TYPE_CHECKING, Any

import structlog

if TYPE_CHECKING:
    from collections.abc import Callable


def configure_logging(
    verbose: bool = False,
    json_output: bool = True,
) -> None:
    """Configure structured logging for the application.

    Sets up structlog with:
    - Timestamp in ISO format
    - Log level
    - Exception formatting

    Args:
        verbose: If True, enable DEBUG level. Otherwise INFO.
        json_output: If True, output JSON. Otherwise use console format.
    """
    level = logging.DEBUG if verbose else logging.INFO

    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=level,
    )

    processors: list[Callable[..., Any]] = [
        structlog.contextvars.merge_contextvars,
        structlog.processors.add_log_level,
        structlog.processors.TimeStamper(fmt="iso", utc=True),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
        structlog.processors.UnicodeDecoder(),
    ]

    if json_output:
        processors.append(structlog.processors.JSONRenderer())
    else:
        processors.append(structlog.dev.ConsoleRenderer(colors=sys.stderr.isatty()))

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.make_filtering_bound_logger(level),
        context_class=dict,
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )


def get_logger(name: str | None = None) -> structlog.stdlib.BoundLogger:
    """Get a configured structlog logger.

    Args:
        name: Optional logger name (typically __name__)

    Returns:
        Bound structlog logger
    """
    return structlog.get_logger(name)


def log_verdict(
    source: str,
    a_sub: str,
    b_sub: int,
    verdict: str,
) -> None:
    """Log one thin-morphism verdict.

    Breaking verdicts are warnings; weakly breaking ones are info; the rest
    are debug detail.

    Args:
        source: Subgroup generators or twist mode
        a_sub: Pulled-back a-invariant as "p/q"
        b_sub: Pulled-back b-invariant
        verdict: Verdict value
    """
    log = get_logger("stackcount.thin")
    if verdict == "breaking":
        log_func = log.warning
    elif verdict == "weakly_breaking_only":
        log_func = log.info
    else:
        log_func = log.debug
    log_func("thin_verdict", source=source, a_sub=a_sub, b_sub=b_sub, verdict=verdict)


def log_invariants(
    stack: str,
    a: str,
    b: int,
    adequate: bool,
) -> None:
    """Log a computed invariant report.

    Args:
        stack: Normalized stack-spec text
        a: a-invariant as "p/q"
        b: b-invariant
        adequate: Whether the pair is adequate
    """
    log = get_logger("stackcount.invariants")
    log.debug("invariants", stack=stack, a=a, b=b, adequate=adequate)


def log_count_unit(
    family: str,
    unit: int,
    units: int,
    partial_total: int,
    duration_ms: float,
) -> None:
    """Log completion of one enumeration work unit.

    Args:
        family: Counting family (e.g. 'mu(3)')
        unit: Zero-based work-unit number
        units: Total number of work units
        partial_total: Partial count at the largest bound
        duration_ms: Unit duration in milliseconds
    """
    log = get_logger("stackcount.counting")
    log.debug(
        "count_unit_complete",
        family=family,
        unit=unit,
        units=units,
        partial_total=partial_total,
        duration_ms=round(duration_ms, 2),
    )


def log_series_complete(
    family: str,
    raising: str,
    samples: int,
    n_max: int,
    duration_ms: float,
) -> None:
    """Log a finished counting series.

    Args:
        family: Counting family
        raising: Raising-function descriptor
        samples: Number of B samples
        n_max: Count at the largest bound
        duration_ms: Total duration in milliseconds
    """
    log = get_logger("stackcount.counting")
    log.info(
        "series_complete",
        family=family,
        raising=raising,
        samples=samples,
        n_max=n_max,
        duration_ms=round(duration_ms, 2),
    )


def log_fit_dropped(bounds: list[float], cutoff: float) -> None:
    """Log samples left out of a fit for lying below the cutoff.

    Args:
        bounds: The B values that were skipped
        cutoff: Smallest B a fit accepts
    """
    log = get_logger("stackcount.fit")
    log.warning(
        "fit_samples_dropped",
        dropped=len(bounds),
        bounds=bounds,
        cutoff=round(cutoff, 6),
    )


def log_fit_result(
    mode: str,
    alpha: float,
    log_exponent: float,
    residual: float,
) -> None:
    """Log an exponent fit.

    Args:
        mode: 'free' or 'fixed_alpha'
        alpha: Fitted or supplied exponent of B
        log_exponent: Fitted exponent of log B
        residual: RMS residual in log space
    """
    log = get_logger("stackcount.fit")
    log.info(
        "fit_complete",
        mode=mode,
        alpha=alpha,
        log_exponent=log_exponent,
        residual=residual,
    )
