"""Least-squares fits of log N = log C + alpha log B + beta log log B."""

from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction
from typing import TYPE_CHECKING

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from stackcount.errors import CountingError
from stackcount.logging import log_fit_dropped, log_fit_result

if TYPE_CHECKING:
    from stackcount.counting.series import CountSeries

MIN_FIT_SAMPLES = 4


class FitMode(str, Enum):
    FREE = "free"
    FIXED_ALPHA = "fixed_alpha"


class FitResult(BaseModel):
    """Fitted exponents of N(B) ~ C * B^alpha * (log B)^beta.

    Attributes:
        alpha: Exponent of B (the supplied value in fixed_alpha mode)
        log_exponent: Exponent beta of log B
        constant: Fitted C
        residual: Root mean square of the log residuals
        mode: free or fixed_alpha
        samples_used: Samples with B >= e^2 that entered the fit
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    alpha: float
    log_exponent: float
    constant: float
    residual: float = Field(ge=0)
    mode: FitMode
    samples_used: int = Field(ge=MIN_FIT_SAMPLES)


def fit_exponents(
    series: CountSeries,
    fix_alpha: Fraction | float | None = None,
) -> FitResult:
    """Fit the asymptotic shape to every sample with B >= e^2.

    Smaller samples are skipped with a fit_samples_dropped warning.

    Args:
        series: Counting series
        fix_alpha: If given, alpha is held at this value and only C and
            beta are fitted

    Raises:
        CountingError: With fewer than four usable samples, or a zero count
            among them.
    """
    usable = [s for s in series.samples if s.b >= math.e**2]
    if len(usable) < len(series.samples):
        dropped = [float(s.b) for s in series.samples if s.b < math.e**2]
        log_fit_dropped(dropped, math.e**2)
    if len(usable) < MIN_FIT_SAMPLES:
        msg = f"need at least {MIN_FIT_SAMPLES} samples with B >= e^2, got {len(usable)}"
        raise CountingError(msg)
    zeros = [s.b for s in usable if s.n == 0]
    if zeros:
        msg = f"cannot fit zero counts (at B = {zeros[0]:g})"
        raise CountingError(msg)

    log_b = np.log(np.array([s.b for s in usable], dtype=float))
    log_log_b = np.log(log_b)
    log_n = np.log(np.array([s.n for s in usable], dtype=float))

    if fix_alpha is None:
        design = np.column_stack([np.ones_like(log_b), log_b, log_log_b])
        coeffs, *_ = np.linalg.lstsq(design, log_n, rcond=None)
        log_c, alpha, beta = (float(v) for v in coeffs)
        mode = FitMode.FREE
    else:
        alpha = float(fix_alpha)
        target = log_n - alpha * log_b
        design = np.column_stack([np.ones_like(log_b), log_log_b])
        coeffs, *_ = np.linalg.lstsq(design, target, rcond=None)
        log_c, beta = (float(v) for v in coeffs)
        mode = FitMode.FIXED_ALPHA

    predicted = log_c + alpha * log_b + beta * log_log_b
    residual = float(np.sqrt(np.mean((log_n - predicted) ** 2)))
    result = FitResult(
        alpha=alpha,
        log_exponent=beta,
        constant=math.exp(log_c),
        residual=residual,
        mode=mode,
        samples_used=len(usable),
    )
    log_fit_result(mode.value, alpha, beta, residual)
    return result
