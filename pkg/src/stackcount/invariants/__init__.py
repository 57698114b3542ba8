"""Manin/Malle invariants of raised stacks."""

from stackcount.invariants.compute import (
    ab_invariants,
    fano_prediction,
    invariant_report,
    minimal_sectors,
    orbifold_canonical_coefficients,
    scaling_check,
)
from stackcount.invariants.report import InvariantReport, Regime, prediction_text

__all__ = [
    "InvariantReport",
    "Regime",
    "ab_invariants",
    "fano_prediction",
    "invariant_report",
    "minimal_sectors",
    "orbifold_canonical_coefficients",
    "prediction_text",
    "scaling_check",
]
