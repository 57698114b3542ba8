"""Pydantic models for invariant reports."""

from __future__ import annotations

from enum import Enum
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field, model_validator

from stackcount.rational import Rational, format_fraction


class Regime(str, Enum):
    """Which theory pins the invariants down."""

    ZERO_DIMENSIONAL = "zero_dimensional"
    FANO = "fano"


def prediction_text(alpha: Fraction, log_exponent: int) -> str:
    """Symbolic asymptotic, e.g. "C*B^(1/2)*(log B)^0"."""
    return f"C*B^({format_fraction(alpha)})*(log B)^{log_exponent}"


class InvariantReport(BaseModel):
    """a, b, rho, j_c, adequacy and the predicted asymptotic for (X, c).

    Attributes:
        stack: Normalized stack-spec text
        raising: Raising function rendered as a table
        a: a-invariant
        b: b-invariant
        rho: Picard number
        j_c: Number of c-junior twisted sectors
        adequate: Whether (X, c) is adequate
        predicted_alpha: Exponent of B in the prediction
        predicted_log_exponent: Exponent of log B in the prediction
        prediction: Symbolic form C*B^(alpha)*(log B)^(k)
        regime: zero_dimensional or fano
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    stack: str
    raising: str
    a: Rational
    b: int = Field(ge=1)
    rho: int = Field(ge=0)
    j_c: int = Field(ge=0)
    adequate: bool
    predicted_alpha: Rational
    predicted_log_exponent: int
    prediction: str
    regime: Regime

    @model_validator(mode="after")
    def check_prediction(self) -> InvariantReport:
        """Tie the prediction to the regime's formula."""
        if self.regime is Regime.ZERO_DIMENSIONAL:
            if self.predicted_alpha != self.a or self.predicted_log_exponent != self.b - 1:
                msg = "zero-dimensional prediction must be (a, b - 1)"
                raise ValueError(msg)
        elif self.predicted_alpha != 1 or self.predicted_log_exponent != self.rho + self.j_c - 1:
            msg = "Fano prediction must be (1, rho + j_c - 1)"
            raise ValueError(msg)
        expected = prediction_text(self.predicted_alpha, self.predicted_log_exponent)
        if self.prediction != expected:
            msg = f"prediction text {self.prediction!r} does not match {expected!r}"
            raise ValueError(msg)
        return self
