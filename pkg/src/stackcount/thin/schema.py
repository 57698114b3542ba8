"""Pydantic result models for thin-morphism scans."""

from __future__ import annotations

from enum import Enum
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field, model_validator

from stackcount.rational import Rational


class Verdict(str, Enum):
    """Lexicographic comparison of pulled-back (a, b) with the ambient (a, b)."""

    BREAKING = "breaking"
    WEAKLY_BREAKING_ONLY = "weakly_breaking_only"
    NOT_BREAKING = "not_breaking"


class Security(str, Enum):
    """Security of a point whose automorphism scans produced a verdict list."""

    STRONGLY_SECURE = "strongly_secure"
    SECURE = "secure"
    INSECURE = "insecure"


class SourceKind(str, Enum):
    SUBGROUP = "subgroup"
    TWIST = "twist"


def classify(sub: tuple[Fraction, int], ambient: tuple[Fraction, int]) -> Verdict:
    """Breaking if sub > ambient lexicographically, weakly if equal."""
    if sub > ambient:
        return Verdict.BREAKING
    if sub == ambient:
        return Verdict.WEAKLY_BREAKING_ONLY
    return Verdict.NOT_BREAKING


class ThinVerdict(BaseModel):
    """Verdict for one thin morphism BH -> BG or one twisted form.

    Attributes:
        kind: subgroup or twist
        source: Human-readable source (subgroup generators or twist mode)
        generators: Generators of the subgroup in cycle notation
        order: Order of the subgroup
        mode: Twist mode, for twist verdicts
        a_sub: a-invariant of the pulled-back raising function
        b_sub: b-invariant of the pulled-back raising function
        a: Ambient a-invariant
        b: Ambient b-invariant
        verdict: Lexicographic comparison outcome
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: SourceKind
    source: str
    generators: list[str]
    order: int
    mode: str | None = None
    a_sub: Rational
    b_sub: int
    a: Rational
    b: int
    verdict: Verdict

    @model_validator(mode="after")
    def check_verdict(self) -> ThinVerdict:
        """The verdict must be the lexicographic comparison of the pairs."""
        expected = classify((self.a_sub, self.b_sub), (self.a, self.b))
        if self.verdict is not expected:
            msg = f"verdict {self.verdict.value} contradicts ({self.a_sub}, {self.b_sub})"
            raise ValueError(msg)
        return self

    @property
    def is_breaking(self) -> bool:
        return self.verdict is Verdict.BREAKING

    @property
    def is_weakly_breaking(self) -> bool:
        """Breaking verdicts are weakly breaking as well."""
        return self.verdict in (Verdict.BREAKING, Verdict.WEAKLY_BREAKING_ONLY)


class ComprehensiveResult(BaseModel):
    """Outcome of a c-comprehensiveness check.

    Attributes:
        comprehensive: True if every minimal class normally generates G
        minimal_classes: Members of each minimal nontrivial class
        witness: Members of the first failing class
        witness_closure_order: Order of the normal closure of the witness
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    comprehensive: bool
    group_order: int
    minimal_value: Rational
    minimal_classes: list[list[str]]
    witness: list[str] | None = None
    witness_closure_order: int | None = None


class ClassificationRow(BaseModel):
    """One line of the twisted-form classification table."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    algebra: str
    mode: str
    a_sub: Rational
    b_sub: int
    verdict: Verdict
    security: Security


class KlunersReport(BaseModel):
    """The full analysis of C_3 wr C_2 in S_6 with the index raising function."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    group: str
    order: int
    exponent: int
    a: Rational
    b: int
    subgroup_verdicts: list[ThinVerdict]
    order_three_verdicts: list[ThinVerdict]
    twist_verdicts: list[ThinVerdict]
    comprehensive: ComprehensiveResult
    classification: list[ClassificationRow]


class ThinScanReport(BaseModel):
    """Subgroup and twist verdicts for one raised zero-dimensional stack."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    stack: str
    raising: str
    a: Rational
    b: int
    subgroup_verdicts: list[ThinVerdict]
    twist_verdicts: list[ThinVerdict] = Field(default_factory=list)
    security: Security
