"""Thin-morphism detection: subgroup and twist scans, comprehensiveness."""

from stackcount.thin.kluners import kluners_report
from stackcount.thin.scan import (
    classify_security,
    is_comprehensive,
    pullback_raising,
    subgroup_scan,
    thin_scan,
    twist_scan,
)
from stackcount.thin.schema import (
    ClassificationRow,
    ComprehensiveResult,
    KlunersReport,
    Security,
    SourceKind,
    ThinScanReport,
    ThinVerdict,
    Verdict,
    classify,
)

__all__ = [
    "ClassificationRow",
    "ComprehensiveResult",
    "KlunersReport",
    "Security",
    "SourceKind",
    "ThinScanReport",
    "ThinVerdict",
    "Verdict",
    "classify",
    "classify_security",
    "is_comprehensive",
    "kluners_report",
    "pullback_raising",
    "subgroup_scan",
    "thin_scan",
    "twist_scan",
]
