"""a/b invariants, Fano predictions and orbifold canonical coefficients.

Two regimes are decided. For a zero-dimensional stack and a big raising
function, a = 1/min c and b counts the twisted sectors attaining the minimum.
For an adequate supported Fano pair, a = 1 and b = rho + j_c. Anything else is
refused with InvariantError.
"""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING, Any

from stackcount.errors import InvariantError
from stackcount.invariants.report import InvariantReport, Regime, prediction_text
from stackcount.logging import log_invariants
from stackcount.rational import format_fraction
from stackcount.sectors import is_adequate, junior_count

if TYPE_CHECKING:
    from stackcount.sectors import RaisingFunction, StackDescriptor


def _require_same_stack(stack: StackDescriptor, c: RaisingFunction) -> None:
    if c.stack != stack:
        msg = f"raising function lives on {c.stack.describe()}, not {stack.describe()}"
        raise InvariantError(msg)


def minimal_sectors(stack: StackDescriptor, c: RaisingFunction) -> list[Any]:
    """Twisted sector labels where c attains its minimum."""
    values = c.twisted_values()
    if not values:
        return []
    least = min(values.values())
    return [label for label, value in values.items() if value == least]


def ab_invariants(stack: StackDescriptor, c: RaisingFunction) -> tuple[Fraction, int]:
    """a(O, c) and b(O, c) for a zero-dimensional stack.

    Args:
        stack: A zero-dimensional stack descriptor
        c: Raising function on stack, positive on twisted sectors

    Returns:
        (a, b) with a = 1 / min twisted c and b the number of minimizers

    Raises:
        InvariantError: If the stack has positive dimension or no twisted
            sector, or c vanishes on a twisted sector.
    """
    _require_same_stack(stack, c)
    if stack.dim != 0:
        msg = f"a/b invariants of (O, c) need a zero-dimensional stack, not {stack.describe()}"
        raise InvariantError(msg)
    values = c.twisted_values()
    if not values:
        msg = f"{stack.describe()} has no twisted sector"
        raise InvariantError(msg)
    zeros = [stack.label_text(label) for label, value in values.items() if value == 0]
    if zeros:
        msg = f"(O, c) is not big: c vanishes on {', '.join(zeros)}"
        raise InvariantError(msg)
    least = min(values.values())
    count = sum(1 for value in values.values() if value == least)
    return 1 / least, count


def fano_prediction(stack: StackDescriptor, c: RaisingFunction) -> InvariantReport:
    """Prediction C*B*(log B)^(rho + j_c - 1) for an adequate supported pair.

    For zero-dimensional stacks the result is cross-checked against
    ab_invariants: b must equal rho + j_c.

    Raises:
        InvariantError: If the pair is not adequate or the cross-check fails.
        SectorError: If the stack is outside the supported Fano families.
    """
    _require_same_stack(stack, c)
    adequacy = is_adequate(stack, c)
    if not adequacy:
        msg = f"inadequate pair: {adequacy.reason}"
        raise InvariantError(msg)
    juniors = junior_count(stack, c)
    b = stack.rho + juniors
    if stack.dim == 0:
        a0, b0 = ab_invariants(stack, c)
        if (a0, b0) != (1, b):
            msg = f"internal check failed: (a, b) = ({a0}, {b0}) but rho + j_c = {b}"
            raise InvariantError(msg)
    report = InvariantReport(
        stack=stack.describe(),
        raising=c.table_text(),
        a=Fraction(1),
        b=b,
        rho=stack.rho,
        j_c=juniors,
        adequate=True,
        predicted_alpha=Fraction(1),
        predicted_log_exponent=b - 1,
        prediction=prediction_text(Fraction(1), b - 1),
        regime=Regime.FANO,
    )
    log_invariants(report.stack, format_fraction(report.a), report.b, report.adequate)
    return report


def invariant_report(stack: StackDescriptor, c: RaisingFunction) -> InvariantReport:
    """Report for either regime: any big c in dimension 0, adequate Fano pairs otherwise.

    Raises:
        InvariantError: If neither regime applies.
    """
    if stack.dim > 0:
        return fano_prediction(stack, c)
    a, b = ab_invariants(stack, c)
    report = InvariantReport(
        stack=stack.describe(),
        raising=c.table_text(),
        a=a,
        b=b,
        rho=stack.rho,
        j_c=junior_count(stack, c),
        adequate=is_adequate(stack, c).adequate,
        predicted_alpha=a,
        predicted_log_exponent=b - 1,
        prediction=prediction_text(a, b - 1),
        regime=Regime.ZERO_DIMENSIONAL,
    )
    log_invariants(report.stack, format_fraction(report.a), report.b, report.adequate)
    return report


def orbifold_canonical_coefficients(stack: StackDescriptor) -> dict[Any, Fraction]:
    """Coefficient age(Y) - 1 of each twisted sector in the orbifold canonical class."""
    return {s.label: s.age - 1 for s in stack.twisted_sectors()}


def scaling_check(
    stack: StackDescriptor,
    c: RaisingFunction,
    factor: Fraction | int,
) -> tuple[Fraction, int]:
    """(a, b) of factor * c, verified against a(c) / factor and b(c).

    Raises:
        InvariantError: If factor <= 0, or the scaled invariants disagree
            with the scaling law.
    """
    factor = Fraction(factor)
    if factor <= 0:
        msg = f"scale factor must be positive, got {factor}"
        raise InvariantError(msg)
    a, b = ab_invariants(stack, c)
    scaled = c.scaled(factor)
    a_scaled, b_scaled = ab_invariants(stack, scaled)
    if a_scaled != a / factor or b_scaled != b:
        msg = f"scaling law violated: ({a_scaled}, {b_scaled}) vs ({a / factor}, {b})"
        raise InvariantError(msg)
    if set(minimal_sectors(stack, scaled)) != set(minimal_sectors(stack, c)):
        msg = "scaling changed the set of minimal sectors"
        raise InvariantError(msg)
    return a_scaled, b_scaled
