"""Breaking and weakly breaking thin-morphism scans for zero-dimensional stacks.

A subgroup H of G gives BH -> BG; pulling the raising function back along the
sector map and comparing (a_H, b_H) with (a_G, b_G) lexicographically decides
whether the image is breaking. Twisted forms of a constant subgroup are
handled through the three TwistDatum modes.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import TYPE_CHECKING, Any

from stackcount.errors import GroupError, InvariantError, TwistError
from stackcount.galois import TwistDatum, TwistMode, quadratic_characters, twisted_orbits
from stackcount.groups import (
    DEFAULT_SUBGROUP_ORDER_LIMIT,
    FiniteGroup,
    conjugacy_classes,
    normal_closure,
    subgroups,
)
from stackcount.invariants import ab_invariants
from stackcount.logging import log_verdict
from stackcount.rational import format_fraction
from stackcount.sectors import BGStack, MuStack, RaisingFunction
from stackcount.thin.schema import (
    ComprehensiveResult,
    Security,
    SourceKind,
    ThinScanReport,
    ThinVerdict,
    classify,
)

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping

    from stackcount.groups import GroupElement

logger = logging.getLogger(__name__)


def pullback_raising(c: RaisingFunction, subgroup: FiniteGroup | int) -> RaisingFunction:
    """Pull c back along BH -> BG, or along B(mu_m) -> B(mu_l) for m | l.

    Args:
        c: Raising function on a bg or mu stack
        subgroup: A subgroup of G (bg), or a divisor m of l (mu)

    Returns:
        Raising function on the sectors of the smaller stack

    Raises:
        GroupError: If subgroup is not a subgroup.
        InvariantError: If the stack family has no subgroup scans.
    """
    stack = c.stack
    if isinstance(stack, BGStack):
        if not isinstance(subgroup, FiniteGroup) or not subgroup.is_subgroup_of(stack.group):
            msg = "pullback needs a subgroup of the ambient group"
            raise GroupError(msg)
        small = BGStack(subgroup, stack.field)
        values = {cls: c(stack.class_of(cls.representative)) for cls in small.classes}
        return RaisingFunction(small, values)
    if isinstance(stack, MuStack):
        if isinstance(subgroup, FiniteGroup) or subgroup < 1 or stack.l % subgroup != 0:
            msg = f"mu({subgroup}) is not a subgroup of mu({stack.l})"
            raise GroupError(msg)
        step = stack.l // subgroup
        small_mu = MuStack(subgroup)
        return RaisingFunction(small_mu, {j: c(j * step) for j in range(subgroup)})
    msg = f"thin scans are only defined for bg and mu stacks, not {stack.describe()}"
    raise InvariantError(msg)


def _verdict(
    kind: SourceKind,
    source: str,
    generators: list[str],
    order: int,
    sub: tuple[Fraction, int],
    ambient: tuple[Fraction, int],
    mode: str | None = None,
) -> ThinVerdict:
    verdict = ThinVerdict(
        kind=kind,
        source=source,
        generators=generators,
        order=order,
        mode=mode,
        a_sub=sub[0],
        b_sub=sub[1],
        a=ambient[0],
        b=ambient[1],
        verdict=classify(sub, ambient),
    )
    log_verdict(source, format_fraction(sub[0]), sub[1], verdict.verdict.value)
    return verdict


def subgroup_scan(
    c: RaisingFunction,
    *,
    order_limit: int = DEFAULT_SUBGROUP_ORDER_LIMIT,
) -> list[ThinVerdict]:
    """One verdict per nontrivial proper subgroup.

    Args:
        c: Raising function on bg(G) or mu(l), positive on twisted sectors
        order_limit: Bound on |G| for subgroup enumeration

    Returns:
        Verdicts in subgroup order (by order, then element tuple)

    Raises:
        InvariantError: If c is not positive on twisted sectors.
        GroupError: If |G| exceeds order_limit.
    """
    stack = c.stack
    ambient = ab_invariants(stack, c)
    verdicts: list[ThinVerdict] = []
    if isinstance(stack, BGStack):
        group = stack.group
        for h in subgroups(group, limit=order_limit):
            if h.order in (1, group.order):
                continue
            pulled = pullback_raising(c, h)
            gens = [str(g) for g in h.generators if not g.is_identity]
            verdicts.append(
                _verdict(
                    SourceKind.SUBGROUP,
                    h.describe(),
                    gens,
                    h.order,
                    ab_invariants(pulled.stack, pulled),
                    ambient,
                )
            )
    elif isinstance(stack, MuStack):
        for m in range(2, stack.l):
            if stack.l % m:
                continue
            pulled = pullback_raising(c, m)
            verdicts.append(
                _verdict(
                    SourceKind.SUBGROUP,
                    f"mu({m})",
                    [f"mu({m})"],
                    m,
                    ab_invariants(pulled.stack, pulled),
                    ambient,
                )
            )
    else:
        msg = f"thin scans are only defined for bg and mu stacks, not {stack.describe()}"
        raise InvariantError(msg)
    logger.debug("Scanned %d subgroups of %s", len(verdicts), stack.describe())
    return verdicts


def twist_scan(
    subgroup: FiniteGroup,
    exponent: int,
    involution: Mapping[GroupElement, GroupElement],
    c: RaisingFunction,
    ambient: tuple[Fraction, int] | None = None,
) -> list[ThinVerdict]:
    """Verdicts for the twisted forms of a constant subgroup, one per mode.

    Modes are scanned in the order trivial, synchronized (one verdict per
    nontrivial quadratic character of (Z/eZ)^*), independent.

    Args:
        subgroup: The constant group H, a subgroup of the ambient G
        exponent: Modulus e of the cyclotomic action
        involution: Automorphism phi of H with phi^2 = 1
        c: Raising function on bg(G)
        ambient: (a_G, b_G); computed from c when omitted

    Raises:
        TwistError: On exponent mismatch, a bad involution, or c not
            constant on some twisted orbit.
    """
    stack = c.stack
    if not isinstance(stack, BGStack):
        msg = f"twist scans need a bg stack, not {stack.describe()}"
        raise TwistError(msg)
    if not subgroup.is_subgroup_of(stack.group):
        msg = "twisted subgroup must lie in the ambient group"
        raise TwistError(msg)
    if ambient is None:
        ambient = ab_invariants(stack, c)

    base = TwistDatum(subgroup, exponent, dict(involution))
    data: list[TwistDatum] = [base]
    data += [base.with_mode(TwistMode.SYNCHRONIZED, ch) for ch in quadratic_characters(exponent)]
    data.append(base.with_mode(TwistMode.INDEPENDENT))

    gens = [str(g) for g in subgroup.generators if not g.is_identity]
    verdicts: list[ThinVerdict] = []
    for twist in data:
        orbit_values = _orbit_values(twisted_orbits(twist), stack, c)
        least = min(orbit_values)
        sub = (1 / least, orbit_values.count(least))
        verdicts.append(
            _verdict(
                SourceKind.TWIST,
                f"{subgroup.describe()} {twist.describe()}",
                gens,
                subgroup.order,
                sub,
                ambient,
                mode=twist.describe(),
            )
        )
    return verdicts


def _orbit_values(
    orbits: list[frozenset[GroupElement]],
    stack: BGStack,
    c: RaisingFunction,
) -> list[Fraction]:
    values: list[Fraction] = []
    for orbit in orbits:
        if any(g.is_identity for g in orbit):
            continue
        seen = {c(stack.class_of(g)) for g in orbit}
        if len(seen) != 1:
            msg = f"raising function is not constant on the twisted orbit of {min(orbit)}"
            raise TwistError(msg)
        value = seen.pop()
        if value == 0:
            msg = f"raising function vanishes on the twisted orbit of {min(orbit)}"
            raise TwistError(msg)
        values.append(value)
    if not values:
        msg = "twisted group has no nontrivial orbit"
        raise TwistError(msg)
    return values


def is_comprehensive(group: FiniteGroup, c: RaisingFunction) -> ComprehensiveResult:
    """Check that every minimal-c nontrivial conjugacy class normally generates G.

    Args:
        group: The group G
        c: Raising function on bg(G); read on ordinary classes through the
            F-conjugacy class containing them

    Raises:
        InvariantError: If c is zero on a nontrivial class or c lives on
            another group.
    """
    stack = c.stack
    if not isinstance(stack, BGStack) or stack.group != group:
        msg = "comprehensiveness needs a raising function on bg of the same group"
        raise InvariantError(msg)
    valued: list[tuple[Any, Fraction]] = []
    for conj in conjugacy_classes(group):
        if conj.representative.is_identity:
            continue
        value = c(stack.class_of(conj.representative))
        if value == 0:
            msg = f"c vanishes on the nontrivial class of {conj.representative}"
            raise InvariantError(msg)
        valued.append((conj, value))
    if not valued:
        msg = "the trivial group has no nontrivial class"
        raise InvariantError(msg)

    least = min(value for _, value in valued)
    minimal = [conj for conj, value in valued if value == least]
    listed = [[str(g) for g in conj.sorted_members()] for conj in minimal]
    for conj in minimal:
        closure = normal_closure(group, conj.members)
        if closure.order != group.order:
            return ComprehensiveResult(
                comprehensive=False,
                group_order=group.order,
                minimal_value=least,
                minimal_classes=listed,
                witness=[str(g) for g in conj.sorted_members()],
                witness_closure_order=closure.order,
            )
    return ComprehensiveResult(
        comprehensive=True,
        group_order=group.order,
        minimal_value=least,
        minimal_classes=listed,
    )


def classify_security(verdicts: Iterable[ThinVerdict]) -> Security:
    """Insecure if any verdict breaks, secure if some only weakly break."""
    verdicts = list(verdicts)
    if any(v.is_breaking for v in verdicts):
        return Security.INSECURE
    if any(v.is_weakly_breaking for v in verdicts):
        return Security.SECURE
    return Security.STRONGLY_SECURE


def thin_scan(
    c: RaisingFunction,
    *,
    order_limit: int = DEFAULT_SUBGROUP_ORDER_LIMIT,
    twist: TwistDatum | None = None,
) -> ThinScanReport:
    """Subgroup scan of (X, c), plus the twist scan of one constant subgroup.

    Args:
        c: Raising function on a bg or mu stack
        order_limit: Bound on |G| for subgroup enumeration
        twist: Constant subgroup, exponent and involution to scan in every mode
    """
    ambient = ab_invariants(c.stack, c)
    subgroup_verdicts = subgroup_scan(c, order_limit=order_limit)
    twist_verdicts: list[ThinVerdict] = []
    if twist is not None:
        twist_verdicts = twist_scan(twist.group, twist.exponent, twist.involution, c, ambient)
    return ThinScanReport(
        stack=c.stack.describe(),
        raising=c.table_text(),
        a=ambient[0],
        b=ambient[1],
        subgroup_verdicts=subgroup_verdicts,
        twist_verdicts=twist_verdicts,
        security=classify_security(subgroup_verdicts + twist_verdicts),
    )
