"""The C_3 wr C_2 counterexample, analysed end to end."""

from __future__ import annotations

from stackcount.galois import FieldDescriptor, TwistDatum, TwistMode
from stackcount.groups import (
    DEFAULT_SUBGROUP_ORDER_LIMIT,
    kluners_group,
    kluners_normal_subgroup,
    kluners_swap,
)
from stackcount.invariants import ab_invariants
from stackcount.sectors import BGStack, index_raising
from stackcount.thin.scan import classify_security, is_comprehensive, subgroup_scan, twist_scan
from stackcount.thin.schema import ClassificationRow, KlunersReport

_ALGEBRAS = {
    TwistMode.TRIVIAL.value: "Q x Q (split)",
    TwistMode.SYNCHRONIZED.value: "Q(zeta_3)",
    TwistMode.INDEPENDENT.value: "any other quadratic field",
}


def kluners_report(*, order_limit: int = DEFAULT_SUBGROUP_ORDER_LIMIT) -> KlunersReport:
    """Subgroup scan, twist scan and comprehensiveness for G = C_3 wr C_2 over Q.

    The index raising function gives (a_G, b_G) = (1/2, 1). The two
    order-three factors of N only weakly break, while the forms of N
    twisted by the block swap break unless the swap and the cyclotomic
    action are independent.
    """
    group = kluners_group()
    stack = BGStack(group, FieldDescriptor.rationals(group.exponent))
    c = index_raising(stack)
    ambient = ab_invariants(stack, c)

    subgroup_verdicts = subgroup_scan(c, order_limit=order_limit)
    order_three = [v for v in subgroup_verdicts if v.order == 3]

    normal = kluners_normal_subgroup()
    base = TwistDatum.by_conjugation(normal, 3, kluners_swap())
    twist_verdicts = twist_scan(normal, 3, base.involution, c, ambient)

    classification: list[ClassificationRow] = []
    for verdict in twist_verdicts:
        mode_key = str(verdict.mode).split("(", 1)[0]
        classification.append(
            ClassificationRow(
                algebra=_ALGEBRAS[mode_key],
                mode=str(verdict.mode),
                a_sub=verdict.a_sub,
                b_sub=verdict.b_sub,
                verdict=verdict.verdict,
                security=classify_security([verdict]),
            )
        )

    return KlunersReport(
        group=group.describe(),
        order=group.order,
        exponent=group.exponent,
        a=ambient[0],
        b=ambient[1],
        subgroup_verdicts=subgroup_verdicts,
        order_three_verdicts=order_three,
        twist_verdicts=twist_verdicts,
        comprehensive=is_comprehensive(group, c),
        classification=classification,
    )
