"""
Bounded brute-force check of a separation certificate: enumerate the elements
of I₀ of norm p and the primitive ones of norm p², with N(η) ≤ bound, and
look for any that sends the first object of the family onto a member.

Usage:
    from separation.corroborate import corroborate
    report = corroborate(cert, [plane], standard_order(params), 50)
    report.status    # → "Pass"
"""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Sequence

from arith.exact import rat
from arith.quatalg import OrderDesc, Quaternion, enumerate_norm_elements
from separation.conditions import CorroborationReport, SeparableObject, SeparationCertificate, maps_to

logger = logging.getLogger(__name__)

PASS = "Pass"
FAIL = "Fail"
INCONCLUSIVE = "Inconclusive"


def norm_p_candidates(order: OrderDesc, p: int, eta_norm_bound: Fraction | int) -> list[Quaternion]:
    """R(p) ∪ R^pr(p²) cut off at N(η) ≤ bound."""
    return (
        enumerate_norm_elements(order, p, eta_norm_bound)
        + enumerate_norm_elements(order, p * p, eta_norm_bound, primitive_only=True)
    )


def find_hits(
    candidates: Sequence[Quaternion],
    family: Sequence[SeparableObject],
    targets: range | None = None,
) -> list[tuple[Quaternion, int]]:
    """Pairs (α, i) with α·family[0] = family[i]."""
    first = family[0]
    indices = targets if targets is not None else range(len(family))
    hits: list[tuple[Quaternion, int]] = []
    for alpha in candidates:
        for i in indices:
            if maps_to(alpha, first, family[i]):
                hits.append((alpha, i))
    return hits


def corroborate(
    cert: SeparationCertificate,
    family: Sequence[SeparableObject],
    order: OrderDesc,
    eta_norm_bound: Fraction | int | str,
) -> CorroborationReport:
    bound = rat(eta_norm_bound)
    candidates = norm_p_candidates(order, cert.witness_prime, bound)
    hits = find_hits(candidates, family)
    if hits:
        status = FAIL
        for alpha, i in hits:
            logger.error("p=%d: %s maps object 0 onto object %d", cert.witness_prime, alpha, i)
    elif cert.is_sound():
        status = PASS
    else:
        status = INCONCLUSIVE
    logger.info(
        "corroboration at p=%d, N(η) ≤ %s: %d elements, %d hits, %s",
        cert.witness_prime, bound, len(candidates), len(hits), status,
    )
    return CorroborationReport(bound, len(candidates), tuple(hits), status)
