"""
Separation-prime search: dispatch on the kind of the first object, exclude the
small primes at which bounded enumeration already finds a map of the first
object onto a family member, and sieve for the smallest prime meeting every condition.

Usage:
    from separation.engine import SearchLimits, separation_prime_points
    cert = separation_prime_points([Point3(QuadElem(0, 1, -2), 1)], standard_order(params))
    cert.witness_prime    # → 23
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from sympy import primerange

from arith.numthy import DEFAULT_SEARCH_BOUND, find_prime_with_symbols, is_square_mod_P, legendre
from arith.quatalg import OrderDesc
from errors import DomainError, ExhaustionError, PreconditionError, UnsupportedError, ValidationError
from geometry.hyp3 import GeodesicDesc, HalfPlane, HalfSphere, IsomTag, Point3, classify, image_of_trace, is_type_s0
from geometry.itgs import ClosedItgsCert, pro7_necessary
from separation.conditions import (
    ConditionSet,
    SeparableObject,
    SeparationCertificate,
    geodesics_condition_set,
    halfplane_condition_set,
    points_condition_set,
    sphere_condition_set,
)
from separation.corroborate import find_hits, norm_p_candidates

logger = logging.getLogger(__name__)


class SearchLimits(NamedTuple):
    search_bound: int = DEFAULT_SEARCH_BOUND
    hit_prime_bound: int = 30
    eta_norm_bound: Fraction = Fraction(50)


@dataclass(frozen=True)
class SeparationConfig:
    points: tuple[Point3, ...] = field(default=())
    geodesics: tuple[GeodesicDesc, ...] = field(default=())
    itgs: tuple[ClosedItgsCert, ...] = field(default=())

    def family(self) -> list[SeparableObject]:
        """Every object, the designated first one leading: itgs, then geodesics, then points."""
        return _dedupe([*(c.surface for c in self.itgs), *self.geodesics, *self.points])


def _dedupe(items: Sequence) -> list:
    seen: list = []
    for item in items:
        if item not in seen:
            seen.append(item)
    return seen


# ─── Hit search ───────────────────────────────────────────────────────────────

def hit_primes(
    family: Sequence[SeparableObject],
    order: OrderDesc,
    limits: SearchLimits,
) -> dict[int, int]:
    """Primes p < hit_prime_bound with some α ∈ R(p) ∪ R^pr(p²) sending object 0 onto a member, itself included."""
    found: dict[int, int] = {}
    for p in primerange(2, limits.hit_prime_bound):
        p = int(p)
        candidates = norm_p_candidates(order, p, limits.eta_norm_bound)
        hits = find_hits(candidates, family)
        if hits:
            found[p] = len(hits)
            logger.debug("hit prime %d: %d maps onto members", p, len(hits))
    return found


# ─── Witness search ───────────────────────────────────────────────────────────

def _ideal_sieve(conditions: ConditionSet, excluded: set[int], search_bound: int) -> int:
    for p in primerange(3, search_bound + 1):
        p = int(p)
        if p in excluded:
            continue
        if any(v % p == 0 or legendre(v, p) != s for v, s in conditions.residue_conditions):
            continue
        try:
            if all(is_square_mod_P(beta, p) == (s == 1) for beta, s in conditions.ideal_conditions):
                return p
        except DomainError:
            continue
    raise ExhaustionError("no prime meets the ideal-level conditions", search_bound)


def certify(
    conditions: ConditionSet,
    family: Sequence[SeparableObject],
    order: OrderDesc,
    limits: SearchLimits,
) -> SeparationCertificate:
    hits = hit_primes(family, order, limits)
    excluded = set(conditions.excluded_primes) | set(hits)
    log = list(conditions.derivation_log)
    if hits:
        log.append(f"bounded enumeration maps object 0 onto a member at p ∈ {sorted(hits)}")
    if conditions.ideal_conditions:
        witness = _ideal_sieve(conditions, excluded, limits.search_bound)
    else:
        witness = find_prime_with_symbols(
            list(conditions.residue_conditions), excluded, limits.search_bound
        )
    cert = SeparationCertificate(
        conditions.object_kind,
        conditions.residue_conditions,
        frozenset(excluded),
        witness,
        ideal_conditions=conditions.ideal_conditions,
        heuristic=conditions.heuristic,
        derivation_log=tuple(log),
    )
    if not cert.is_sound():
        raise ValidationError("certificate_soundness", f"witness {witness} fails its own conditions")
    logger.info("%s certificate: witness %d%s", cert.object_kind.value, witness,
                " (heuristic)" if cert.heuristic else "")
    return cert


# ─── Kind-specific entry points ───────────────────────────────────────────────
# ``others`` joins the family for the hit search only; the conditions come from
# the first object of the leading list.

def separation_prime_points(
    points: Sequence[Point3],
    order: OrderDesc,
    limits: SearchLimits = SearchLimits(),
    others: Sequence[SeparableObject] = (),
) -> SeparationCertificate:
    points = _dedupe(points)
    if not points:
        raise DomainError("empty point family")
    return certify(points_condition_set(points, order), _dedupe([*points, *others]), order, limits)


def separation_prime_geodesics(
    geodesics: Sequence[GeodesicDesc],
    order: OrderDesc,
    limits: SearchLimits = SearchLimits(),
    others: Sequence[SeparableObject] = (),
) -> SeparationCertificate:
    geodesics = _dedupe(geodesics)
    if not geodesics:
        raise DomainError("empty geodesic family")
    family = _dedupe([*geodesics, *others])
    return certify(geodesics_condition_set(geodesics, order), family, order, limits)


def _check_witness(cert: ClosedItgsCert) -> None:
    if classify(cert.gamma).tag is not IsomTag.HYPERBOLIC:
        raise PreconditionError("hyperbolic", f"{cert.gamma} is not hyperbolic")
    if image_of_trace(cert.gamma, cert.surface.trace) != cert.surface.trace:
        raise PreconditionError("fixes_surface", f"{cert.gamma} does not fix the surface")


def separation_prime_halfplanes(
    family: Sequence[ClosedItgsCert],
    order: OrderDesc,
    limits: SearchLimits = SearchLimits(),
    others: Sequence[SeparableObject] = (),
) -> SeparationCertificate:
    family = _dedupe(family)
    if not family or not isinstance(family[0].surface, HalfPlane):
        raise DomainError("the first surface must be a half-plane")
    _check_witness(family[0])
    surfaces = _dedupe([*(c.surface for c in family), *others])
    return certify(halfplane_condition_set(family[0].gamma, order), surfaces, order, limits)


def separation_prime_spheres(
    family: Sequence[ClosedItgsCert],
    order: OrderDesc,
    limits: SearchLimits = SearchLimits(),
    others: Sequence[SeparableObject] = (),
) -> SeparationCertificate:
    family = _dedupe(family)
    if not family or not isinstance(family[0].surface, HalfSphere):
        raise DomainError("the first surface must be a half-sphere")
    first = family[0]
    if is_type_s0(first.surface, order.params):
        raise UnsupportedError("S⁰ is of type (S⁰) and cannot be separated")
    _check_witness(first)
    conditions = sphere_condition_set(first.surface, order)
    chain = pro7_necessary(first.surface, first.gamma)
    if not chain.ok:
        logger.warning("witness of %s fails a(1 − 4b|ζ|²) = (X² − 4)Y²", first.surface)
    surfaces = _dedupe([*(c.surface for c in family), *others])
    return certify(conditions, surfaces, order, limits)


def find_separating_prime(
    config: SeparationConfig, order: OrderDesc, limits: SearchLimits = SearchLimits()
) -> SeparationCertificate:
    """
    Certificate for the designated first object of ``config``: the first
    closed itgs when there is one, else the first geodesic, else the first
    point. Every other object stays in the family the hit search runs over.
    """
    if not (config.points or config.geodesics or config.itgs):
        raise DomainError("empty configuration")
    if config.itgs:
        others = [*config.geodesics, *config.points]
        if others:
            logger.info("mixed configuration: %d further objects join the itgs family", len(others))
        if isinstance(config.itgs[0].surface, HalfPlane):
            return separation_prime_halfplanes(config.itgs, order, limits, others)
        return separation_prime_spheres(config.itgs, order, limits, others)
    if config.geodesics:
        return separation_prime_geodesics(config.geodesics, order, limits, config.points)
    return separation_prime_points(config.points, order, limits)
