"""
Γ_R-closed itgs: invariance and mapping criteria for half-planes and
half-spheres, and the Pell constructions that produce closed ones.

Usage:
    from geometry.itgs import construct_halfplane, construct_sphere
    cert = construct_halfplane(0, 1, AlgebraParams(-2, 13))
    cert.gamma          # 10 + 3√-2 + 3Ω
    construct_sphere(QuadElem(Fraction(2, 3), 1, -2), Fraction(3), params).pell
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional, Union

from sympy import isprime

from arith.exact import QuadElem, is_rational_square, ord_p, rat, squarefree_kernel
from arith.numthy import PellSolution, RationalPellSolution, pell_solve, pell_solve_rational
from arith.quatalg import AlgebraParams, Quaternion, phi_embed
from errors import ConstructionError, DomainError, PreconditionError, ValidationError
from geometry.hyp3 import (
    Circle,
    HalfPlane,
    HalfSphere,
    IsomTag,
    ItgsDesc,
    Line,
    classify,
    image_of_trace,
    trace_contains,
)

logger = logging.getLogger(__name__)


# ─── Certificates ─────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class ClosedItgsCert:
    """A surface together with the hyperbolic element of Γ_R that fixes it."""

    surface: ItgsDesc
    gamma: Quaternion
    epsilon: Optional[int]
    pell: Union[PellSolution, RationalPellSolution]
    notes: tuple[str, ...] = field(default=(), compare=False)


def validate_certificate(cert: ClosedItgsCert) -> bool:
    gamma = cert.gamma
    if gamma.norm() != 1:
        raise ValidationError("norm_one", f"N(γ) = {gamma.norm()}")
    if classify(gamma).tag is not IsomTag.HYPERBOLIC:
        raise ValidationError("hyperbolic", f"γ is {classify(gamma).tag.value}")
    if image_of_trace(gamma, cert.surface.trace) != cert.surface.trace:
        raise ValidationError("trace_fixed", "γ moves the trace")
    return True


# ─── Half-planes ──────────────────────────────────────────────────────────────

def halfplane_invariance(gamma: Quaternion, plane: HalfPlane) -> bool:
    """γ(∞) and γ⁻¹(∞) on the trace line, with (a + d)² real."""
    if gamma.trace() == 0:
        raise PreconditionError("trace_nonzero", "Tr(γ) = 0")
    if gamma.eta.is_zero():
        raise PreconditionError("eta_nonzero", "η = 0")
    m = phi_embed(gamma)
    line = plane.trace
    trace_sq = m.trace() * m.trace()
    return (
        trace_contains(line, m.a / m.c)
        and trace_contains(line, -m.d / m.c)
        and trace_sq.is_rational()
    )


def halfplane_trace(t: int, u: int, params: AlgebraParams) -> Line:
    """Trace of P(t, u): the line through u√a / (b(1 − at²))·(1 + t√a) directed by 1 + t√a."""
    a, b = params.a, params.b
    direction = QuadElem(1, t, a)
    offset = QuadElem(0, Fraction(u, b * (1 - a * t * t)), a)
    return Line.through(offset * direction, direction)


def construct_halfplane(t: int, u: int, params: AlgebraParams) -> ClosedItgsCert:
    """γ = (x + yu√a) + y(1 + t√a)Ω from the Pell solution of x² − [au² + b(1 − at²)]y² = 1."""
    a, b = params.a, params.b
    d = a * u * u + b * (1 - a * t * t)
    if d <= 0:
        raise ConstructionError(f"au² + b(1 − at²) = {d} is not positive for (t, u) = ({t}, {u})")
    if is_rational_square(Fraction(d)):
        raise ConstructionError(f"au² + b(1 − at²) = {d} is a perfect square")
    pell = pell_solve(d)
    x, y = pell.x, pell.y
    gamma = Quaternion.of(QuadElem(x, y * u, a), QuadElem(y, y * t, a), params)
    notes = (
        f"d = au² + b(1 − at²) = {d}",
        f"Pell x² − {d}y² = 1: (x, y) = ({x}, {y})",
    )
    cert = ClosedItgsCert(HalfPlane(halfplane_trace(t, u, params)), gamma, None, pell, notes)
    validate_certificate(cert)
    if not halfplane_invariance(gamma, cert.surface):
        raise ValidationError("halfplane_invariance", f"criterion rejects P({t},{u})")
    logger.info("P(%d,%d): d=%d, Pell (%d, %d)", t, u, d, x, y)
    return cert


def distinct_halfplanes(t1: int, t2: int, a: int) -> bool:
    """P(t₁, ·) and P(t₂, ·) lie in different families iff (1 − at₁²)(1 − at₂²) is not a square."""
    return not is_rational_square(Fraction((1 - a * t1 * t1) * (1 - a * t2 * t2)))


class GreedySet(NamedTuple):
    kept: list[int]
    excluded: list[int]


def greedy_distinct_set(a: int, t_max: int) -> GreedySet:
    """Scan t = 0..t_max, dropping t whenever the kernel of 1 − at² was already seen."""
    if a >= 0:
        raise DomainError(f"a must be negative, got {a}")
    seen: set[int] = set()
    kept: list[int] = []
    excluded: list[int] = []
    for t in range(t_max + 1):
        kernel = squarefree_kernel(1 - a * t * t)
        if kernel in seen:
            excluded.append(t)
        else:
            seen.add(kernel)
            kept.append(t)
    return GreedySet(kept, excluded)


def prime_form_search(a: int, bound: int) -> list[int]:
    """All 0 ≤ t ≤ bound with 1 − at² prime."""
    if a >= 0:
        raise DomainError(f"a must be negative, got {a}")
    return [t for t in range(bound + 1) if isprime(1 - a * t * t)]


# ─── Half-spheres ─────────────────────────────────────────────────────────────

class SphereCriterion(NamedTuple):
    holds: bool
    epsilon: Optional[int]


def sphere_map_criterion(alpha: Quaternion, s1: HalfSphere, s2: HalfSphere) -> SphereCriterion:
    """
    Whether α maps S(a₁, r₁) onto S(a₂, r₂), in squared form. With
    w = ξ + bηā₁, v = bη̄a₂ − ξ and L = b²r₁²|η|² − |w|², the relations read
    r₁v = εr₂w and L = Nεr₁/r₂.
    """
    if alpha.eta.is_zero():
        raise PreconditionError("eta_nonzero", "η = 0: use the rotation path")
    n = alpha.norm()
    if n == 0:
        raise DomainError("α has norm 0")
    b = alpha.params.b
    xi, eta = alpha.xi, alpha.eta
    a1, r1 = s1.center, s1.radius_sq
    a2, r2 = s2.center, s2.radius_sq
    w = xi + eta * a1.conj() * b
    v = eta.conj() * a2 * b - xi
    big_l = b * b * r1 * eta.norm() - w.norm()
    if big_l == 0:
        return SphereCriterion(False, None)
    if w.is_zero():
        if not v.is_zero():
            return SphereCriterion(False, None)
        q = n / big_l
    else:
        ratio = v / w
        if not ratio.is_rational() or ratio.x == 0:
            return SphereCriterion(False, None)
        q = ratio.x
        if big_l * q != n:
            return SphereCriterion(False, None)
    if q * q != r2 / r1:
        return SphereCriterion(False, None)
    return SphereCriterion(True, 1 if q > 0 else -1)


class Pro7Result(NamedTuple):
    q: Fraction
    zeta: Optional[QuadElem]
    xy_witness: Optional[tuple[Fraction, Fraction]]
    ok: bool


def pro7_necessary(surface: HalfSphere, gamma: Quaternion) -> Pro7Result:
    """
    With q = 1 + b(|a₁|² − r²) and ζ = a₁/q, check a(1 − 4b|ζ|²) = (X² − 4)Y² > 0
    where X = Tr(γ) and Y = 1/(2y) for ξ = x + y√a.
    """
    params = gamma.params
    a, b = params.a, params.b
    a1, r_sq = surface.center, surface.radius_sq
    if a1.is_zero():
        raise DomainError("the center a₁ must be nonzero")
    q = 1 + b * (a1.norm() - r_sq)
    if q == 0:
        return Pro7Result(q, None, None, True)
    zeta = a1 / q
    if gamma.xi.y == 0:
        return Pro7Result(q, zeta, None, False)
    x_val = gamma.trace()
    y_val = 1 / (2 * gamma.xi.y)
    lhs = a * (1 - 4 * b * zeta.norm())
    rhs = (x_val * x_val - 4) * y_val * y_val
    return Pro7Result(q, zeta, (x_val, y_val), lhs == rhs and lhs > 0)


def construct_sphere(a1: QuadElem, r_sq: Fraction | int, params: AlgebraParams) -> ClosedItgsCert:
    """
    ξ = X − ½qY√a, η = Y·a₁·√a with q = 1 + b(|a₁|² − r²) and (X, Y) the
    minimal solution of X² − dY² = 1, d = (a/4)(q² − 4b|a₁|²).
    """
    a, b = params.a, params.b
    r_sq = rat(r_sq)
    if a1.is_zero():
        raise ConstructionError("the center a₁ must be nonzero")
    if r_sq <= 0:
        raise ConstructionError(f"r² must be positive, got {r_sq}")
    n1 = a1.norm()
    if ord_p(n1, b) < 0:
        raise ConstructionError(f"ord_b |a₁|² < 0 for b = {b}")
    if ord_p(r_sq, b) < 0:
        raise ConstructionError(f"ord_b r² < 0 for b = {b}")
    q = 1 + b * (n1 - r_sq)
    if 4 * b * n1 < q * q:
        raise ConstructionError(f"4b|a₁|² = {4 * b * n1} < q² = {q * q}")
    d = Fraction(a, 4) * (q * q - 4 * b * n1)
    if d <= 0:
        raise ConstructionError(f"d = {d} is not positive")
    if is_rational_square(d):
        raise ConstructionError(f"d = {d} is a rational square")
    pell = pell_solve_rational(d)
    root = QuadElem.sqrt_a(a)
    xi = QuadElem(pell.x, -q * pell.y / 2, a)
    eta = a1 * root * pell.y
    gamma = Quaternion(xi, eta, params)
    surface = HalfSphere(Circle(a1, r_sq))
    criterion = sphere_map_criterion(gamma, surface, surface)
    if not criterion.holds:
        raise ValidationError("sphere_map_criterion", f"γ does not fix S({a1}, {r_sq})")
    notes = (
        f"q = 1 + b(|a₁|² − r²) = {q}",
        f"d = (a/4)(q² − 4b|a₁|²) = {d}, reduced to Pell D = {pell.d_effective}",
        f"Pell X² − dY² = 1: (X, Y) = ({pell.x}, {pell.y})",
        f"ε = {criterion.epsilon} from the self-map criterion",
    )
    cert = ClosedItgsCert(surface, gamma, criterion.epsilon, pell, notes)
    validate_certificate(cert)
    logger.info("S(%s, %s): d=%s, Pell (%d, %d)", a1, r_sq, d, pell.x, pell.y)
    return cert
