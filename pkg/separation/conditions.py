"""
Residue-condition derivation for separation primes.

For each kind of object (points, geodesics, half-planes, half-spheres) this
module turns the first object of a family into a list of quadratic-residue
conditions that rule out any α ∈ R(p) ∪ R^pr(p²) fixing it, plus the primes
that have to be excluded for the argument to go through. The search for a
prime satisfying them lives in ``separation.engine``.

Usage:
    from separation.conditions import point_conditions
    form, eta0 = point_conditions(Point3(QuadElem(0, 1, -2), 1), standard_order(params))
    form.coeffs    # → (100, 0, 187)
    form.kernel    # → -187
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt, lcm
from typing import Optional, Union

from sympy import Matrix, Rational, factorint

from arith.exact import QuadElem, is_rational_square, prime_support, square_analysis
from arith.numthy import is_square_mod_P, legendre
from arith.quatalg import OrderDesc, Quaternion
from errors import DomainError, PreconditionError
from geometry.hyp3 import (
    GeodesicDesc,
    HalfPlane,
    HalfSphere,
    Point3,
    act,
    act_form,
    image_of_trace,
)

logger = logging.getLogger(__name__)

SeparableObject = Union[Point3, GeodesicDesc, HalfPlane, HalfSphere]


# ─── Types ────────────────────────────────────────────────────────────────────

class ObjectKind(str, Enum):
    POINTS = "Points"
    GEODESICS = "Geodesics"
    HALFPLANES = "HalfPlanes"
    HALFSPHERES = "HalfSpheres"


@dataclass(frozen=True)
class QuadraticFormZ:
    """κ·N(α) = αX² + βXY + γY² in the coordinates (X, Y) of 2D′ξ."""

    kappa: int
    coeffs: tuple[int, int, int]

    @property
    def delta(self) -> int:
        alpha, beta, gamma = self.coeffs
        return beta * beta - 4 * alpha * gamma

    @property
    def kernel(self) -> int:
        return square_analysis(self.delta).squarefree_kernel


@dataclass(frozen=True)
class ThreePrimeFallback:
    """
    Interpolation route for c₁X² + c₂XY + c₃Y² = value from three samples
    (X_i, Y_i, value_i), used when the coefficients are not known directly.
    The system is solvable iff ∏_{i<j} (Y_jX_i − Y_iX_j) ≠ 0.
    """

    samples: tuple[tuple[int, int, Fraction], ...]

    def determinant(self) -> int:
        (x1, y1, _), (x2, y2, _), (x3, y3, _) = self.samples
        return (y2 * x1 - y1 * x2) * (y3 * x1 - y1 * x3) * (y3 * x2 - y2 * x3)

    def solve(self) -> tuple[Fraction, Fraction, Fraction]:
        if len(self.samples) != 3:
            raise DomainError(f"need exactly three samples, got {len(self.samples)}")
        if self.determinant() == 0:
            raise DomainError("samples are proportional; the interpolation is singular")
        system = Matrix([[x * x, x * y, y * y] for x, y, _ in self.samples])
        rhs = Matrix([Rational(str(Fraction(v))) for _, _, v in self.samples])
        solution = system.LUsolve(rhs)
        return tuple(Fraction(int(c.p), int(c.q)) for c in solution)

    def to_form(self) -> QuadraticFormZ:
        return _integerize(self.solve())


@dataclass(frozen=True)
class CorroborationReport:
    bound: Fraction
    inspected: int
    hits: tuple[tuple[Quaternion, int], ...]
    status: str


@dataclass(frozen=True)
class ConditionSet:
    """What a kind-specific derivation hands to the prime search."""

    object_kind: ObjectKind
    residue_conditions: tuple[tuple[int, int], ...]
    excluded_primes: frozenset[int]
    ideal_conditions: tuple[tuple[QuadElem, int], ...] = ()
    heuristic: bool = False
    derivation_log: tuple[str, ...] = ()


@dataclass(frozen=True)
class SeparationCertificate:
    object_kind: ObjectKind
    residue_conditions: tuple[tuple[int, int], ...]
    excluded_primes: frozenset[int]
    witness_prime: int
    ideal_conditions: tuple[tuple[QuadElem, int], ...] = ()
    heuristic: bool = False
    derivation_log: tuple[str, ...] = ()
    corroboration: Optional[CorroborationReport] = None

    def is_sound(self) -> bool:
        """Every condition holds at the witness and the witness avoids the exclusions."""
        p = self.witness_prime
        if p in self.excluded_primes:
            return False
        for value, symbol in self.residue_conditions:
            if value % p == 0 or legendre(value, p) != symbol:
                return False
        for beta, symbol in self.ideal_conditions:
            try:
                square = is_square_mod_P(beta, p)
            except DomainError:
                return False
            if square != (symbol == 1):
                return False
        return True

    def with_corroboration(self, report: CorroborationReport) -> "SeparationCertificate":
        return replace(self, corroboration=report)


# ─── Shared helpers ───────────────────────────────────────────────────────────

def base_exclusions(order: OrderDesc) -> set[int]:
    """Prime factors of 2abDD′."""
    params = order.params
    d, d_prime = order.conductors
    return set(factorint(abs(2 * params.a * params.b * d * d_prime)))


def _primes_of(*values: Fraction | int) -> set[int]:
    primes: set[int] = set()
    for v in values:
        if v != 0:
            primes |= prime_support(v)
    return primes


def _integerize(coeffs: tuple[Fraction, Fraction, Fraction]) -> QuadraticFormZ:
    kappa = reduce(lcm, (c.denominator for c in coeffs), 1)
    return QuadraticFormZ(kappa, tuple(int(c * kappa) for c in coeffs))


def canonical_direction_element(z: QuadElem) -> QuadElem:
    """
    The primitive η = s + t√a ∈ Z[√a] with η·z̄ purely imaginary, first
    nonzero coordinate positive. For z = u + v√a this is (s, t) ∝ (va, u).
    """
    if z.is_zero():
        raise DomainError("direction of the zero element")
    s, t = z.y * z.a, z.x
    scale = lcm(s.denominator, t.denominator)
    s_int, t_int = int(s * scale), int(t * scale)
    content = gcd(s_int, t_int)
    s_int, t_int = s_int // content, t_int // content
    if s_int < 0 or (s_int == 0 and t_int < 0):
        s_int, t_int = -s_int, -t_int
    return QuadElem(s_int, t_int, z.a)


def maps_to(alpha: Quaternion, source: SeparableObject, target: SeparableObject) -> bool:
    """Whether α sends ``source`` exactly onto ``target``."""
    if isinstance(source, Point3):
        return isinstance(target, Point3) and act(alpha, source) == target
    if isinstance(source, GeodesicDesc):
        return isinstance(target, GeodesicDesc) and act_form(alpha, source) == target
    if not isinstance(target, (HalfPlane, HalfSphere)):
        return False
    return image_of_trace(alpha, source.trace) == target.trace


# ─── Points ───────────────────────────────────────────────────────────────────

def point_conditions(x1: Point3, order: OrderDesc) -> tuple[QuadraticFormZ, QuadElem]:
    """
    Eliminate η and m from a self-map α = ξ + mη₀Ω of x₁ = z₁ + t₁j.

    Fixing x₁ forces η̄z₁ + ηz̄₁ = 0, so η = mη₀; the vertical coordinate then
    ties m linearly to ξ, and N(α) becomes a positive-definite form in the
    coordinates (X, Y) of 2D′ξ.
    """
    z1 = x1.z
    if z1.is_zero():
        raise DomainError("z₁ = 0: the point lies on the vertical axis")
    params = order.params
    a, b = params.a, params.b
    _, d_prime = order.conductors
    eta0 = canonical_direction_element(z1)
    w = eta0.conj() * z1
    k = 1 + b * (x1.t_sq + z1.norm())
    scale = d_prime * d_prime * eta0.norm() * k * k
    c1 = Fraction(1, 4 * d_prime * d_prime) - b * w.x * w.x / scale
    c2 = -2 * a * b * w.x * w.y / scale
    c3 = Fraction(-a, 4 * d_prime * d_prime) - b * a * a * w.y * w.y / scale
    form = _integerize((c1, c2, c3))
    if form.delta >= 0:
        raise PreconditionError("definite_form", f"δ = {form.delta} is not negative")
    return form, eta0


def points_condition_set(points: list[Point3], order: OrderDesc) -> ConditionSet:
    x1 = points[0]
    form, eta0 = point_conditions(x1, order)
    a = order.params.a
    log = (
        f"η₀ = {eta0}",
        f"{form.kappa}·N = {form.coeffs[0]}X² + {form.coeffs[1]}XY + {form.coeffs[2]}Y²",
        f"δ = {form.delta}, squarefree kernel {form.kernel}",
        "a self-map of norm p needs (a/p) = +1 or (δ/p) = +1",
    )
    excluded = base_exclusions(order) | _primes_of(form.kappa, form.delta)
    return ConditionSet(
        ObjectKind.POINTS,
        ((a, -1), (form.kernel, -1)),
        frozenset(excluded),
        derivation_log=log,
    )


# ─── Geodesics ────────────────────────────────────────────────────────────────

def _integral_scale(u: QuadElem) -> int:
    """Smallest L > 0 with L²·u ∈ Z[√a]."""
    den = lcm(u.x.denominator, u.y.denominator)
    scale = 1
    for prime, exp in factorint(den).items():
        scale *= prime ** ((exp + 1) // 2)
    return scale


def is_square_in_field(u: QuadElem) -> bool:
    if u.is_zero():
        return True
    if u.is_rational():
        return is_rational_square(u.x) or is_rational_square(u.x / u.a)
    n = u.norm()
    if not is_rational_square(n):
        return False
    # u = (x + y√a)² gives x² = (Re u ± √N(u))/2
    root = Fraction(isqrt(n.numerator), isqrt(n.denominator))
    return any(
        is_rational_square((u.x + sgn * root) / 2) for sgn in (1, -1)
    )


def geodesic_invariant(geo: GeodesicDesc) -> QuadElem:
    """Discriminant of the normalized form, scaled into Z[√a] by a square."""
    disc = geo.discriminant()
    scale = _integral_scale(disc)
    return disc * (scale * scale)


def geodesics_condition_set(geodesics: list[GeodesicDesc], order: OrderDesc) -> ConditionSet:
    a = order.params.a
    u = geodesic_invariant(geodesics[0])
    excluded = base_exclusions(order)
    log = [f"disc invariant u = {u}"]
    if is_square_in_field(u):
        log.append("u is a square in F: no residue obstruction, corroboration only")
        logger.warning("geodesic %s has square discriminant; certificate is heuristic", geodesics[0].form)
        return ConditionSet(
            ObjectKind.GEODESICS, ((a, -1),), frozenset(excluded),
            heuristic=True, derivation_log=tuple(log),
        )
    if u.is_rational():
        kernel = square_analysis(u.x).squarefree_kernel
        excluded |= _primes_of(u.x)
        log.append(
            f"u rational: the P-level test is vacuous at inert p, using (kernel(u)/p) = ({kernel}/p) = -1"
        )
        return ConditionSet(
            ObjectKind.GEODESICS, ((a, -1), (kernel, -1)), frozenset(excluded),
            derivation_log=tuple(log),
        )
    if is_rational_square(u.norm()):
        log.append("N(u) is a rational square: u is a square at every inert P, corroboration only")
        logger.warning("geodesic invariant %s has square norm; certificate is heuristic", u)
        return ConditionSet(
            ObjectKind.GEODESICS, ((a, -1),), frozenset(excluded | _primes_of(u.norm())),
            heuristic=True, derivation_log=tuple(log),
        )
    excluded |= _primes_of(u.norm())
    log.append("interpretation: u must be a non-square modulo the prime P over p")
    return ConditionSet(
        ObjectKind.GEODESICS, ((a, -1),), frozenset(excluded),
        ideal_conditions=((u, -1),), derivation_log=tuple(log),
    )


# ─── Half-planes ──────────────────────────────────────────────────────────────

def halfplane_condition_set(gamma1: Quaternion, order: OrderDesc) -> ConditionSet:
    a = order.params.a
    trace = gamma1.trace()
    if trace.denominator != 1:
        raise PreconditionError("integral_trace", f"Tr(γ₁) = {trace}")
    c = int(trace * trace - 4)
    if c <= 0:
        raise PreconditionError("hyperbolic", f"Tr(γ₁)² − 4 = {c}")
    kernel = square_analysis(c).squarefree_kernel
    log = (
        f"Tr(γ₁) = {trace}, c = Tr(γ₁)² − 4 = {c}, squarefree kernel {kernel}",
        "4|η₁|²N(α) = |η|²(4λ² + 4 − Tr(γ₁)²) makes c a square mod p for any self-map",
    )
    return ConditionSet(
        ObjectKind.HALFPLANES,
        ((a, -1), (kernel, -1)),
        frozenset(base_exclusions(order) | _primes_of(c)),
        derivation_log=log,
    )


# ─── Half-spheres ─────────────────────────────────────────────────────────────

def sphere_condition_set(sphere: HalfSphere, order: OrderDesc) -> ConditionSet:
    params = order.params
    a, b = params.a, params.b
    a1, r_sq = sphere.center, sphere.radius_sq
    if a1.is_zero():
        raise DomainError("the center a₁ must be nonzero")
    eta1 = canonical_direction_element(a1)
    q = 1 + b * (a1.norm() - r_sq)
    excluded = base_exclusions(order) | _primes_of(eta1.norm())
    log = [f"η₁ = {eta1}, |η₁|² = {eta1.norm()}", f"q = 1 + b(|a₁|² − r²) = {q}"]
    if q == 0:
        value = b * eta1.norm()
        kernel = square_analysis(value).squarefree_kernel
        log.append(f"q = 0: r²N(α) = m² − b|η₁|²l², kernel of b|η₁|² is {kernel}")
    else:
        zeta = a1 / q
        one_minus = 1 - 4 * b * zeta.norm()
        value = a * one_minus
        kernel = square_analysis(value).squarefree_kernel
        excluded |= _primes_of(one_minus, zeta.norm())
        log.append(f"ζ = {zeta}, a(1 − 4b|ζ|²) = {value}, squarefree kernel {kernel}")
        log.append("ε = −1 forced; a self-map needs a(1 − 4b|ζ|²) to be a square mod p")
    return ConditionSet(
        ObjectKind.HALFSPHERES,
        ((a, -1), (kernel, -1)),
        frozenset(excluded),
        derivation_log=tuple(log),
    )
