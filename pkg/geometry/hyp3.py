"""
Exact hyperbolic 3-space H³ = {z + tj : z ∈ C, t > 0}, with C modelled by the
imaginary quadratic field F = Q(√a), a < 0.

Points keep t² rather than t: the Poincaré extension only ever produces t²
as a rational, while t itself is irrational on S⁰ (t = 1/√b at its top).

Boundary objects are exact too: traces of itgs are lines or circles of
P¹(C) with data in F and squared radius in Q, and geodesics are classes of
binary quadratic forms over F whose roots are the two endpoints.

Usage:
    from geometry.hyp3 import Point3, act, classify, image_of_trace, Circle
    act(gamma, Point3(QuadElem(0, 0, -2), Fraction(1)))
    image_of_trace(gamma, Circle(QuadElem(0, 0, -2), Fraction(1, 13)))
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import isqrt
from typing import Optional, Union

from arith.exact import QuadElem, rat
from arith.quatalg import (
    AlgebraParams,
    Mat2,
    Quaternion,
    enumerate_norm_elements,
    phi_embed,
    standard_order,
)
from errors import DomainError, UnsupportedError

logger = logging.getLogger(__name__)

Isometry = Union[Quaternion, Mat2]
# None stands for the point ∞ of P¹(C)
BoundaryPoint_ = Optional[QuadElem]


def as_matrix(g: Isometry) -> Mat2:
    return phi_embed(g) if isinstance(g, Quaternion) else g


def _im(e: QuadElem) -> Fraction:
    """√a-coordinate; Im(e) up to the positive factor √|a|."""
    return e.y


def _re(e: QuadElem) -> Fraction:
    return e.x


# ─── Points ───────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Point3:
    """z + tj with z ∈ F and t > 0, stored through t²."""

    z: QuadElem
    t_sq: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "t_sq", rat(self.t_sq))
        if self.z.a >= 0:
            raise UnsupportedError("H³ points need an imaginary field (a < 0)")
        if self.t_sq <= 0:
            raise DomainError(f"t² must be positive, got {self.t_sq}")

    @classmethod
    def from_t(cls, z: QuadElem, t: Fraction | int) -> "Point3":
        t = rat(t)
        if t <= 0:
            raise DomainError(f"t must be positive, got {t}")
        return cls(z, t * t)

    @property
    def t(self) -> Fraction | None:
        """t itself when it is rational."""
        n, d = self.t_sq.numerator, self.t_sq.denominator
        rn, rd = isqrt(n), isqrt(d)
        if rn * rn == n and rd * rd == d:
            return Fraction(rn, rd)
        return None


def act(g: Isometry, x: Point3) -> Point3:
    """
    Poincaré extension of z ↦ (αz + β)/(γz + δ), valid for any nonzero
    determinant n (the formula is invariant under scaling the matrix):

        z′ = ((αz + β)·conj(γz + δ) + α·conj(γ)·t²) / Δ
        t′² = |n|²·t² / Δ²,   Δ = |γz + δ|² + |γ|²·t²
    """
    m = as_matrix(g)
    det = m.det()
    if det.is_zero():
        raise DomainError("isometry with zero determinant")
    cz_d = m.c * x.z + m.d
    delta = cz_d.norm() + m.c.norm() * x.t_sq
    z_new = ((m.a * x.z + m.b) * cz_d.conj() + m.a * m.c.conj() * x.t_sq) / delta
    return Point3(z_new, det.norm() * x.t_sq / (delta * delta))


def mobius(g: Isometry, z: BoundaryPoint_) -> BoundaryPoint_:
    """Action on P¹(C); None is ∞."""
    m = as_matrix(g)
    if z is None:
        return None if m.c.is_zero() else m.a / m.c
    den = m.c * z + m.d
    if den.is_zero():
        return None
    return (m.a * z + m.b) / den


# ─── Classification and fixed sets ────────────────────────────────────────────

class IsomTag(str, Enum):
    IDENTITY = "Identity"
    ELLIPTIC = "Elliptic"
    PARABOLIC = "Parabolic"
    HYPERBOLIC = "Hyperbolic"


@dataclass(frozen=True)
class IsomClass:
    tag: IsomTag
    trace_sq: QuadElem


def _is_scalar(m: Mat2) -> bool:
    return m.b.is_zero() and m.c.is_zero() and m.a == m.d


def classify(g: Isometry) -> IsomClass:
    """Trichotomy on Tr²/N; a non-real Tr²/N counts as hyperbolic."""
    m = as_matrix(g)
    det = m.det()
    if det.is_zero():
        raise DomainError("cannot classify a zero-determinant element")
    trace_sq = m.trace() * m.trace() / det
    if _is_scalar(m):
        return IsomClass(IsomTag.IDENTITY, trace_sq)
    if trace_sq.is_rational():
        value = trace_sq.x
        if value == 4:
            return IsomClass(IsomTag.PARABOLIC, trace_sq)
        if 0 <= value < 4:
            return IsomClass(IsomTag.ELLIPTIC, trace_sq)
    return IsomClass(IsomTag.HYPERBOLIC, trace_sq)


@dataclass(frozen=True)
class FixedGeodesic:
    """
    Elliptic fixed set. Semicircle over ``center`` of squared radius
    ``radius_sq``, whose boundary endpoints lie along ``direction`` from the
    center. ``radius_sq`` None means the vertical half-line over ``center``.
    """

    center: QuadElem
    radius_sq: Optional[Fraction]
    direction: Optional[QuadElem]

    def sample_points(self, count: int = 3) -> list[Point3]:
        """``count`` exact points of the geodesic, the apex among them for odd ``count``."""
        if self.radius_sq is None:
            return [Point3(self.center, k) for k in range(1, count + 1)]
        d_norm = self.direction.norm()
        offsets = range(-(count // 2), count - count // 2)
        # step n with (span/n)²·|direction|² < radius², so every t² stays positive
        span, n = count // 2 + 1, 1
        while Fraction(span, n) ** 2 * d_norm >= self.radius_sq:
            n *= 2
        return [
            Point3(self.center + self.direction * Fraction(j, n), self.radius_sq - Fraction(j, n) ** 2 * d_norm)
            for j in offsets
        ]


@dataclass(frozen=True)
class BoundaryPoint:
    point: Optional[QuadElem]


@dataclass(frozen=True)
class GeodesicDesc:
    """Class of A·z² + B·z + C, normalized so the first nonzero coefficient is 1."""

    form: tuple[QuadElem, QuadElem, QuadElem]

    @classmethod
    def from_form(cls, A: QuadElem, B: QuadElem, C: QuadElem) -> "GeodesicDesc":
        coeffs = (A, B, C)
        lead = next((c for c in coeffs if not c.is_zero()), None)
        if lead is None or (A.is_zero() and B.is_zero()):
            raise DomainError("degenerate quadratic form")
        normalized = tuple(c / lead for c in coeffs)
        desc = cls(normalized)
        if desc.discriminant().is_zero():
            raise DomainError("quadratic form with zero discriminant")
        return desc

    def discriminant(self) -> QuadElem:
        A, B, C = self.form
        return B * B - A * C * 4

    def contains_endpoint(self, z: BoundaryPoint_) -> bool:
        A, B, C = self.form
        if z is None:
            return A.is_zero()
        return (A * z * z + B * z + C).is_zero()


def geodesic_from_endpoints(z1: BoundaryPoint_, z2: BoundaryPoint_) -> GeodesicDesc:
    if z1 is None and z2 is None:
        raise DomainError("a geodesic needs two distinct endpoints")
    if z1 is None:
        z1, z2 = z2, z1
    a = z1.a
    if z2 is None:
        return GeodesicDesc.from_form(QuadElem(0, 0, a), QuadElem(1, 0, a), -z1)
    if z1 == z2:
        raise DomainError("a geodesic needs two distinct endpoints")
    return GeodesicDesc.from_form(QuadElem(1, 0, a), -(z1 + z2), z1 * z2)


def act_form(g: Isometry, geo: GeodesicDesc) -> GeodesicDesc:
    """Image of a geodesic: Q∘g⁻¹, with g⁻¹ taken as the adjugate."""
    m = as_matrix(g)
    A, B, C = geo.form
    a, b, c, d = m.a, m.b, m.c, m.d
    return GeodesicDesc.from_form(
        A * d * d - B * d * c + C * c * c,
        -(A * d * b * 2) + B * (d * a + b * c) - C * c * a * 2,
        A * b * b - B * b * a + C * a * a,
    )


def _normalize_direction(d: QuadElem) -> QuadElem:
    if d.is_zero():
        raise DomainError("direction must be nonzero")
    lead = d.x if d.x != 0 else d.y
    return d / lead


def fixed_set(g: Isometry) -> Union[FixedGeodesic, BoundaryPoint, GeodesicDesc]:
    m = as_matrix(g)
    kind = classify(m)
    if kind.tag is IsomTag.IDENTITY:
        raise DomainError("±Id fixes everything")
    det = m.det()
    if kind.tag is IsomTag.PARABOLIC:
        if m.c.is_zero():
            return BoundaryPoint(None)
        return BoundaryPoint((m.a - m.d) / (m.c * 2))
    if kind.tag is IsomTag.ELLIPTIC:
        if m.c.is_zero():
            return FixedGeodesic(m.b / (m.d - m.a), None, None)
        if not det.is_rational():
            raise UnsupportedError("elliptic fixed sets need a rational determinant")
        # endpoints (a − d ± √(Tr² − 4det)) / 2c, so radius² = |Tr² − 4det| / 4|c|²
        radius_sq = (4 - kind.trace_sq.x) * abs(det.x) / (m.c.norm() * 4)
        # Tr² − 4det < 0 when det > 0: the root is imaginary, endpoints along √a·c̄
        # Tr² − 4det > 0 when det < 0: the root is real, endpoints along c̄
        direction = QuadElem.sqrt_a(m.a.a) * m.c.conj() if det.x > 0 else m.c.conj()
        return FixedGeodesic((m.a - m.d) / (m.c * 2), radius_sq, _normalize_direction(direction))
    return GeodesicDesc.from_form(m.c, m.d - m.a, -m.b)


# ─── Traces and itgs ──────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Line:
    """Boundary line; ``point`` is the foot of the perpendicular from 0."""

    point: QuadElem
    direction: QuadElem

    def __post_init__(self) -> None:
        d = _normalize_direction(self.direction)
        # foot = p − Re(p·d̄)/|d|²·d
        foot = self.point - d * (_re(self.point * d.conj()) / d.norm())
        object.__setattr__(self, "direction", d)
        object.__setattr__(self, "point", foot)

    @classmethod
    def through(cls, point: QuadElem, direction: QuadElem) -> "Line":
        return cls(point, direction)


@dataclass(frozen=True)
class Circle:
    center: QuadElem
    radius_sq: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "radius_sq", rat(self.radius_sq))
        if self.radius_sq <= 0:
            raise DomainError(f"radius² must be positive, got {self.radius_sq}")


TraceCircle = Union[Line, Circle]


@dataclass(frozen=True)
class HalfPlane:
    trace: Line


@dataclass(frozen=True)
class HalfSphere:
    trace: Circle

    @property
    def center(self) -> QuadElem:
        return self.trace.center

    @property
    def radius_sq(self) -> Fraction:
        return self.trace.radius_sq


ItgsDesc = Union[HalfPlane, HalfSphere]


def itgs_of(trace: TraceCircle) -> ItgsDesc:
    return HalfPlane(trace) if isinstance(trace, Line) else HalfSphere(trace)


def s0(params: AlgebraParams) -> HalfSphere:
    """S⁰, the half-sphere of radius 1/√b over 0."""
    return HalfSphere(Circle(QuadElem(0, 0, params.a), Fraction(1, params.b)))


def is_type_s0(surface: ItgsDesc, params: AlgebraParams) -> bool:
    return surface == s0(params)


def trace_contains(trace: TraceCircle, z: BoundaryPoint_) -> bool:
    if isinstance(trace, Line):
        if z is None:
            return True
        return _im((z - trace.point) * trace.direction.conj()) == 0
    if z is None:
        return False
    return (z - trace.center).norm() == trace.radius_sq


def _fit(w1: BoundaryPoint_, w2: BoundaryPoint_, w3: BoundaryPoint_) -> TraceCircle:
    """Line or circle through three distinct points of P¹(C)."""
    finite = [w for w in (w1, w2, w3) if w is not None]
    if len(finite) == 2:
        return Line.through(finite[0], finite[1] - finite[0])
    u, v = w2 - w1, w3 - w1
    if _im(u * v.conj()) == 0:
        return Line.through(w1, u)
    # |c − w1|² = |c − wk|² is linear in c = X + Y√a:
    #   2(wk.x − w1.x)X − 2a(wk.y − w1.y)Y = N(wk) − N(w1)
    a = w1.a
    r1 = (2 * (w2.x - w1.x), -2 * a * (w2.y - w1.y), w2.norm() - w1.norm())
    r2 = (2 * (w3.x - w1.x), -2 * a * (w3.y - w1.y), w3.norm() - w1.norm())
    det = r1[0] * r2[1] - r1[1] * r2[0]
    X = (r1[2] * r2[1] - r1[1] * r2[2]) / det
    Y = (r1[0] * r2[2] - r1[2] * r2[0]) / det
    center = QuadElem(X, Y, a)
    return Circle(center, (center - w1).norm())


def image_of_trace(g: Isometry, trace: TraceCircle) -> TraceCircle:
    """
    Exact image of a boundary line or circle.

    Lines go through three points (p, p + d, ∞). Circles use the
    decomposition g(z) = A/C + k/(z − ζ) with k = −det/C² and ζ = −D/C, since
    their points are generally not F-rational (S⁰ has none).
    """
    m = as_matrix(g)
    det = m.det()
    if det.is_zero():
        raise DomainError("isometry with zero determinant")
    if isinstance(trace, Line):
        p, d = trace.point, trace.direction
        return _fit(mobius(m, p), mobius(m, p + d), mobius(m, None))

    a1, r_sq = trace.center, trace.radius_sq
    if m.c.is_zero():
        scale = m.a / m.d
        return Circle(scale * a1 + m.b / m.d, scale.norm() * r_sq)
    shift = m.a / m.c
    k = -det / (m.c * m.c)
    zeta = -m.d / m.c
    c0 = a1 - zeta
    gap = c0.norm() - r_sq
    if gap == 0:
        # ζ on the circle: the image passes through ∞
        point = k / (c0 * 2) + shift
        return Line.through(point, k * QuadElem.sqrt_a(a1.a) * c0.conj())
    center = shift + k * c0.conj() / gap
    return Circle(center, k.norm() * r_sq / (gap * gap))


# ─── Intersections ────────────────────────────────────────────────────────────

class Empty:
    """Marker for an empty intersection."""

    def __eq__(self, other) -> bool:
        return isinstance(other, Empty)

    def __hash__(self) -> int:
        return hash("Empty")

    def __repr__(self) -> str:
        return "Empty()"


class Equal:
    def __eq__(self, other) -> bool:
        return isinstance(other, Equal)

    def __hash__(self) -> int:
        return hash("Equal")

    def __repr__(self) -> str:
        return "Equal()"


Intersection = Union[Empty, Equal, GeodesicDesc]


def _sphere_sphere(c1: Circle, c2: Circle) -> Intersection:
    d = c2.center - c1.center
    dist_sq = d.norm()
    r1, r2 = c1.radius_sq, c2.radius_sq
    if dist_sq == 0:
        return Empty()
    s = dist_sq - r1 - r2
    if s * s >= 4 * r1 * r2:
        return Empty()
    lam = (dist_sq + r1 - r2) / (2 * dist_sq)
    one = QuadElem(1, 0, d.a)
    return GeodesicDesc.from_form(
        one,
        -(c1.center * 2) - d * (2 * lam),
        c1.center * c1.center + d * c1.center * (2 * lam) + d * d * (r1 / dist_sq),
    )


def _sphere_plane(circle: Circle, line: Line) -> Intersection:
    d = line.direction
    rel = circle.center - line.point
    foot = line.point + d * (_re(rel * d.conj()) / d.norm())
    dist_sq = (circle.center - foot).norm()
    if dist_sq >= circle.radius_sq:
        return Empty()
    t = (circle.radius_sq - dist_sq) / d.norm()
    one = QuadElem(1, 0, d.a)
    return GeodesicDesc.from_form(one, -(foot * 2), foot * foot - d * d * t)


def _plane_plane(l1: Line, l2: Line) -> Intersection:
    cross = _im(l1.direction * l2.direction.conj())
    if cross == 0:
        return Empty()
    s = _im((l2.point - l1.point) * l2.direction.conj()) / cross
    z0 = l1.point + l1.direction * s
    a = z0.a
    return GeodesicDesc.from_form(QuadElem(0, 0, a), QuadElem(1, 0, a), -z0)


def itgs_intersect(s1: ItgsDesc, s2: ItgsDesc) -> Intersection:
    if s1 == s2:
        return Equal()
    t1, t2 = s1.trace, s2.trace
    if isinstance(t1, Circle) and isinstance(t2, Circle):
        return _sphere_sphere(t1, t2)
    if isinstance(t1, Circle):
        return _sphere_plane(t1, t2)
    if isinstance(t2, Circle):
        return _sphere_plane(t2, t1)
    return _plane_plane(t1, t2)


# ─── Maps onto S⁰ and the f invariant ─────────────────────────────────────────

def psi_map(gamma: Quaternion) -> Point3:
    """ψ(γ) = (2ξη / (1 + 2b|η|²), t) with t² = 1 / (b(1 + 2b|η|²)²); lands on S⁰."""
    if gamma.norm() != 1:
        raise DomainError(f"ψ needs a norm-1 element, got norm {gamma.norm()}")
    b = gamma.params.b
    scale = 1 + 2 * b * gamma.eta.norm()
    return Point3(gamma.xi * gamma.eta * 2 / scale, Fraction(1, b) / (scale * scale))


@dataclass(frozen=True)
class K1Point:
    """u + v·i + t·j with u, v, t in a real quadratic field (a > 0)."""

    u: QuadElem
    v: QuadElem
    t: QuadElem

    def __post_init__(self) -> None:
        if self.t.a <= 0:
            raise UnsupportedError("K1Point coordinates live in a real quadratic field")
        if self.t.sign() <= 0:
            raise DomainError("t must be positive")


def k1s_act(g: Quaternion, x: K1Point) -> K1Point:
    """Poincaré extension for a matrix with real entries in F, a > 0."""
    m = phi_embed(g)
    n = g.norm()
    if n == 0:
        raise DomainError("isometry with zero norm")
    A, B, C, D = m.a, m.b, m.c, m.d
    cu_d = C * x.u + D
    r_sq = x.v * x.v + x.t * x.t
    den = cu_d * cu_d + C * C * r_sq
    u = (A * C * (x.u * x.u + r_sq) + (A * D + B * C) * x.u + B * D) / den
    return K1Point(u, x.v * n / den, x.t * abs(n) / den)


def f_invariant(x: K1Point | Point3) -> QuadElem:
    """Im(z)/t in the real-field picture."""
    if isinstance(x, Point3):
        raise UnsupportedError("the f invariant is defined for real fields (a > 0)")
    return x.v / x.t


def f_check(g: Quaternion, x: K1Point) -> bool:
    return f_invariant(k1s_act(g, x)) == f_invariant(x)


# ─── Γ_R scan ─────────────────────────────────────────────────────────────────

def gamma_scan(params: AlgebraParams, eta_norm_bound: Fraction | int) -> dict:
    """Classify every norm-1 element of I₀ with N(η) ≤ bound."""
    elements = enumerate_norm_elements(standard_order(params), 1, eta_norm_bound)
    counts: Counter[str] = Counter()
    exceptional: list[Quaternion] = []
    for gamma in elements:
        tag = classify(gamma).tag
        counts[tag.value] += 1
        if tag in (IsomTag.ELLIPTIC, IsomTag.PARABOLIC):
            exceptional.append(gamma)
    logger.info("scanned %d elements of Γ_R, %d non-hyperbolic non-identity",
                len(elements), len(exceptional))
    return {"total": len(elements), "counts": dict(counts), "exceptional": exceptional}
