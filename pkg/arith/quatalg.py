"""
The quaternion algebra (a, b / Q): elements ξ + ηΩ with ξ, η ∈ F = Q(√a),
Ω² = b and √a·Ω = −Ω·√a.

Also holds the matrix embedding φ into M(2, F), orders with their conductors,
the class-(K₂ˢ) gate, and bounded enumeration of the elements of I₀ of a
given norm.

Usage:
    from arith.quatalg import AlgebraParams, Quaternion, standard_order
    params = AlgebraParams(-2, 13)
    g = Quaternion.of(QuadElem(10, 3, -2), -3, params)
    g.norm()                                # → Fraction(1)
    enumerate_norm_elements(standard_order(params), 3, Fraction(0))
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt, lcm
from typing import Iterable, NamedTuple, Union

from sympy import Matrix, Rational, isprime

from arith.exact import QuadElem, is_squarefree, ord_p, rat
from arith.numthy import legendre
from errors import (
    DomainError,
    ParameterMismatchError,
    PreconditionError,
    UnsupportedError,
    ValidationError,
)

logger = logging.getLogger(__name__)

Coeff = Union[QuadElem, int, Fraction]


# ─── Parameters ───────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class AlgebraParams:
    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a in (0, 1) or not is_squarefree(self.a):
            raise DomainError(f"a must be squarefree and not 0 or 1, got {self.a}")
        if self.b <= 0 or not is_squarefree(self.b):
            raise DomainError(f"b must be a positive squarefree integer, got {self.b}")

    def elem(self, value: Coeff) -> QuadElem:
        return QuadElem.of(value, self.a)

    @property
    def omega(self) -> QuadElem:
        """√a as a field element."""
        return QuadElem.sqrt_a(self.a)


# ─── 2×2 matrices over F ──────────────────────────────────────────────────────

@dataclass(frozen=True)
class Mat2:
    """[[a, b], [c, d]] with entries in F."""

    a: QuadElem
    b: QuadElem
    c: QuadElem
    d: QuadElem

    @classmethod
    def from_rows(cls, rows, field: int) -> "Mat2":
        (a, b), (c, d) = rows
        return cls(*(QuadElem.of(v, field) for v in (a, b, c, d)))

    @property
    def field(self) -> int:
        return self.a.a

    def det(self) -> QuadElem:
        return self.a * self.d - self.b * self.c

    def trace(self) -> QuadElem:
        return self.a + self.d

    def adjugate(self) -> "Mat2":
        return Mat2(self.d, -self.b, -self.c, self.a)

    def __mul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def scale(self, k: Coeff) -> "Mat2":
        return Mat2(self.a * k, self.b * k, self.c * k, self.d * k)

    def rows(self) -> tuple[tuple[QuadElem, QuadElem], tuple[QuadElem, QuadElem]]:
        return (self.a, self.b), (self.c, self.d)


# ─── Quaternions ──────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Quaternion:
    """ξ + ηΩ. Both coordinates live in Q(√a) with a = params.a."""

    xi: QuadElem
    eta: QuadElem
    params: AlgebraParams

    def __post_init__(self) -> None:
        if self.xi.a != self.params.a or self.eta.a != self.params.a:
            raise ParameterMismatchError(
                f"coordinates must lie in Q(√{self.params.a})"
            )

    @classmethod
    def of(cls, xi: Coeff, eta: Coeff, params: AlgebraParams) -> "Quaternion":
        return cls(params.elem(xi), params.elem(eta), params)

    @classmethod
    def scalar(cls, value: Coeff, params: AlgebraParams) -> "Quaternion":
        return cls.of(value, 0, params)

    @classmethod
    def big_omega(cls, params: AlgebraParams) -> "Quaternion":
        return cls.of(0, 1, params)

    def _check(self, other: "Quaternion") -> None:
        if other.params != self.params:
            raise ParameterMismatchError(
                f"algebras ({self.params.a},{self.params.b}) and ({other.params.a},{other.params.b}) differ"
            )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QuadElem)) and not isinstance(other, bool):
            other = Quaternion.scalar(other, self.params)
        if not isinstance(other, Quaternion):
            return NotImplemented
        self._check(other)
        b = self.params.b
        return Quaternion(
            self.xi * other.xi + self.eta * other.eta.conj() * b,
            self.xi * other.eta + self.eta * other.xi.conj(),
            self.params,
        )

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Quaternion(self.xi * other, self.eta * other, self.params)
        return NotImplemented

    def __add__(self, other: "Quaternion") -> "Quaternion":
        self._check(other)
        return Quaternion(self.xi + other.xi, self.eta + other.eta, self.params)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        self._check(other)
        return Quaternion(self.xi - other.xi, self.eta - other.eta, self.params)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.xi, -self.eta, self.params)

    def conj(self) -> "Quaternion":
        return Quaternion(self.xi.conj(), -self.eta, self.params)

    def norm(self) -> Fraction:
        return self.xi.norm() - self.params.b * self.eta.norm()

    def trace(self) -> Fraction:
        return self.xi.trace()

    def is_zero(self) -> bool:
        return self.xi.is_zero() and self.eta.is_zero()

    def is_scalar(self) -> bool:
        return self.eta.is_zero() and self.xi.is_rational()

    def coords(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """Coordinates in the Q-basis 1, √a, Ω, √aΩ."""
        return (self.xi.x, self.xi.y, self.eta.x, self.eta.y)

    def sort_key(self) -> tuple[Fraction, ...]:
        return (self.eta.norm(), *self.eta.sort_key(), *self.xi.sort_key())

    def render(self) -> str:
        return f"{self.xi.render()} ; {self.eta.render()}"

    def __str__(self) -> str:
        return self.render()


def q_mul(alpha: Quaternion, beta: Quaternion) -> Quaternion:
    return alpha * beta


def q_conj_norm_trace(alpha: Quaternion) -> tuple[Quaternion, Fraction, Fraction]:
    return alpha.conj(), alpha.norm(), alpha.trace()


def phi_embed(alpha: Quaternion) -> Mat2:
    """φ(ξ + ηΩ) = [[ξ, η], [bη̄, ξ̄]]."""
    xi, eta = alpha.xi, alpha.eta
    return Mat2(xi, eta, eta.conj() * alpha.params.b, xi.conj())


def comatrix(alpha: Quaternion) -> Quaternion:
    """Transpose of the comatrix of φ(α), pulled back: the conjugate."""
    return alpha.conj()


def reduce_to_self_map(alpha: Quaternion, alpha_i: Quaternion) -> Quaternion:
    """
    comatrix(α_i)·α. When α and α_i both send G₁ to G_i this element fixes G₁,
    with norm N(α)·N(α_i).
    """
    return comatrix(alpha_i) * alpha


# ─── Class gates ──────────────────────────────────────────────────────────────

class DivisionCert(str, Enum):
    CERTIFIED_DIVISION = "CertifiedDivision"
    POSSIBLY_MATRIX = "PossiblyMatrix"


def is_division_certified(a: int, b: int) -> DivisionCert:
    """One-sided: b an odd prime with (a/b) = −1 rules out the matrix algebra."""
    if b > 2 and isprime(b) and legendre(a, b) == -1:
        return DivisionCert.CERTIFIED_DIVISION
    return DivisionCert.POSSIBLY_MATRIX


class K2sResult(NamedTuple):
    member: bool
    symbols: tuple[int, int, int] | None
    reasons: tuple[str, ...]


def k2s_check(a: int, b: int) -> K2sResult:
    """a < 0 squarefree, b prime ≠ 3, (a/b) = −1, (−1/b) = 1, (−3/b) = 1."""
    reasons: list[str] = []
    if a >= 0:
        reasons.append("a must be negative")
    elif not is_squarefree(a):
        reasons.append("a must be squarefree")
    symbols = None
    if b < 3 or not isprime(b):
        reasons.append("b must be an odd prime")
    elif b == 3:
        reasons.append("b = 3 is excluded")
    else:
        symbols = (legendre(a, b), legendre(-1, b), legendre(-3, b))
        for name, value, want in zip(("(a/b)", "(-1/b)", "(-3/b)"), symbols, (-1, 1, 1)):
            if value != want:
                reasons.append(f"{name} = {value:+d}, need {want:+d}")
    return K2sResult(not reasons, symbols, tuple(reasons))


def elliptic_obstruction(a: int, b: int) -> bool:
    """True when one of a, −a, −3a is a square mod b, so torsion-freeness is not certified."""
    if b == 3 or b < 3 or not isprime(b):
        raise DomainError(f"b must be an odd prime other than 3, got {b}")
    return any(legendre(v, b) in (0, 1) for v in (a, -a, -3 * a))


def lemma_even_valuation(xi: QuadElem, b: int) -> bool:
    """ord_b N(ξ) is even for nonzero ξ whenever b is inert in F."""
    if xi.is_zero():
        raise DomainError("ξ must be nonzero")
    return ord_p(xi.norm(), b) % 2 == 0


# ─── Orders ───────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class OrderDesc:
    basis: tuple[Quaternion, Quaternion, Quaternion, Quaternion]
    conductors: tuple[int, int]
    standard: bool = False

    @property
    def params(self) -> AlgebraParams:
        return self.basis[0].params


def _theta(params: AlgebraParams) -> QuadElem:
    if params.a % 4 == 1:
        return QuadElem(Fraction(1, 2), Fraction(1, 2), params.a)
    return params.omega


def _i0_basis(params: AlgebraParams) -> tuple[Quaternion, ...]:
    theta = _theta(params)
    return (
        Quaternion.scalar(1, params),
        Quaternion.of(theta, 0, params),
        Quaternion.big_omega(params),
        Quaternion.of(0, theta, params),
    )


def _to_fraction(value) -> Fraction:
    value = Rational(value)
    return Fraction(int(value.p), int(value.q))


def _matrix(basis: Iterable[Quaternion]) -> Matrix:
    return Matrix([[Rational(c.numerator, c.denominator) for c in q.coords()] for q in basis])


def _coordinates_in(alpha: Quaternion, basis_matrix: Matrix) -> list[Fraction]:
    row = Matrix([[Rational(c.numerator, c.denominator) for c in alpha.coords()]])
    solved = row * basis_matrix.inv()
    return [_to_fraction(v) for v in solved]


def _is_integral_row(values: Iterable[Fraction]) -> bool:
    return all(v.denominator == 1 for v in values)


def _denominator_lcm(values: Iterable[Fraction]) -> int:
    return reduce(lcm, (v.denominator for v in values), 1)


def order_conductors(basis: Iterable[Quaternion]) -> tuple[int, int]:
    """
    Validate that ``basis`` spans an order and return (D, D′) with
    D′·I ⊂ D·I₀ ⊂ I.
    """
    basis = tuple(basis)
    if len(basis) != 4:
        raise ValidationError("rank", f"expected 4 basis elements, got {len(basis)}")
    params = basis[0].params
    b_i = _matrix(basis)
    if b_i.det() == 0:
        raise ValidationError("linear_independence", "basis elements are linearly dependent")
    one = Quaternion.scalar(1, params)
    if not _is_integral_row(_coordinates_in(one, b_i)):
        raise ValidationError("contains_one", "1 is not in the lattice")
    for q in basis:
        if q.norm().denominator != 1 or q.trace().denominator != 1:
            raise ValidationError("integral_norms_traces", f"{q} has non-integral norm or trace")
    for left in basis:
        for right in basis:
            if not _is_integral_row(_coordinates_in(left * right, b_i)):
                raise ValidationError("closure", f"product ({left})·({right}) leaves the lattice")

    # rows of T: the I₀ basis written in the I basis
    b_0 = _matrix(_i0_basis(params))
    t = b_0 * b_i.inv()
    t_entries = [_to_fraction(v) for v in t]
    d = _denominator_lcm(t_entries)
    t_inv = [_to_fraction(v) / d for v in t.inv()]
    d_prime = _denominator_lcm(t_inv)
    logger.debug("order conductors D=%d D'=%d", d, d_prime)
    return d, d_prime


def make_order(basis: Iterable[Quaternion]) -> OrderDesc:
    basis = tuple(basis)
    return OrderDesc(basis, order_conductors(basis), standard=basis == _i0_basis(basis[0].params))


def standard_order(params: AlgebraParams) -> OrderDesc:
    """I₀ = O_F ⊕ O_F·Ω with basis 1, θ, Ω, θΩ."""
    return OrderDesc(_i0_basis(params), (1, 1), standard=True)


def scalar_order(params: AlgebraParams, k: int) -> OrderDesc:
    """Z + k·I₀."""
    if k < 1:
        raise DomainError(f"index must be positive, got {k}")
    base = _i0_basis(params)
    return make_order((base[0], *(k * q for q in base[1:])))


def coordinates(alpha: Quaternion, order: OrderDesc) -> list[Fraction]:
    if alpha.params != order.params:
        raise ParameterMismatchError("element and order live in different algebras")
    if order.standard:
        # ξ = c₀ + c₁θ: θ = √a gives (x, y), θ = (1+√a)/2 gives (x − y, 2y)
        if alpha.params.a % 4 == 1:
            xi, eta = alpha.xi, alpha.eta
            return [xi.x - xi.y, 2 * xi.y, eta.x - eta.y, 2 * eta.y]
        return list(alpha.coords())
    return _coordinates_in(alpha, _matrix(order.basis))


def is_primitive(alpha: Quaternion, order: OrderDesc) -> bool:
    coords = coordinates(alpha, order)
    if not _is_integral_row(coords):
        raise PreconditionError("membership", f"{alpha} is not in the order")
    return reduce(gcd, (c.numerator for c in coords), 0) == 1


# ─── Enumeration in I₀ ────────────────────────────────────────────────────────

def integral_elements_of_norm(c: int, a: int) -> list[QuadElem]:
    """All ξ ∈ O_F with N(ξ) = c, for a < 0."""
    if a >= 0:
        raise UnsupportedError("norm equations are finite only for imaginary fields")
    if c < 0:
        return []
    if c == 0:
        return [QuadElem(0, 0, a)]
    found: set[QuadElem] = set()
    half = a % 4 == 1
    # a ≡ 1 mod 4: ξ = (X + Y√a)/2 with X ≡ Y mod 2 and X² − aY² = 4c
    target = 4 * c if half else c
    for y in range(isqrt(target // -a) + 1):
        rest = target + a * y * y
        x = isqrt(rest)
        if x * x != rest or (half and (x - y) % 2):
            continue
        for sx in {x, -x}:
            for sy in {y, -y}:
                if half:
                    found.add(QuadElem(Fraction(sx, 2), Fraction(sy, 2), a))
                else:
                    found.add(QuadElem(sx, sy, a))
    return sorted(found, key=QuadElem.sort_key)


def enumerate_norm_elements(
    order: OrderDesc,
    n: int,
    eta_norm_bound: Fraction | int,
    primitive_only: bool = False,
) -> list[Quaternion]:
    """All α = ξ + ηΩ ∈ I₀ with N(α) = n and N(η) ≤ eta_norm_bound."""
    if not order.standard:
        raise UnsupportedError("enumeration is only available in I₀")
    params = order.params
    if params.a >= 0:
        raise UnsupportedError("enumeration needs a < 0 (positive definite N(ξ))")
    if n < 1:
        raise DomainError(f"norm must be a positive integer, got {n}")
    bound = int(Fraction(eta_norm_bound))
    result: list[Quaternion] = []
    for eta_norm in range(bound + 1):
        etas = integral_elements_of_norm(eta_norm, params.a)
        if not etas:
            continue
        xis = integral_elements_of_norm(n + params.b * eta_norm, params.a)
        for eta in etas:
            for xi in xis:
                alpha = Quaternion(xi, eta, params)
                if primitive_only and not is_primitive(alpha, order):
                    continue
                result.append(alpha)
    result.sort(key=Quaternion.sort_key)
    logger.debug("enumerated %d elements of norm %d with N(η) ≤ %d", len(result), n, bound)
    return result


def prop6_check(alpha: Quaternion, p: int, order: OrderDesc) -> bool:
    """
    For α primitive with p | N(α), ord_p(2abDD′) = 0 and (a/p) = −1, check
    ord_p N(ξ) = ord_p N(η) = 0.
    """
    params = order.params
    if not is_primitive(alpha, order):
        raise PreconditionError("primitive", f"{alpha} is not primitive")
    d, d_prime = order.conductors
    if ord_p(2 * params.a * params.b * d * d_prime, p) != 0:
        raise PreconditionError("ord_p(2abDD')=0", f"{p} divides 2abDD'")
    if legendre(params.a, p) != -1:
        raise PreconditionError("(a/p)=-1", f"({params.a}/{p}) = {legendre(params.a, p):+d}")
    norm = alpha.norm()
    if norm == 0 or norm.denominator != 1 or norm.numerator % p:
        raise PreconditionError("p|N", f"{p} does not divide N(α) = {norm}")
    # D′ξ/D is integral at p and differs from ξ by a p-adic unit
    xi = alpha.xi * Fraction(d_prime, d)
    if xi.is_zero() or alpha.eta.is_zero():
        return False
    return ord_p(xi.norm(), p) == 0 and ord_p(alpha.eta.norm(), p) == 0
