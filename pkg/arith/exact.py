"""
Exact scalars: rationals (``fractions.Fraction``) and the quadratic field F = Q(√a).

Every value here is immutable and normalized on construction, so equality is
structural. Text form of a field element is ``"x + y*sqrt(a)"`` with rationals
rendered ``"n/d"``; ``QuadElem.parse`` reads it back losslessly.

Usage:
    from arith.exact import QuadElem, ord_p, square_analysis
    g = QuadElem(10, 3, -2)            # 10 + 3√-2
    g.norm()                           # → Fraction(118)
    square_analysis(Fraction(-74800))  # → SquareAnalysis(False, -187)
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import NamedTuple, Union

from sympy import factorint, multiplicity

from errors import DomainError, ParameterMismatchError

logger = logging.getLogger(__name__)

Rat = Fraction
Scalar = Union[int, Fraction]


# ─── Rationals ────────────────────────────────────────────────────────────────

def rat(value: Union[int, Fraction, str]) -> Fraction:
    """Coerce an int, Fraction or ``"n/d"`` string to a normalized Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise DomainError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a rational: {value!r}") from exc
    raise DomainError(f"not a rational: {value!r}")


def rat_text(q: Fraction) -> str:
    return str(Fraction(q))


def is_rational_square(q: Fraction) -> bool:
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


def squarefree_kernel(n: int) -> int:
    """Signed squarefree part of a nonzero integer: n = kernel · m²."""
    if n == 0:
        raise DomainError("squarefree kernel of 0")
    kernel = -1 if n < 0 else 1
    for prime, exp in factorint(abs(n)).items():
        if exp % 2:
            kernel *= prime
    return kernel


@lru_cache(maxsize=1024)
def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(exp == 1 for exp in factorint(abs(n)).values())


def prime_support(q: Scalar) -> set[int]:
    """Primes dividing the numerator or denominator of q (empty for ±1)."""
    q = rat(q)
    if q == 0:
        raise DomainError("prime support of 0")
    primes = set(factorint(abs(q.numerator)))
    primes |= set(factorint(q.denominator))
    primes.discard(1)
    return primes


def ord_p(q: Scalar, p: int) -> int:
    """p-adic valuation of a nonzero rational; negative when p divides the denominator."""
    q = rat(q)
    if q == 0:
        raise DomainError("ord_p of zero is undefined")
    return multiplicity(p, abs(q.numerator)) - multiplicity(p, q.denominator)


class SquareAnalysis(NamedTuple):
    is_square: bool
    squarefree_kernel: int


def square_analysis(q: Scalar) -> SquareAnalysis:
    """
    Decide whether q is a rational square and return its squarefree kernel k,
    the integer with q = k · (rational)².
    """
    q = rat(q)
    if q == 0:
        raise DomainError("square analysis of zero")
    # n/d = n·d / d², so the kernel of n·d is the kernel of q
    kernel = squarefree_kernel(q.numerator * q.denominator)
    return SquareAnalysis(is_rational_square(q), kernel)


# ─── Quadratic field ──────────────────────────────────────────────────────────

@lru_cache(maxsize=256)
def _check_field(a: int) -> None:
    if a in (0, 1) or not is_squarefree(a):
        raise DomainError(f"field parameter must be squarefree and not 0 or 1, got {a}")


@dataclass(frozen=True)
class QuadElem:
    """x + y√a with x, y rational. Mixing two different ``a`` is an error."""

    x: Fraction
    y: Fraction
    a: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", rat(self.x))
        object.__setattr__(self, "y", rat(self.y))
        _check_field(self.a)

    # ── Constructors ─────────────────────────────────────────────────────

    @classmethod
    def of(cls, value: Union["QuadElem", Scalar], a: int) -> "QuadElem":
        if isinstance(value, QuadElem):
            if value.a != a:
                raise ParameterMismatchError(f"element of Q(√{value.a}) used in Q(√{a})")
            return value
        return cls(rat(value), Fraction(0), a)

    @classmethod
    def sqrt_a(cls, a: int) -> "QuadElem":
        return cls(Fraction(0), Fraction(1), a)

    @classmethod
    def parse(cls, text: str, a: int | None = None) -> "QuadElem":
        return parse_quad(text, a)

    # ── Arithmetic ───────────────────────────────────────────────────────

    def _coerce(self, other) -> "QuadElem":
        if isinstance(other, QuadElem):
            if other.a != self.a:
                raise ParameterMismatchError(
                    f"cannot combine elements of Q(√{self.a}) and Q(√{other.a})"
                )
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadElem(Fraction(other), Fraction(0), self.a)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.x + o.x, self.y + o.y, self.a)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.x - o.x, self.y - o.y, self.a)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self) -> "QuadElem":
        return QuadElem(-self.x, -self.y, self.a)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(
            self.x * o.x + self.a * self.y * o.y,
            self.x * o.y + self.y * o.x,
            self.a,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            raise DomainError("division by zero in Q(√a)")
        return QuadElem(self.x / n, -self.y / n, self.a)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int) -> "QuadElem":
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadElem(Fraction(1), Fraction(0), self.a)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # ── Field invariants ─────────────────────────────────────────────────

    def conj(self) -> "QuadElem":
        return QuadElem(self.x, -self.y, self.a)

    def norm(self) -> Fraction:
        return self.x * self.x - self.a * self.y * self.y

    def trace(self) -> Fraction:
        return 2 * self.x

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_rational(self) -> bool:
        return self.y == 0

    def is_integral(self) -> bool:
        return is_integral(self)

    def sign(self) -> int:
        """Sign as a real number; only meaningful for real fields (a > 0)."""
        if self.a < 0:
            raise DomainError("sign of an element of an imaginary quadratic field")
        sx = (self.x > 0) - (self.x < 0)
        sy = (self.y > 0) - (self.y < 0)
        if sy == 0 or sx == sy:
            return sx or sy
        if sx == 0:
            return sy
        # opposite signs: compare x² with a·y²
        diff = self.x * self.x - self.a * self.y * self.y
        return sx if diff > 0 else sy

    def sort_key(self) -> tuple[Fraction, Fraction]:
        return (self.x, self.y)

    def render(self) -> str:
        if self.y == 0:
            return rat_text(self.x)
        tail = f"{rat_text(abs(self.y))}*sqrt({self.a})"
        if self.x == 0:
            return tail if self.y > 0 else f"-{tail}"
        sep = "+" if self.y > 0 else "-"
        return f"{rat_text(self.x)} {sep} {tail}"

    def __str__(self) -> str:
        return self.render()


def qf_conj_norm_trace(e: QuadElem) -> tuple[QuadElem, Fraction, Fraction]:
    return e.conj(), e.norm(), e.trace()


def is_integral(e: QuadElem) -> bool:
    """Membership in O_F: Z[√a], or Z[(1+√a)/2] when a ≡ 1 mod 4."""
    if e.a % 4 == 1:
        two_x, two_y = 2 * e.x, 2 * e.y
        if two_x.denominator != 1 or two_y.denominator != 1:
            return False
        return (two_x.numerator - two_y.numerator) % 2 == 0
    return e.x.denominator == 1 and e.y.denominator == 1


def qf_sign(e: QuadElem) -> int:
    return e.sign()


# ─── Text form ────────────────────────────────────────────────────────────────

_RAT = r"\d+(?:/\d+)?"
_QUAD_RE = re.compile(
    rf"""^\s*
    (?:(?P<x>[+-]?\s*{_RAT})(?![\d/]|\s*\*?\s*sqrt))?
    \s*
    (?:
        (?P<sgn>[+-])?\s*
        (?:(?P<y>{_RAT})\s*\*?\s*)?
        sqrt\(\s*(?P<a>[+-]?\d+)\s*\)
    )?
    \s*$""",
    re.VERBOSE,
)


def parse_quad(text: str, a: int | None = None) -> QuadElem:
    """Parse ``"x + y*sqrt(a)"`` and its shortened forms (``"3"``, ``"-sqrt(-2)"``)."""
    m = _QUAD_RE.match(text)
    if not m or (m.group("x") is None and m.group("a") is None):
        raise DomainError(f"cannot parse field element {text!r}")
    x = Fraction(m.group("x").replace(" ", "")) if m.group("x") else Fraction(0)
    y = Fraction(0)
    field = a
    if m.group("a") is not None:
        field = int(m.group("a"))
        if a is not None and field != a:
            raise ParameterMismatchError(f"{text!r} lives in Q(√{field}), expected Q(√{a})")
        y = Fraction(m.group("y")) if m.group("y") else Fraction(1)
        if m.group("sgn") == "-":
            y = -y
        elif m.group("sgn") is None and m.group("x") is not None:
            raise DomainError(f"missing sign between terms in {text!r}")
    if field is None:
        raise DomainError(f"no field parameter for {text!r}")
    return QuadElem(x, y, field)
