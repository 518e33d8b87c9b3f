"""
Prime-level machinery: Legendre symbols, prescribed-symbol prime search,
2-independence, splitting of p in O_F, residue tests modulo prime ideals,
Pell equations and natural-density estimates.

Usage:
    from arith.numthy import legendre, find_prime_with_symbols, pell_solve
    legendre(-2, 13)                                   # → -1
    find_prime_with_symbols([(-2, -1), (11, -1)], {13}) # → 23
    pell_solve(58)                                     # → PellSolution(19603, 2574, 58)
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import isqrt
from typing import Iterable, NamedTuple

from sympy import factorint, isprime, jacobi_symbol, primerange, sqrt_mod
from sympy.ntheory.continued_fraction import continued_fraction_periodic

from arith.exact import QuadElem, is_integral, is_rational_square, rat, squarefree_kernel
from errors import DomainError, ExhaustionError, PreconditionError, UnsupportedError

logger = logging.getLogger(__name__)

DEFAULT_SEARCH_BOUND = 10**6


# ─── Types ────────────────────────────────────────────────────────────────────

class SplitTag(str, Enum):
    INERT = "Inert"
    SPLIT = "Split"
    RAMIFIED = "Ramified"


@dataclass(frozen=True)
class SplitType:
    tag: SplitTag
    residue_degree: int

    @classmethod
    def of(cls, tag: SplitTag) -> "SplitType":
        return cls(tag, 2 if tag is SplitTag.INERT else 1)


@dataclass(frozen=True)
class PellSolution:
    x: int
    y: int
    d_effective: int


class RationalPellSolution(NamedTuple):
    x: int
    y: int
    d: Fraction
    d_effective: int


# ─── Legendre symbol ──────────────────────────────────────────────────────────

def _require_odd_prime(p: int) -> None:
    if not isinstance(p, int) or p < 3 or not isprime(p):
        raise DomainError(f"expected an odd prime, got {p}")


def legendre(n: int, p: int) -> int:
    """(n/p) for an odd prime p."""
    _require_odd_prime(p)
    value = int(jacobi_symbol(n % p, p))
    if __debug__:
        euler = pow(n % p, (p - 1) // 2, p)
        assert (euler if euler <= 1 else -1) == value, f"symbol mismatch for ({n}/{p})"
    return value


# ─── 2-independence ───────────────────────────────────────────────────────────

def _parity_vector(value: int, index: dict[int, int]) -> int:
    """Bitmask of odd exponents; bit 0 is the sign, primes get bits on first sight."""
    if value == 0:
        raise DomainError("2-independence of a family containing 0")
    vec = 1 if value < 0 else 0
    for prime, exp in factorint(abs(value)).items():
        if exp % 2:
            if prime not in index:
                index[prime] = len(index) + 1
            vec |= 1 << index[prime]
    return vec


def _reduce(vec: int, basis: dict[int, tuple[int, int]]) -> tuple[int, int]:
    """Reduce vec against an echelon basis; returns (residue, combination mask)."""
    combo = 0
    while vec:
        top = vec.bit_length() - 1
        if top not in basis:
            break
        bvec, bcombo = basis[top]
        vec ^= bvec
        combo ^= bcombo
    return vec, combo


def independent_basis(values: Iterable[int]) -> list[int]:
    """Indices of a maximal 2-independent sub-family, greedily in input order."""
    index: dict[int, int] = {}
    basis: dict[int, tuple[int, int]] = {}
    kept: list[int] = []
    for i, value in enumerate(values):
        vec, _ = _reduce(_parity_vector(value, index), basis)
        if vec:
            basis[vec.bit_length() - 1] = (vec, 1 << len(kept))
            kept.append(i)
    return kept


def two_independent(values: list[int]) -> bool:
    values = list(values)
    return len(independent_basis(values)) == len(values)


def _check_consistent(targets: list[tuple[int, int]]) -> None:
    """Symbols forced on a dependent value must match its target."""
    index: dict[int, int] = {}
    basis: dict[int, tuple[int, int]] = {}
    kept_symbols: list[int] = []
    for value, symbol in targets:
        if symbol not in (-1, 1):
            raise DomainError(f"target symbol must be ±1, got {symbol}")
        vec, combo = _reduce(_parity_vector(value, index), basis)
        if vec:
            basis[vec.bit_length() - 1] = (vec, combo | 1 << len(kept_symbols))
            kept_symbols.append(symbol)
            continue
        forced = 1
        for j, s in enumerate(kept_symbols):
            if combo >> j & 1:
                forced *= s
        if forced != symbol:
            raise PreconditionError(
                "consistent_targets",
                f"symbol of {value} is forced to {forced:+d} by the other targets",
            )


def find_prime_with_symbols(
    targets: list[tuple[int, int]],
    exclude: Iterable[int] = (),
    search_bound: int = DEFAULT_SEARCH_BOUND,
) -> int:
    """Smallest odd prime p ≤ search_bound outside ``exclude`` with (v/p) = s for every target."""
    targets = [(int(v), int(s)) for v, s in targets]
    _check_consistent(targets)
    excluded = set(exclude)
    for p in primerange(3, search_bound + 1):
        p = int(p)
        if p in excluded:
            continue
        if any(value % p == 0 for value, _ in targets):
            continue
        if all(legendre(value, p) == symbol for value, symbol in targets):
            logger.debug("prime %d satisfies %s", p, targets)
            return p
    raise ExhaustionError(f"no prime with symbols {targets}", search_bound)


# ─── Splitting in O_F ─────────────────────────────────────────────────────────

def split_type(p: int, a: int) -> SplitType:
    if not isprime(p):
        raise DomainError(f"{p} is not prime")
    if a % p == 0:
        return SplitType.of(SplitTag.RAMIFIED)
    if p == 2:
        # π_α = X² − X + (1−a)/4 when a ≡ 1 mod 4, X² − a otherwise
        if a % 8 == 1:
            return SplitType.of(SplitTag.SPLIT)
        if a % 8 == 5:
            return SplitType.of(SplitTag.INERT)
        return SplitType.of(SplitTag.RAMIFIED)
    symbol = legendre(a, p)
    return SplitType.of(SplitTag.SPLIT if symbol == 1 else SplitTag.INERT)


def _mod(q: Fraction, p: int) -> int:
    return q.numerator * pow(q.denominator, -1, p) % p


def _fp2_pow(x: int, y: int, a: int, e: int, p: int) -> tuple[int, int]:
    """(x + y·w)^e in F_p[w]/(w² − a)."""
    rx, ry = 1, 0
    while e:
        if e & 1:
            rx, ry = (rx * x + a * ry * y) % p, (rx * y + ry * x) % p
        x, y = (x * x + a * y * y) % p, (2 * x * y) % p
        e >>= 1
    return rx, ry


def is_square_mod_P(beta: QuadElem, p: int, root: int | None = None) -> bool:
    """
    Whether an integral beta is a square in O_F/P for a prime P over the odd
    unramified prime p. For split p the ideal is P = (p, √a − s) with s the
    smallest square root of a mod p unless ``root`` picks the other one.
    """
    if not is_integral(beta):
        raise DomainError(f"{beta} is not integral")
    kind = split_type(p, beta.a)
    if p == 2 or kind.tag is SplitTag.RAMIFIED:
        raise UnsupportedError(f"residue test at ramified or even prime {p}")
    x, y = _mod(beta.x, p), _mod(beta.y, p)
    if kind.tag is SplitTag.SPLIT:
        s = root if root is not None else int(sqrt_mod(beta.a % p, p))
        v = (x + y * s) % p
        if v == 0:
            raise DomainError(f"{beta} lies in the prime ideal over {p}")
        return legendre(v, p) == 1
    if x == 0 and y == 0:
        raise DomainError(f"{beta} lies in the prime ideal {p}·O_F")
    rx, ry = _fp2_pow(x, y, beta.a % p, (p * p - 1) // 2, p)
    return (rx, ry) == (1, 0)


def nonsquare_frequency(beta: QuadElem, prime_bound: int) -> Fraction:
    """
    Fraction of odd unramified primes p ≤ bound, coprime to N(beta), such that
    beta is a non-square modulo some prime ideal over p.
    """
    norm = beta.norm()
    hits = total = 0
    for p in primerange(3, prime_bound + 1):
        p = int(p)
        if beta.a % p == 0 or norm.numerator % p == 0 or norm.denominator % p == 0:
            continue
        total += 1
        if split_type(p, beta.a).tag is SplitTag.SPLIT:
            s = int(sqrt_mod(beta.a % p, p))
            ok = not is_square_mod_P(beta, p, s) or not is_square_mod_P(beta, p, p - s)
        else:
            ok = not is_square_mod_P(beta, p)
        hits += ok
    if total == 0:
        raise DomainError(f"no admissible prime below {prime_bound}")
    return Fraction(hits, total)


# ─── Pell equations ───────────────────────────────────────────────────────────

def pell_solve(D: int) -> PellSolution:
    """Fundamental solution of x² − Dy² = 1 from the continued fraction of √D."""
    if not isinstance(D, int) or D <= 0 or isqrt(D) ** 2 == D:
        raise DomainError(f"Pell parameter must be a positive non-square integer, got {D}")
    head, period = continued_fraction_periodic(0, 1, D)
    terms = [int(t) for t in period]
    h_prev, h = 1, int(head)
    k_prev, k = 0, 1
    i = 0
    while h * h - D * k * k != 1:
        t = terms[i % len(terms)]
        h_prev, h = h, t * h + h_prev
        k_prev, k = k, t * k + k_prev
        i += 1
    return PellSolution(h, k, D)


def pell_solve_rational(d: Fraction | int | str) -> RationalPellSolution:
    """
    Minimal positive integers with X² − dY² = 1 for a positive non-square rational d.

    Writing d = p/q and q = m²k with k squarefree, the equation becomes
    X² − pk·y² = 1 with Y = mk·y.
    """
    d = rat(d)
    if d <= 0 or is_rational_square(d):
        raise DomainError(f"Pell parameter must be a positive non-square rational, got {d}")
    p, q = d.numerator, d.denominator
    k = squarefree_kernel(q)
    m = isqrt(q // k)
    base = pell_solve(p * k)
    solution = RationalPellSolution(base.x, m * k * base.y, d, p * k)
    assert solution.x ** 2 - d * solution.y ** 2 == 1
    return solution


# ─── Density ──────────────────────────────────────────────────────────────────

def density_estimate(a: int, which: SplitTag | str, prime_bound: int) -> Fraction:
    """Share of odd primes p ≤ prime_bound whose splitting type in Q(√a) is ``which``."""
    if prime_bound < 100:
        raise DomainError(f"prime bound must be at least 100, got {prime_bound}")
    tag = SplitTag(which)
    hits = total = 0
    for p in primerange(3, prime_bound + 1):
        total += 1
        hits += split_type(int(p), a).tag is tag
    return Fraction(hits, total)
